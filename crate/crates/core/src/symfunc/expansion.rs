//! Monomial expansions and the affine Stanley symmetric function.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::partition::{par_n, Partition};
use crate::affine::AffinePerm;
use crate::error::{Error, Result};

/// A homogeneous element of `Sym^(n)` in the monomial basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialExpansion {
    n: usize,
    degree: u32,
    coeffs: BTreeMap<Partition, i128>,
}

impl MonomialExpansion {
    pub fn zero(n: usize, degree: u32) -> Self {
        Self {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The monomial symmetric function `m_λ`.
    pub fn monomial(n: usize, lam: Partition) -> Result<Self> {
        let mut e = Self::zero(n, lam.weight());
        e.add_term(lam, 1)?;
        Ok(e)
    }

    /// Builds an expansion from `(partition, coefficient)` pairs.
    pub fn from_terms(
        n: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Partition, i128)>,
    ) -> Result<Self> {
        let mut e = Self::zero(n, degree);
        for (lam, c) in terms {
            e.add_term(lam, c)?;
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, lam: &Partition) -> i128 {
        self.coeffs.get(lam).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in lexicographically decreasing order of partition.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i128)> {
        self.coeffs.iter().rev().map(|(p, &c)| (p, c))
    }

    /// The lexicographically largest partition in the support.
    pub fn lex_leading(&self) -> Option<(&Partition, i128)> {
        self.coeffs.iter().next_back().map(|(p, &c)| (p, c))
    }

    pub fn add_term(&mut self, lam: Partition, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        if lam.weight() != self.degree {
            return Err(Error::Precondition(format!(
                "partition {lam} does not have degree {}",
                self.degree
            )));
        }
        if !lam.in_par(self.n) {
            return Err(Error::NotInPar {
                partition: lam.into(),
                max: self.n.saturating_sub(1) as u32,
            });
        }
        let slot = self.coeffs.entry(lam.clone()).or_insert(0);
        *slot = slot
            .checked_add(c)
            .ok_or(Error::Overflow("adding expansions"))?;
        if *slot == 0 {
            self.coeffs.remove(&lam);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "expansions live in different spaces: (n={}, degree={}) vs (n={}, degree={})",
                self.n, self.degree, other.n, other.degree
            )));
        }
        Ok(())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: i128) -> Result<()> {
        self.check_compatible(other)?;
        for (lam, &x) in &other.coeffs {
            let t = x
                .checked_mul(c)
                .ok_or(Error::Overflow("scaling an expansion"))?;
            self.add_term(lam.clone(), t)?;
        }
        Ok(())
    }

    /// Whether all coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Coefficient vector indexed by `par_n(n, degree)`.
    pub fn coefficient_vector(&self) -> Vec<i128> {
        par_n(self.n, self.degree)
            .iter()
            .map(|lam| self.coeff(lam))
            .collect()
    }
}

impl fmt::Display for MonomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (lam, c)) in self.terms().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "m{lam}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}, deg={}] {self}", self.n, self.degree)
    }
}

/// Residues `1..=n` in the right-multiplication order of the cyclically
/// decreasing element with support `support`: each maximal cyclic interval
/// `[a, b]` contributes `b, b-1, ..., a`.
fn cyclic_word(n: usize, support: &[bool]) -> Vec<i64> {
    // start scanning just after a residue outside the support
    let gap = support.iter().position(|&x| !x).expect("proper subset");
    let mut word = Vec::new();
    let mut run: Vec<i64> = Vec::new();
    for step in 1..=n {
        let r = (gap + step) % n;
        if support[r] {
            run.push(r as i64 + 1);
        } else if !run.is_empty() {
            word.extend(run.drain(..).rev());
        }
    }
    word.extend(run.drain(..).rev());
    word
}

fn support_mask(n: usize, support: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &i in support {
        if i == 0 || i > n {
            return Err(Error::Precondition(format!(
                "support element {i} outside 1..={n}"
            )));
        }
        mask[i - 1] = true;
    }
    if mask.iter().all(|&x| x) {
        return Err(Error::FullSupport { n });
    }
    Ok(mask)
}

/// The cyclically decreasing element with the given support.
pub fn cyclically_decreasing(n: usize, support: &[usize]) -> Result<AffinePerm> {
    if n == 0 {
        return Err(Error::ZeroPeriod(0));
    }
    let mask = support_mask(n, support)?;
    let mut w = AffinePerm::identity(n);
    for i in cyclic_word(n, &mask) {
        w.right_mul_simple(i);
    }
    Ok(w)
}

/// Memoized counter of cyclically decreasing factorizations. Reusable across
/// many permutations with the same period.
pub struct StanleyExpander {
    n: usize,
    /// `words[k]` holds the words of all cyclically decreasing elements of length `k`.
    words: Vec<Vec<Vec<i64>>>,
    memo: HashMap<(AffinePerm, Vec<u32>), i128>,
}

impl StanleyExpander {
    pub fn new(n: usize) -> Self {
        let mut words = vec![Vec::new(); n];
        if n > 0 {
            for bits in 0u64..(1u64 << n) - 1 {
                let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                words[bits.count_ones() as usize].push(cyclic_word(n, &mask));
            }
        }
        Self {
            n,
            words,
            memo: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The Stanley symmetric function `F_π` in the monomial basis.
    pub fn expand(&mut self, a: &AffinePerm) -> Result<MonomialExpansion> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.n(),
            });
        }
        let len = a.length();
        let degree = u32::try_from(len).map_err(|_| Error::Overflow("degree"))?;
        let sigma = a.inverse();
        let mut e = MonomialExpansion::zero(self.n, degree);
        for lam in par_n(self.n, degree) {
            let c = self.count(&sigma, lam.parts())?;
            e.add_term(lam, c)?;
        }
        Ok(e)
    }

    /// Number of factorizations `σ⁻¹ = d_1 d_2 ⋯` with `ℓ(d_k) = parts[k]`,
    /// peeling `d_1` off the right of `σ`.
    fn count(&mut self, sigma: &AffinePerm, parts: &[u32]) -> Result<i128> {
        let Some((&first, rest)) = parts.split_first() else {
            return Ok(i128::from(sigma.is_identity()));
        };
        let key = (sigma.clone(), parts.to_vec());
        if let Some(&c) = self.memo.get(&key) {
            return Ok(c);
        }
        let mut total: i128 = 0;
        for idx in 0..self.words[first as usize].len() {
            let mut s = sigma.clone();
            let peeled = self.words[first as usize][idx].iter().all(|&i| {
                if s.apply(i) > s.apply(i + 1) {
                    s.right_mul_simple(i);
                    true
                } else {
                    false
                }
            });
            if peeled {
                let c = self.count(&s, rest)?;
                total = total
                    .checked_add(c)
                    .ok_or(Error::Overflow("counting factorizations"))?;
            }
        }
        self.memo.insert(key, total);
        Ok(total)
    }
}

/// `F_π` in the monomial basis.
pub fn stanley_expand(a: &AffinePerm) -> Result<MonomialExpansion> {
    StanleyExpander::new(a.n()).expand(a)
}

/// The affine Schur function `F_λ`.
pub fn affine_schur(n: usize, lam: &Partition) -> Result<MonomialExpansion> {
    stanley_expand(&lam.grassmannian(n)?)
}

/// Coefficients in the affine Schur basis `{F_λ}`.
pub fn to_schur_basis(e: &MonomialExpansion) -> Result<BTreeMap<Partition, i128>> {
    let n = e.n();
    let mut rest = e.clone();
    let mut out = BTreeMap::new();
    let mut ex = StanleyExpander::new(n);
    while let Some((lam, c)) = rest.lex_leading().map(|(l, c)| (l.clone(), c)) {
        let f = ex.expand(&lam.grassmannian(n)?)?;
        if f.coeff(&lam) != 1 || f.lex_leading().map(|(l, _)| l) != Some(&lam) {
            return Err(Error::Internal(format!(
                "affine Schur function F_{lam} is not unitriangular"
            )));
        }
        rest.add_scaled(&f, c.checked_neg().ok_or(Error::Overflow("negating"))?)?;
        out.insert(lam, c);
    }
    Ok(out)
}

/// Monomial expansion of `Σ c_λ F_λ`.
pub fn from_schur_basis(
    n: usize,
    degree: u32,
    coeffs: &BTreeMap<Partition, i128>,
) -> Result<MonomialExpansion> {
    let mut ex = StanleyExpander::new(n);
    let mut e = MonomialExpansion::zero(n, degree);
    for (lam, &c) in coeffs {
        e.add_scaled(&ex.expand(&lam.grassmannian(n)?)?, c)?;
    }
    Ok(e)
}

/// The involution `ω⁺` with `ω⁺(F_λ) = F_{λ*}`.
pub fn omega_plus(e: &MonomialExpansion) -> Result<MonomialExpansion> {
    let n = e.n();
    let mut starred = BTreeMap::new();
    for (lam, c) in to_schur_basis(e)? {
        starred.insert(lam.star(n)?, c);
    }
    from_schur_basis(n, e.degree(), &starred)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn w(s: &str) -> AffinePerm {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn m(n: usize, terms: &[(&str, i128)]) -> MonomialExpansion {
        let d = p(terms[0].0).weight();
        MonomialExpansion::from_terms(n, d, terms.iter().map(|&(s, c)| (p(s), c))).unwrap()
    }

    #[test]
    fn cyclically_decreasing_examples() {
        let s = |i| AffinePerm::simple(4, i);
        assert_eq!(cyclically_decreasing(4, &[2, 4]).unwrap(), &s(2) * &s(4));
        assert_eq!(cyclically_decreasing(4, &[1, 2]).unwrap(), &s(2) * &s(1));
        assert_eq!(cyclically_decreasing(4, &[4, 1]).unwrap(), &s(1) * &s(4));
        assert_eq!(
            cyclically_decreasing(4, &[1, 2, 3, 4]),
            Err(Error::FullSupport { n: 4 })
        );
        for n in 2..=8usize {
            for bits in 0u32..(1 << n) - 1 {
                let sup: Vec<usize> = (1..=n).filter(|i| bits >> (i - 1) & 1 == 1).collect();
                let d = cyclically_decreasing(n, &sup).unwrap();
                assert_eq!(d.length(), sup.len() as u64);
            }
        }
    }

    #[test]
    fn known_expansions() {
        assert_eq!(
            stanley_expand(&w("[3,0,5,2]")).unwrap(),
            m(4, &[("(1,1,1,1)", 4), ("(2,1,1)", 2), ("(2,2)", 1)])
        );
        assert_eq!(
            stanley_expand(&w("[-3,3,4,6]")).unwrap(),
            m(4, &[("(1,1,1,1)", 1)])
        );
        assert_eq!(
            stanley_expand(&w("[5,0,2,3]")).unwrap(),
            m(
                4,
                &[("(3,1)", 1), ("(2,2)", 1), ("(2,1,1)", 1), ("(1,1,1,1)", 1)]
            )
        );
    }

    #[test]
    fn affine_schur_examples() {
        assert_eq!(
            affine_schur(4, &Partition::empty()).unwrap(),
            MonomialExpansion::monomial(4, Partition::empty()).unwrap()
        );
        assert_eq!(
            affine_schur(2, &p("(1,1,1)")).unwrap(),
            m(2, &[("(1,1,1)", 1)])
        );
        let f = affine_schur(4, &p("(2,2)")).unwrap();
        assert_eq!(f.lex_leading(), Some((&p("(2,2)"), 1)));
        assert!(affine_schur(4, &p("(4)")).is_err());
        let sb = to_schur_basis(&f).unwrap();
        assert_eq!(sb.into_iter().collect::<Vec<_>>(), vec![(p("(2,2)"), 1)]);
    }

    #[test]
    fn omega_plus_example() {
        let f = stanley_expand(&w("[-3,3,4,6]")).unwrap();
        assert_eq!(
            omega_plus(&f).unwrap(),
            stanley_expand(&w("[5,0,2,3]")).unwrap()
        );
    }

    #[test]
    fn display() {
        let e = m(4, &[("(2,2)", 1), ("(2,1,1)", -2)]);
        assert_eq!(e.to_string(), "m(2,2) - 2m(2,1,1)");
    }

    // ---- independent oracle: factorizations through reduced words ----

    fn reduced_words(a: &AffinePerm) -> Vec<Vec<i64>> {
        if a.is_identity() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in a.right_descents() {
            let mut b = a.clone();
            b.right_mul_simple(i as i64);
            for mut word in reduced_words(&b) {
                word.push(i as i64);
                out.push(word);
            }
        }
        out
    }

    fn is_cyclically_decreasing_word(n: usize, word: &[i64]) -> bool {
        let set: HashSet<i64> = word.iter().copied().collect();
        if set.len() != word.len() || set.len() == n {
            return false;
        }
        for j in 0..word.len() {
            for k in j + 1..word.len() {
                if (word[j] % n as i64) + 1 == word[k] {
                    return false;
                }
            }
        }
        true
    }

    fn product(n: usize, word: &[i64]) -> AffinePerm {
        let mut w = AffinePerm::identity(n);
        for &i in word {
            w.right_mul_simple(i);
        }
        w
    }

    /// Counts `a = v_1 v_2 ⋯` with `ℓ(v_k) = parts[k]`, each `v_k` having some
    /// cyclically decreasing reduced word.
    fn oracle_count(a: &AffinePerm, parts: &[u32]) -> i128 {
        let n = a.n();
        let Some((&first, rest)) = parts.split_first() else {
            return i128::from(a.is_identity());
        };
        let prefixes: HashSet<AffinePerm> = reduced_words(a)
            .iter()
            .map(|word| product(n, &word[..first as usize]))
            .collect();
        let mut total = 0;
        for u in prefixes {
            if reduced_words(&u)
                .iter()
                .any(|word| is_cyclically_decreasing_word(n, word))
            {
                total += oracle_count(&u.inverse().compose(a), rest);
            }
        }
        total
    }

    fn oracle_expand(a: &AffinePerm) -> MonomialExpansion {
        let d = a.length() as u32;
        MonomialExpansion::from_terms(
            a.n(),
            d,
            par_n(a.n(), d).into_iter().map(|lam| {
                let c = oracle_count(a, lam.parts());
                (lam, c)
            }),
        )
        .unwrap()
    }

    pub(crate) fn ball(n: usize, max_len: u64) -> Vec<AffinePerm> {
        let mut seen = HashSet::new();
        seen.insert(AffinePerm::identity(n));
        let mut layer = vec![AffinePerm::identity(n)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for x in &layer {
                for i in 1..=n as i64 {
                    let mut y = x.clone();
                    y.right_mul_simple(i);
                    if y.length() > x.length() && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort();
        v
    }

    #[test]
    fn expansion_matches_word_oracle() {
        for (n, l) in [(2usize, 5u64), (3, 5), (4, 5)] {
            let mut ex = StanleyExpander::new(n);
            for a in ball(n, l) {
                assert_eq!(ex.expand(&a).unwrap(), oracle_expand(&a), "{a}");
            }
        }
    }

    #[test]
    fn triangularity_and_positivity() {
        let mut ex = StanleyExpander::new(4);
        for a in ball(4, 6) {
            let e = ex.expand(&a).unwrap();
            let lam = a.shape();
            assert_eq!(e.degree() as u64, a.length());
            assert_eq!(e.coeff(&lam), 1, "{a}");
            assert!(e.is_nonnegative());
            for (mu, _) in e.terms() {
                assert!(mu.dominance_leq(&lam).unwrap(), "{a}: {mu} vs {lam}");
            }
        }
    }

    #[test]
    fn n2_closed_form() {
        for a in ball(2, 8) {
            let k = a.length() as usize;
            let e = stanley_expand(&a).unwrap();
            assert_eq!(
                e,
                MonomialExpansion::monomial(2, Partition::rectangle(1, k)).unwrap()
            );
        }
    }

    #[test]
    fn omega_plus_on_ball() {
        let mut ex = StanleyExpander::new(4);
        for a in ball(4, 5) {
            let f = ex.expand(&a).unwrap();
            let o = omega_plus(&f).unwrap();
            assert_eq!(o, ex.expand(&a.inverse()).unwrap(), "{a}");
            assert_eq!(o, ex.expand(&a.star()).unwrap(), "{a}");
            assert_eq!(omega_plus(&o).unwrap(), f);
        }
    }
}
