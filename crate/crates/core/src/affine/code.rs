//! Lengths, inversions, codes, descents and shapes.

use super::perm::{residue, AffinePerm};
use crate::error::{Error, Result};
use crate::symfunc::Partition;

impl AffinePerm {
    /// Number of `j > i` with `π(j) < threshold`.
    ///
    /// For each residue class `r` the admissible `j = r + mn` form an
    /// interval of `m`, so the count is exact without any scan bound.
    pub(crate) fn count_after_below(&self, i: i64, threshold: i64) -> u64 {
        let n = self.n() as i64;
        let mut total = 0;
        for r in 1..=n {
            let lo = (i - r).div_euclid(n) + 1;
            let hi = (threshold - self.apply(r) - 1).div_euclid(n);
            if hi >= lo {
                total += (hi - lo + 1) as u64;
            }
        }
        total
    }

    /// The code `(c_1, ..., c_n)`, `c_i = #{j > i : π(i) > π(j)}`.
    pub fn code(&self) -> Vec<u64> {
        (1..=self.n() as i64)
            .map(|i| self.count_after_below(i, self.apply(i)))
            .collect()
    }

    /// Coxeter length: the number of inversion classes.
    pub fn length(&self) -> u64 {
        self.code().iter().sum()
    }

    /// Representatives `(i, j)` of the inversion classes, one per class,
    /// with `i` in `1..=n`. Sorted.
    pub fn inversions(&self) -> Vec<(i64, i64)> {
        let n = self.n() as i64;
        let mut out = Vec::new();
        for i in 1..=n {
            let vi = self.apply(i);
            for r in 1..=n {
                let lo = (i - r).div_euclid(n) + 1;
                let hi = (vi - self.apply(r) - 1).div_euclid(n);
                for m in lo..=hi {
                    out.push((i, r + m * n));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The shape: transpose of the decreasing sort of `code(π⁻¹)`.
    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.inverse().code().iter().map(|&c| c as u32)).transpose()
    }

    /// `{i ∈ 1..=n : π(i) > π(i+1)}`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..=self.n() as i64)
            .filter(|&i| self.apply(i) > self.apply(i + 1))
            .map(|i| i as usize)
            .collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// `π⁻¹(1) < π⁻¹(2) < ... < π⁻¹(n)`.
    pub fn is_grassmannian(&self) -> bool {
        self.inverse().window().windows(2).all(|p| p[0] < p[1])
    }

    /// A reduced word `[i_1, ..., i_l]` with `π = s_{i_1} ⋯ s_{i_l}`, found by
    /// repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while let Some(&i) = w.right_descents().first() {
            w.right_mul_simple(i as i64);
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// Reconstructs the permutation with the given code. The code must have
    /// at least one zero entry.
    pub fn from_code(code: &[u64]) -> Result<Self> {
        let n = code.len();
        if n == 0 {
            return Err(Error::ZeroPeriod(0));
        }
        if code.iter().all(|&c| c > 0) {
            return Err(Error::AllPositiveCode(code.to_vec()));
        }
        let mut c = code.to_vec();
        let mut letters = Vec::new();
        while c.iter().any(|&x| x > 0) {
            // cyclic strict descent with the smallest index; exists because
            // c is neither zero nor constant
            let i = (0..n)
                .find(|&i| c[i] > c[(i + 1) % n])
                .expect("nonconstant cyclic sequence has a strict descent");
            let j = (i + 1) % n;
            let (ci, cj) = (c[i], c[j]);
            c[i] = cj;
            c[j] = ci - 1;
            letters.push(i as i64 + 1);
        }
        let mut w = Self::identity(n);
        for &i in letters.iter().rev() {
            w.right_mul_simple(i);
        }
        Ok(w)
    }

    /// `|{k : i < k < j, k ≢ i (mod n), π(k) strictly between π(i) and π(j)}|`.
    pub fn delta(&self, i: i64, j: i64) -> Result<u64> {
        let n = self.n() as i64;
        if i >= j || (j - i).rem_euclid(n) == 0 {
            return Err(Error::BadTransposition { n: self.n(), i, j });
        }
        let (a, b) = {
            let (x, y) = (self.apply(i), self.apply(j));
            (x.min(y), x.max(y))
        };
        Ok((i + 1..j)
            .filter(|&k| (k - i).rem_euclid(n) != 0)
            .filter(|&k| {
                let v = self.apply(k);
                a < v && v < b
            })
            .count() as u64)
    }

    /// `ℓ(π t_{ij})` from the two-case delta formula.
    pub fn length_after_right_mult(&self, i: i64, j: i64) -> Result<i64> {
        let base = self.length() as i64;
        if self.apply(i) < self.apply(j) {
            Ok(base + 2 * self.delta(i, j)? as i64 + 1)
        } else {
            let t = AffinePerm::transposition(self.n(), i, j)?;
            let moved = self.compose(&t);
            Ok(base - 2 * moved.delta(i, j)? as i64 - 1)
        }
    }

    /// Reconstructs the unique permutation whose inversion set is the
    /// closure of `generators` under `(i, j) ↦ (i ± n, j ± n)`.
    pub fn from_inversion_set(n: usize, generators: &[(i64, i64)]) -> Result<Self> {
        let mut set = InversionSet::new(n, generators)?;
        set.validate()?;
        let mut letters = Vec::new();
        while !set.is_empty() {
            let i = set.adjacent_pair().ok_or_else(|| {
                Error::Internal("validated inversion set has no adjacent pair".into())
            })?;
            set = set.peel(i);
            letters.push(i);
        }
        // I = Inv(v s_i) with J = Inv(v), peeled in order, so w = s_{i_k} ⋯ s_{i_1}
        let mut w = Self::identity(n);
        for &i in letters.iter().rev() {
            w.right_mul_simple(i);
        }
        Ok(w)
    }
}

/// A periodic subset of pairs, stored by representatives with first entry
/// in `1..=n`.
struct InversionSet {
    n: usize,
    reps: std::collections::BTreeSet<(i64, i64)>,
}

impl InversionSet {
    fn new(n: usize, generators: &[(i64, i64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod(0));
        }
        let mut reps = std::collections::BTreeSet::new();
        for &(i, j) in generators {
            if i >= j || (j - i).rem_euclid(n as i64) == 0 {
                return Err(Error::InversionSet {
                    condition: 1,
                    witness: format!("({i},{j})"),
                });
            }
            reps.insert(normalize(n, i, j));
        }
        Ok(Self { n, reps })
    }

    fn contains(&self, i: i64, j: i64) -> bool {
        self.reps.contains(&normalize(self.n, i, j))
    }

    fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Conditions (3) transitivity and (4) convexity; (1) is checked on
    /// construction and (2) holds by representation.
    fn validate(&self) -> Result<()> {
        let n = self.n as i64;
        for &(i, j) in &self.reps {
            // every (j', k) with j' = j: shift representatives starting at j's residue
            let shift = j - residue(j, self.n);
            for &(a, b) in &self.reps {
                if a == residue(j, self.n) {
                    let k = b + shift;
                    if !self.contains(i, k) {
                        return Err(Error::InversionSet {
                            condition: 3,
                            witness: format!("({i},{j}) and ({j},{k}) but not ({i},{k})"),
                        });
                    }
                }
            }
            for mid in i + 1..j {
                if !self.contains(i, mid) && !self.contains(mid, j) {
                    return Err(Error::InversionSet {
                        condition: 4,
                        witness: format!("({i},{j}) with neither ({i},{mid}) nor ({mid},{j})"),
                    });
                }
            }
        }
        let _ = n;
        Ok(())
    }

    fn adjacent_pair(&self) -> Option<i64> {
        self.reps
            .iter()
            .find(|&&(i, j)| j == i + 1)
            .map(|&(i, _)| i)
    }

    /// `J = {(s_i a, s_i b) : (a, b) ∈ I, (a, b) ≁ (i, i+1)}`.
    fn peel(&self, i: i64) -> Self {
        let s = AffinePerm::simple(self.n, i);
        let reps = self
            .reps
            .iter()
            .filter(|&&(a, b)| !(a == i && b == i + 1))
            .map(|&(a, b)| normalize(self.n, s.apply(a), s.apply(b)))
            .collect();
        Self { n: self.n, reps }
    }
}

fn normalize(n: usize, i: i64, j: i64) -> (i64, i64) {
    let shift = residue(i, n) - i;
    (i + shift, j + shift)
}
