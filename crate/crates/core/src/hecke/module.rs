//! The Hecke modules `M` and `N` spanned by FPF involutions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::fpf::{FpfInvolution, Sign};

/// Which of the two module structures is in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    M,
    N,
}

impl Variant {
    pub fn both() -> [Variant; 2] {
        [Variant::M, Variant::N]
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Variant::M => "M",
            Variant::N => "N",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "M" | "m" => Ok(Variant::M),
            "N" | "n" => Ok(Variant::N),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "expected M or N".into(),
            }),
        }
    }
}

/// A finite `A`-linear combination of standard basis vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    variant: Variant,
    n: usize,
    sign: Sign,
    terms: BTreeMap<FpfInvolution, LaurentPoly>,
}

impl ModuleElement {
    pub fn zero(variant: Variant, n: usize, sign: Sign) -> Self {
        Self {
            variant,
            n,
            sign,
            terms: BTreeMap::new(),
        }
    }

    /// The standard basis vector `M_z` or `N_z`.
    pub fn basis(variant: Variant, z: &FpfInvolution) -> Self {
        let mut e = Self::zero(variant, z.n(), z.sign());
        e.add_term(z.clone(), &LaurentPoly::one());
        e
    }

    pub fn from_terms(
        variant: Variant,
        n: usize,
        sign: Sign,
        terms: impl IntoIterator<Item = (FpfInvolution, LaurentPoly)>,
    ) -> Result<Self> {
        let mut e = Self::zero(variant, n, sign);
        for (z, p) in terms {
            if z.n() != n || z.sign() != sign {
                return Err(Error::Precondition(format!(
                    "{} does not lie in the class (n={n}, sign {sign})",
                    z.perm()
                )));
            }
            e.add_term(z, &p);
        }
        Ok(e)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, z: &FpfInvolution) -> LaurentPoly {
        self.terms.get(z).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FpfInvolution, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `p · z`.
    ///
    /// # Panics
    /// If `z` has a different period or sign class.
    pub fn add_term(&mut self, z: FpfInvolution, p: &LaurentPoly) {
        assert!(
            z.n() == self.n && z.sign() == self.sign,
            "module element class mismatch"
        );
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(z).or_default();
        *entry = &*entry + p;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Adds `p · other`.
    ///
    /// # Panics
    /// If the variants or classes differ.
    pub fn add_scaled(&mut self, other: &ModuleElement, p: &LaurentPoly) {
        assert_eq!(self.variant, other.variant, "module variant mismatch");
        for (z, c) in &other.terms {
            self.add_term(z.clone(), &(c * p));
        }
    }

    pub fn scaled(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.variant, self.n, self.sign);
        out.add_scaled(self, p);
        out
    }

    /// The term of greatest height, ties broken by the larger window.
    pub fn leading_term(&self) -> Option<(&FpfInvolution, &LaurentPoly)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.height().cmp(&b.0.height()).then_with(|| a.0.cmp(b.0)))
    }

    /// `H_s · self`.
    pub fn act(&self, s: i64) -> Self {
        let mut out = Self::zero(self.variant, self.n, self.sign);
        let v = LaurentPoly::monomial(1, 1);
        let eq_scalar = match self.variant {
            Variant::M => v.clone(),
            Variant::N => LaurentPoly::monomial(-1, -1),
        };
        let down_scalar = LaurentPoly::v_minus_v_inv();
        for (z, p) in &self.terms {
            match z.conj_height_delta(s) {
                0 => out.add_term(z.clone(), &(p * &eq_scalar)),
                d if d > 0 => out.add_term(z.conjugate_simple(s), p),
                _ => {
                    out.add_term(z.conjugate_simple(s), p);
                    out.add_term(z.clone(), &(p * &down_scalar));
                }
            }
        }
        out
    }

    /// `H_s⁻¹ · self = (H_s − (v − v⁻¹)) · self`.
    pub fn act_inverse(&self, s: i64) -> Self {
        let mut out = self.act(s);
        out.add_scaled(self, &(-&LaurentPoly::v_minus_v_inv()));
        out
    }

    /// Applies `H_{s_1} ⋯ H_{s_k}`, rightmost first.
    pub fn act_word(&self, word: &[i64]) -> Self {
        word.iter().rev().fold(self.clone(), |e, &s| e.act(s))
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (z, p)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p}){}{}", self.variant, z.perm())?;
        }
        Ok(())
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The first simple index `s` with `ℓ̂(szs) < ℓ̂(z)`.
pub fn first_descent(z: &FpfInvolution) -> Option<i64> {
    (1..=z.n() as i64).find(|&s| z.conj_height_delta(s) < 0)
}

/// Memoized bar involution on one module.
#[derive(Debug)]
pub struct BarOperator {
    variant: Variant,
    memo: HashMap<FpfInvolution, ModuleElement>,
}

impl BarOperator {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            memo: HashMap::new(),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `bar(M_z)` along the chain of first descents.
    pub fn bar_basis(&mut self, z: &FpfInvolution) -> ModuleElement {
        if let Some(e) = self.memo.get(z) {
            return e.clone();
        }
        let mut chain = vec![z.clone()];
        let mut top = z.clone();
        while let Some(s) = first_descent(&top) {
            top = top.conjugate_simple(s);
            if self.memo.contains_key(&top) {
                break;
            }
            chain.push(top.clone());
        }
        if !self.memo.contains_key(&top) {
            chain.pop();
            self.memo
                .insert(top.clone(), ModuleElement::basis(self.variant, &top));
        }
        for y in chain.into_iter().rev() {
            let s = first_descent(&y).expect("non-minimal element has a descent");
            let lower = &self.memo[&y.conjugate_simple(s)];
            let value = lower.act_inverse(s);
            self.memo.insert(y, value);
        }
        self.memo[z].clone()
    }

    /// The antilinear extension of `bar_basis`.
    pub fn bar(&mut self, e: &ModuleElement) -> ModuleElement {
        assert_eq!(e.variant, self.variant, "module variant mismatch");
        let mut out = ModuleElement::zero(e.variant, e.n, e.sign);
        for (z, p) in &e.terms {
            let b = self.bar_basis(z);
            out.add_scaled(&b, &p.bar());
        }
        out
    }

    /// Descents `s` of `z` for which `H_s⁻¹ · bar(M_{szs})` differs from the
    /// memoized `bar(M_z)`.
    pub fn chain_discrepancies(&mut self, z: &FpfInvolution) -> Vec<i64> {
        let expected = self.bar_basis(z);
        (1..=z.n() as i64)
            .filter(|&s| z.conj_height_delta(s) < 0)
            .filter(|&s| self.bar_basis(&z.conjugate_simple(s)).act_inverse(s) != expected)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpf::involutions_up_to;

    fn theta_plus4() -> FpfInvolution {
        FpfInvolution::theta(4, Sign::Plus).unwrap()
    }

    #[test]
    fn action_examples() {
        let t = theta_plus4();
        let v = LaurentPoly::monomial(1, 1);
        assert_eq!(
            ModuleElement::basis(Variant::M, &t).act(1),
            ModuleElement::basis(Variant::M, &t).scaled(&v)
        );
        assert_eq!(
            ModuleElement::basis(Variant::N, &t).act(1),
            ModuleElement::basis(Variant::N, &t).scaled(&LaurentPoly::monomial(-1, -1))
        );
        assert_eq!(
            ModuleElement::basis(Variant::M, &t).act(2),
            ModuleElement::basis(Variant::M, &t.conjugate_simple(2))
        );
    }

    #[test]
    fn quadratic_relation_on_basis() {
        let vmv = LaurentPoly::v_minus_v_inv();
        for sign in Sign::both() {
            for z in involutions_up_to(4, sign, 3, 10_000).unwrap() {
                for variant in Variant::both() {
                    let e = ModuleElement::basis(variant, &z);
                    for s in 1..=4 {
                        let lhs = e.act(s).act(s);
                        let mut rhs = e.act(s).scaled(&vmv);
                        rhs.add_scaled(&e, &LaurentPoly::one());
                        assert_eq!(lhs, rhs, "{variant} {} s{s}", z.perm());
                    }
                }
            }
        }
    }

    #[test]
    fn bar_examples_and_involution() {
        let t = theta_plus4();
        for variant in Variant::both() {
            let mut bar = BarOperator::new(variant);
            assert_eq!(bar.bar_basis(&t), ModuleElement::basis(variant, &t));
            for z in involutions_up_to(4, Sign::Plus, 3, 10_000).unwrap() {
                let e = ModuleElement::basis(variant, &z);
                let b = bar.bar(&e);
                if z.height() == 1 {
                    let mut expected = e.clone();
                    expected.add_scaled(
                        &ModuleElement::basis(variant, &t),
                        &(-&LaurentPoly::v_minus_v_inv()),
                    );
                    assert_eq!(b, expected);
                }
                assert_eq!(bar.bar(&b), e, "{}", z.perm());
                assert!(bar.chain_discrepancies(&z).is_empty(), "{}", z.perm());
            }
        }
    }
}
