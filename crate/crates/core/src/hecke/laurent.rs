//! Integer Laurent polynomials in `v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `Z[v, v⁻¹]`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly(BTreeMap<i32, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · v^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    /// `v - v⁻¹`.
    pub fn v_minus_v_inv() -> Self {
        Self::from_terms([(1, 1), (-1, -1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&k);
        }
    }

    pub fn coeff(&self, k: i32) -> i64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.0.iter().map(|(&k, &c)| (k, c))
    }

    /// `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Self(self.0.iter().map(|(&k, &c)| (-k, c)).collect())
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    /// Whether every exponent is negative.
    pub fn in_v_inv_z_v_inv(&self) -> bool {
        self.max_degree().is_none_or(|d| d < 0)
    }

    /// The bar-invariant polynomial agreeing with `self` in exponents `≥ 0`.
    pub fn symmetrized_nonnegative_part(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms().filter(|&(k, _)| k >= 0) {
            out.add_term(k, c);
            if k > 0 {
                out.add_term(-k, c);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.terms().map(|(k, x)| (k, x * c)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.0.iter().rev().map(|(&k, &c)| (k, c)).enumerate() {
            if idx > 0 {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "v")?;
                    } else {
                        write!(f, "v^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
