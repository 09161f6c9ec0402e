//! Fixed-point-free affine involutions.

use std::fmt;

use crate::affine::{residue, AffinePerm};
use crate::error::{Error, Result};
use crate::symfunc::Partition;

/// The two conjugacy classes of fixed-point-free involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "expected + or -".into(),
            }),
        }
    }
}

/// `(1/2n) Σ |π(i) - r_n(π(i))|` as an exact rational `num / 2n`.
/// Returns `None` when the value is not an integer.
pub fn beta(p: &AffinePerm) -> Option<u64> {
    let n = p.n() as i64;
    let total: i64 = p
        .window()
        .iter()
        .map(|&v| (v - residue(v, p.n())).abs())
        .sum();
    (total % (2 * n) == 0).then(|| (total / (2 * n)) as u64)
}

/// A validated fixed-point-free affine involution with cached sign class and
/// height.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpfInvolution {
    perm: AffinePerm,
    sign: Sign,
    height: u64,
}

impl FpfInvolution {
    pub fn new(perm: AffinePerm) -> Result<Self> {
        let n = perm.n();
        if n % 2 == 1 {
            return Err(Error::OddPeriod(n));
        }
        if !perm.is_involution() || (1..=n as i64).any(|i| perm.apply(i) == i) {
            return Err(Error::NotFpf(perm.to_string()));
        }
        let b =
            beta(&perm).ok_or_else(|| Error::NotFpf(format!("{perm} has non-integral beta")))?;
        let len = perm.length();
        let half = n as u64 / 2;
        if len < half || !(len - half).is_multiple_of(2) {
            return Err(Error::Internal(format!("{perm} has length {len}")));
        }
        let sign = if b % 2 == 0 { Sign::Plus } else { Sign::Minus };
        Ok(Self {
            height: (len - half) / 2,
            sign,
            perm,
        })
    }

    pub fn from_window(n: usize, window: &[i64]) -> Result<Self> {
        Self::new(AffinePerm::from_window(n, window)?)
    }

    /// The product of the given reflections, e.g. `[(1,6),(3,8)]`.
    pub fn from_cycles(n: usize, cycles: &[(i64, i64)]) -> Result<Self> {
        let mut w = AffinePerm::identity(n);
        for &(i, j) in cycles {
            let (i, j) = if i < j { (i, j) } else { (j, i) };
            w = w.compose(&AffinePerm::transposition(n, i, j)?);
        }
        Self::new(w)
    }

    /// `Θ⁺ = s_1 s_3 ⋯ s_{n-1}` or `Θ⁻ = s_2 s_4 ⋯ s_n`.
    pub fn theta(n: usize, sign: Sign) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod(0));
        }
        if n % 2 == 1 {
            return Err(Error::OddPeriod(n));
        }
        let start = match sign {
            Sign::Plus => 1,
            Sign::Minus => 2,
        };
        let mut w = AffinePerm::identity(n);
        for i in (start..=n as i64).step_by(2) {
            w.right_mul_simple(i);
        }
        Self::new(w)
    }

    pub fn perm(&self) -> &AffinePerm {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn window(&self) -> &[i64] {
        self.perm.window()
    }

    pub fn apply(&self, i: i64) -> i64 {
        self.perm.apply(i)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `ℓ̂(z) = (ℓ(z) - n/2) / 2`.
    pub fn height(&self) -> u64 {
        self.height
    }

    pub fn beta(&self) -> u64 {
        beta(&self.perm).expect("validated on construction")
    }

    /// `β` via the cycle formula `(1/n) Σ (a_i + b_i) - (n+1)/2`.
    pub fn beta_from_cycles(&self) -> Option<u64> {
        let n = self.n() as i64;
        let twice: i64 = 2 * self.cycles().iter().map(|&(a, b)| a + b).sum::<i64>() - n * (n + 1);
        (twice >= 0 && twice % (2 * n) == 0).then(|| (twice / (2 * n)) as u64)
    }

    pub fn is_theta(&self) -> bool {
        self.height == 0
    }

    /// The pairs `(a, z(a))` with `a` in `1..=n` and `a < z(a)`, ordered by `a`.
    pub fn cycles(&self) -> Vec<(i64, i64)> {
        (1..=self.n() as i64)
            .filter_map(|a| {
                let b = self.apply(a);
                (a < b).then_some((a, b))
            })
            .collect()
    }

    /// The pairs `(z(d), d)` with `d` in `1..=n` and `z(d) < d`, ordered by `d`.
    pub fn reverse_cycles(&self) -> Vec<(i64, i64)> {
        (1..=self.n() as i64)
            .filter_map(|d| {
                let c = self.apply(d);
                (c < d).then_some((c, d))
            })
            .collect()
    }

    /// `[a_1, b_1, ..., a_l, b_l]⁻¹`.
    pub fn alpha_min(&self) -> AffinePerm {
        let values: Vec<i64> = self.cycles().iter().flat_map(|&(a, b)| [a, b]).collect();
        AffinePerm::from_shifted_window(self.n(), &values)
            .expect("cycle words are windows")
            .inverse()
    }

    /// `[c_1, d_1, ..., c_l, d_l]⁻¹`.
    pub fn alpha_max(&self) -> AffinePerm {
        let values: Vec<i64> = self
            .reverse_cycles()
            .iter()
            .flat_map(|&(c, d)| [c, d])
            .collect();
        AffinePerm::from_shifted_window(self.n(), &values)
            .expect("cycle words are windows")
            .inverse()
    }

    /// Whether `w⁻¹ Θ w = z` for the `Θ` of this sign class.
    pub fn is_conjugated_by(&self, w: &AffinePerm) -> bool {
        let theta = Self::theta(self.n(), self.sign).expect("even period");
        w.inverse().compose(theta.perm()).compose(w) == self.perm
    }

    /// `ĉ(z)_i = #{j > i : z(j) < min(i, z(i))}`.
    pub fn fpf_code(&self) -> Vec<u64> {
        (1..=self.n() as i64)
            .map(|i| self.perm.count_after_below(i, i.min(self.apply(i))))
            .collect()
    }

    /// `i` in `1..=n` with `min(i, z(i)) > z(i+1)`.
    pub fn visible_descents(&self) -> Vec<usize> {
        (1..=self.n() as i64)
            .filter(|&i| i.min(self.apply(i)) > self.apply(i + 1))
            .map(|i| i as usize)
            .collect()
    }

    /// The transpose of the sorted FPF code.
    pub fn nu(&self) -> Partition {
        Partition::from_unsorted(self.fpf_code().iter().map(|&c| c as u32)).transpose()
    }

    /// No `i < j < k` with `z(i) > z(j) > z(k)`.
    pub fn is_321_avoiding(&self) -> bool {
        // z(q) > z(p) whenever q - p > spread + n - 1, which bounds i from
        // below once the middle index j is translated into 1..=n
        let reach = self.perm.spread() + self.n() as i64 - 1;
        !(1..=self.n() as i64).any(|j| {
            let v = self.apply(j);
            self.perm.count_after_below(j, v) > 0 && (j - reach..j).any(|i| self.apply(i) > v)
        })
    }

    /// `s_i z s_i`.
    pub fn conjugate_simple(&self, i: i64) -> Self {
        Self::new(self.perm.conjugate_simple(i)).expect("conjugation preserves the class")
    }

    /// `ℓ̂(s_i z s_i) - ℓ̂(z)` by the three-case rule.
    pub fn conj_height_delta(&self, i: i64) -> i64 {
        let (zi, zj) = (self.apply(i), self.apply(i + 1));
        if zi == i + 1 {
            0
        } else if zi > zj {
            -1
        } else {
            1
        }
    }

    /// `t z t` for `t = t_{ij}` together with `ℓ̂(tzt) - ℓ̂(z)`, the latter
    /// evaluated through the case analysis on `z(i)` and `z(j)` in terms of
    /// `δ`, then checked against the recomputed height.
    pub fn conj_by_reflection(&self, i: i64, j: i64) -> Result<(Self, i64)> {
        let n = self.n() as i64;
        let t = AffinePerm::transposition(self.n(), i, j)?;
        let z = &self.perm;
        let tz = t.compose(z);
        let zt = z.compose(&t);
        let tzt = tz.compose(&t);
        let d = |w: &AffinePerm| -> Result<i64> { Ok(w.delta(i, j)? as i64) };
        let (zi, zj) = (z.apply(i), z.apply(j));
        let len_delta = if residue(zi, self.n()) != residue(j, self.n()) {
            if zi < zj {
                2 * d(&tz)? + 2 * d(z)? + 2
            } else {
                -2 * d(&tzt)? - 2 * d(&zt)? - 2
            }
        } else {
            let m = (zi - j) / n;
            let twice_m_n = 2 * m * n;
            let gap = j - i;
            if twice_m_n == -gap || twice_m_n == gap {
                return Err(Error::Internal(format!(
                    "z(i) = j + mn with 2mn = ±(j - i) for z = {self}, i = {i}, j = {j}"
                )));
            }
            if twice_m_n < -gap {
                2 * d(&tz)? + 2 * d(z)? + 2
            } else if twice_m_n > gap {
                -2 * d(&tzt)? - 2 * d(&zt)? - 2
            } else {
                2 * d(&tz)? - 2 * d(&zt)?
            }
        };
        let y = Self::new(tzt)?;
        let h = y.height as i64 - self.height as i64;
        if 2 * h != len_delta {
            return Err(Error::Internal(format!(
                "reflection length formula gives {len_delta} but lengths differ by {} for z = {self}, t = ({i},{j})",
                2 * h
            )));
        }
        Ok((y, h))
    }

    pub fn rotate(&self) -> Self {
        Self::new(self.perm.rotate()).expect("rotation preserves fixed-point-freeness")
    }

    pub fn star(&self) -> Self {
        Self::new(self.perm.star()).expect("star preserves fixed-point-freeness")
    }

    /// Whether the base window is a permutation of `1..=n`.
    pub fn is_finite(&self) -> bool {
        self.perm.is_finite()
    }
}

/// Parses `t(1,6)t(3,8)` into reflection pairs.
pub fn parse_cycles(s: &str) -> Result<Vec<(i64, i64)>> {
    let err = |reason: &str| Error::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    let mut out = Vec::new();
    while !rest.is_empty() {
        rest = rest
            .strip_prefix("t(")
            .ok_or_else(|| err("expected t(i,j)"))?;
        let close = rest.find(')').ok_or_else(|| err("missing )"))?;
        let (i, j) = rest[..close]
            .split_once(',')
            .ok_or_else(|| err("expected two entries"))?;
        let i: i64 = i.parse().map_err(|_| err("bad integer"))?;
        let j: i64 = j.parse().map_err(|_| err("bad integer"))?;
        out.push((i, j));
        rest = &rest[close + 1..];
    }
    if out.is_empty() {
        return Err(err("no cycles"));
    }
    Ok(out)
}

impl fmt::Display for FpfInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.perm, f)
    }
}

impl fmt::Debug for FpfInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.perm, f)
    }
}

impl std::str::FromStr for FpfInvolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> FpfInvolution {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            FpfInvolution::from_window(3, &[2, 1, 3]),
            Err(Error::OddPeriod(3))
        ));
        assert!(matches!(
            "[1,2,3,4]".parse::<FpfInvolution>(),
            Err(Error::NotFpf(_))
        ));
        assert!(matches!(
            "[2,3,4,1]".parse::<FpfInvolution>(),
            Err(Error::NotFpf(_))
        ));
        assert!(matches!(
            "[1,0,3,2]".parse::<FpfInvolution>(),
            Err(Error::WindowSum { .. })
        ));
    }

    #[test]
    fn thetas() {
        let p = FpfInvolution::theta(4, Sign::Plus).unwrap();
        let m = FpfInvolution::theta(4, Sign::Minus).unwrap();
        assert_eq!(p, z("[2,1,4,3]"));
        assert_eq!(m, z("[0,3,2,5]"));
        assert_eq!((p.beta(), m.beta()), (0, 1));
        assert_eq!((p.sign(), m.sign()), (Sign::Plus, Sign::Minus));
        assert_eq!((p.height(), m.height()), (0, 0));
        assert_eq!(FpfInvolution::theta(2, Sign::Plus).unwrap(), z("[2,1]"));
        assert_eq!(p.rotate(), m);
        assert!(FpfInvolution::theta(5, Sign::Plus).is_err());
    }

    #[test]
    fn example_involution() {
        let y = z("[6,-3,8,-1]");
        assert_eq!(y, FpfInvolution::from_cycles(4, &[(1, 6), (3, 8)]).unwrap());
        assert_eq!(y.beta(), 2);
        assert_eq!(y.beta_from_cycles(), Some(2));
        assert_eq!(y.sign(), Sign::Plus);
        assert_eq!(y.height(), 4);
        let a: AffinePerm = "[3,0,5,2]".parse().unwrap();
        assert_eq!(y.alpha_min(), a);
        assert_eq!(y.alpha_max(), a);
        assert_eq!(y.fpf_code(), vec![2, 0, 2, 0]);
        assert_eq!(y.visible_descents(), vec![1, 3]);
        assert_eq!(y.nu(), "(2,2)".parse().unwrap());
        assert!(y.is_321_avoiding());
        assert_eq!(y.conj_height_delta(1), -1);
    }

    #[test]
    fn theta_properties() {
        let t = FpfInvolution::theta(4, Sign::Plus).unwrap();
        assert!(t.alpha_min().is_identity());
        assert_eq!(t.fpf_code(), vec![0; 4]);
        assert!(t.nu().is_empty());
        assert!(t.is_321_avoiding());
        assert_eq!(t.conj_height_delta(1), 0);
        assert_eq!(t.conj_height_delta(2), 1);
        assert!(!z("[4,3,2,1]").is_321_avoiding());
    }

    #[test]
    fn alpha_min_of_second_example() {
        let y = FpfInvolution::from_cycles(4, &[(1, 4), (3, 10)]).unwrap();
        let a = y.alpha_min();
        assert_eq!(
            a.inverse(),
            AffinePerm::from_shifted_window(4, &[1, 4, 3, 10]).unwrap()
        );
        assert!(y.is_conjugated_by(&a));
        assert_eq!(a.length(), y.height());
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles("t(1,6) t(3,8)").unwrap(), vec![(1, 6), (3, 8)]);
        assert_eq!(parse_cycles("t(-2,3)").unwrap(), vec![(-2, 3)]);
        assert!(parse_cycles("t(1,6").is_err());
        assert!(parse_cycles("").is_err());
        assert!(parse_cycles("s(1,2)").is_err());
    }
}
