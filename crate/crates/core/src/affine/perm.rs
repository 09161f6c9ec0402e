use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of the affine symmetric group, stored by its base window
/// `[π(1), ..., π(n)]`.
///
/// Equality, hashing and ordering all go through the base window, so two
/// values compare equal exactly when they are the same bijection of the
/// integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePerm {
    n: usize,
    window: Vec<i64>,
}

/// The representative of `x` modulo `n` that lies in `1..=n`.
pub fn residue(x: i64, n: usize) -> i64 {
    (x - 1).rem_euclid(n as i64) + 1
}

fn triangular(n: usize) -> i64 {
    let n = n as i64;
    n * (n + 1) / 2
}

impl AffinePerm {
    /// Validates `values` as the base window of an affine permutation.
    pub fn from_window(n: usize, values: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod(n));
        }
        if values.len() != n {
            return Err(Error::WindowLength {
                n,
                got: values.len(),
            });
        }
        let sum: i64 = values.iter().sum();
        if sum != triangular(n) {
            return Err(Error::WindowSum {
                expected: triangular(n),
                got: sum,
            });
        }
        check_residues(n, values)?;
        Ok(Self {
            n,
            window: values.to_vec(),
        })
    }

    /// Builds the permutation having `values` as *some* window
    /// `[π(k+1), ..., π(k+n)]`. The offset `k` is recovered from the sum,
    /// which exceeds `n(n+1)/2` by exactly `kn`.
    pub fn from_shifted_window(n: usize, values: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod(n));
        }
        if values.len() != n {
            return Err(Error::WindowLength {
                n,
                got: values.len(),
            });
        }
        check_residues(n, values)?;
        let excess = values.iter().sum::<i64>() - triangular(n);
        if excess.rem_euclid(n as i64) != 0 {
            return Err(Error::BadShiftedWindow(format_window(values)));
        }
        let offset = excess / n as i64;
        let mut window = vec![0; n];
        for (p, &v) in values.iter().enumerate() {
            let q = offset + p as i64; // zero-based position k + p
            let idx = q.rem_euclid(n as i64) as usize;
            let shift = q.div_euclid(n as i64);
            window[idx] = v - shift * n as i64;
        }
        Ok(Self { n, window })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            window: (1..=n as i64).collect(),
        }
    }

    /// The simple reflection `s_i`; the index is read modulo `n`.
    pub fn simple(n: usize, i: i64) -> Self {
        let mut w = Self::identity(n);
        w.right_mul_simple(i);
        w
    }

    /// The reflection `t_{ij}` exchanging `i + kn` and `j + kn` for all `k`.
    pub fn transposition(n: usize, i: i64, j: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod(n));
        }
        if i >= j || (j - i).rem_euclid(n as i64) == 0 {
            return Err(Error::BadTransposition { n, i, j });
        }
        let mut window: Vec<i64> = (1..=n as i64).collect();
        let (ri, rj) = (residue(i, n), residue(j, n));
        window[(ri - 1) as usize] = ri + (j - i);
        window[(rj - 1) as usize] = rj - (j - i);
        Ok(Self { n, window })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(p, &v)| v == p as i64 + 1)
    }

    /// Evaluates `π(i)` for any integer `i`.
    #[inline]
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.n as i64;
        let q = i - 1;
        self.window[q.rem_euclid(n) as usize] + q.div_euclid(n) * n
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.n, other.n,
            "cannot compose permutations of different periods"
        );
        Self {
            n: self.n,
            window: other.window.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n as i64;
        let mut window = vec![0; self.n];
        for (p, &v) in self.window.iter().enumerate() {
            let q = v - 1;
            window[q.rem_euclid(n) as usize] = p as i64 + 1 - q.div_euclid(n) * n;
        }
        Self { n: self.n, window }
    }

    /// In place `π ↦ π s_i`: swaps the values at positions `i` and `i+1`.
    pub fn right_mul_simple(&mut self, i: i64) {
        let n = self.n as i64;
        if n == 1 {
            return;
        }
        let r = residue(i, self.n);
        if r < n {
            self.window.swap((r - 1) as usize, r as usize);
        } else {
            let first = self.window[0];
            let last = self.window[self.n - 1];
            self.window[0] = last - n;
            self.window[self.n - 1] = first + n;
        }
    }

    /// In place `π ↦ s_i π`: swaps the values `i` and `i+1` (mod `n`).
    pub fn left_mul_simple(&mut self, i: i64) {
        if self.n == 1 {
            return;
        }
        let r = residue(i, self.n);
        let next = residue(r + 1, self.n);
        for v in &mut self.window {
            let rv = residue(*v, self.n);
            if rv == r {
                *v += 1;
            } else if rv == next {
                *v -= 1;
            }
        }
    }

    /// `π ↦ s_i π s_i`.
    pub fn conjugate_simple(&self, i: i64) -> Self {
        let mut w = self.clone();
        w.left_mul_simple(i);
        w.right_mul_simple(i);
        w
    }

    /// The automorphism induced by `s_i ↦ s_{n-i}`, realised as conjugation
    /// by `i ↦ n + 1 - i`.
    pub fn star(&self) -> Self {
        let n = self.n as i64;
        Self {
            n: self.n,
            window: (1..=n).map(|i| n + 1 - self.apply(n + 1 - i)).collect(),
        }
    }

    /// The automorphism induced by `s_i ↦ s_{i+1}`, realised as conjugation
    /// by the shift `i ↦ i + 1`.
    pub fn rotate(&self) -> Self {
        Self {
            n: self.n,
            window: (1..=self.n as i64).map(|i| self.apply(i - 1) + 1).collect(),
        }
    }

    /// Largest minus smallest entry of the base window.
    pub fn spread(&self) -> i64 {
        let max = self.window.iter().max().copied().unwrap_or(0);
        let min = self.window.iter().min().copied().unwrap_or(0);
        max - min
    }

    /// The image under the homomorphism onto the finite symmetric group,
    /// `i ↦ r_n(π(i))`, as a one-line permutation of `1..=n`.
    pub fn project_finite(&self) -> Vec<usize> {
        self.window
            .iter()
            .map(|&v| residue(v, self.n) as usize)
            .collect()
    }

    /// True when the window is a permutation of `1..=n`.
    pub fn is_finite(&self) -> bool {
        self.window.iter().all(|&v| v >= 1 && v <= self.n as i64)
    }

    pub fn is_involution(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(p, &v)| self.apply(v) == p as i64 + 1)
    }

    /// If this is a reflection `t_{ij}`, returns `(i, j)` normalised with
    /// `i` in `1..=n`.
    pub fn as_reflection(&self) -> Option<(i64, i64)> {
        let moved: Vec<i64> = (1..=self.n as i64)
            .filter(|&p| self.apply(p) != p)
            .collect();
        if moved.len() != 2 {
            return None;
        }
        let (p, q) = (moved[0], moved[1]);
        let image = self.apply(p);
        if residue(image, self.n) != q {
            return None;
        }
        let (i, j) = if image > p { (p, image) } else { (image, p) };
        let t = Self::transposition(self.n, i, j).ok()?;
        if &t != self {
            return None;
        }
        let shift = (residue(i, self.n) - i) / self.n as i64 * self.n as i64;
        Some((i + shift, j + shift))
    }
}

fn check_residues(n: usize, values: &[i64]) -> Result<()> {
    let mut seen: Vec<Option<i64>> = vec![None; n];
    for &v in values {
        let r = (residue(v, n) - 1) as usize;
        if let Some(first) = seen[r] {
            return Err(Error::ResidueCollision {
                n,
                first,
                second: v,
            });
        }
        seen[r] = Some(v);
    }
    Ok(())
}

pub(crate) fn format_window(values: &[i64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parses `"[a1,a2,...,an]"` (whitespace allowed) into its integer entries.
pub fn parse_window_values(s: &str) -> Result<Vec<i64>> {
    let err = |reason: &str| Error::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err("expected a bracketed list such as [2,1,4,3]"))?;
    if inner.trim().is_empty() {
        return Err(err("empty window"));
    }
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|e| err(&format!("bad entry {:?}: {e}", tok.trim())))
        })
        .collect()
}

impl FromStr for AffinePerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_window_values(s)?;
        Self::from_window(values.len(), &values)
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_window(&self.window))
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Mul for &AffinePerm {
    type Output = AffinePerm;

    fn mul(self, rhs: &AffinePerm) -> AffinePerm {
        self.compose(rhs)
    }
}
