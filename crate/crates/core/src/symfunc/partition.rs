//! Integer partitions.

use std::fmt;

use crate::affine::AffinePerm;
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates that `parts` is weakly decreasing; trailing zeros are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Parse {
                input: format!("{parts:?}"),
                reason: "parts must be positive and weakly decreasing".into(),
            });
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts arbitrary nonnegative entries into a partition.
    pub fn from_unsorted(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self(v)
    }

    /// `(k, k, ..., k)` with `m` parts.
    pub fn rectangle(k: u32, m: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Self(vec![k; m])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let m = self.largest();
        Self(
            (1..=m)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32)
                .collect(),
        )
    }

    /// Whether every part is at most `n - 1`.
    pub fn in_par(&self, n: usize) -> bool {
        (self.largest() as usize) < n
    }

    fn require_par(&self, n: usize) -> Result<()> {
        if self.in_par(n) {
            Ok(())
        } else {
            Err(Error::NotInPar {
                partition: self.0.clone(),
                max: n.saturating_sub(1) as u32,
            })
        }
    }

    /// `self ≤ other` in dominance order.
    pub fn dominance_leq(&self, other: &Self) -> Result<bool> {
        if self.weight() != other.weight() {
            return Err(Error::WeightMismatch(self.0.clone(), other.0.clone()));
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The Grassmannian affine permutation of shape `self`.
    pub fn grassmannian(&self, n: usize) -> Result<AffinePerm> {
        if n == 0 {
            return Err(Error::ZeroPeriod(0));
        }
        self.require_par(n)?;
        let t = self.transpose();
        let mut code = vec![0u64; n];
        // increasing arrangement, zeros first
        for (slot, &p) in code.iter_mut().rev().zip(t.parts()) {
            *slot = p as u64;
        }
        Ok(AffinePerm::from_code(&code)?.inverse())
    }

    /// `λ* = λ(π*)` for the Grassmannian `π` of shape `λ`.
    pub fn star(&self, n: usize) -> Result<Self> {
        Ok(self.grassmannian(n)?.star().shape())
    }
}

/// All partitions of `weight` with parts at most `max_part`, in
/// lexicographically decreasing order.
pub fn partitions_bounded(weight: u32, max_part: u32) -> Vec<Partition> {
    fn rec(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if weight == 0 {
        out.push(Partition::empty());
    } else if max_part > 0 {
        rec(weight, max_part, &mut Vec::new(), &mut out);
    }
    out
}

/// `Par^n` restricted to a fixed weight, lexicographically decreasing.
pub fn par_n(n: usize, weight: u32) -> Vec<Partition> {
    partitions_bounded(weight, n.saturating_sub(1) as u32)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `(2,1,1)`, `[2,1,1]`, `2,1,1` or the empty forms `()`/`[]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
            .unwrap_or(t);
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| {
                x.trim().parse::<u32>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}
