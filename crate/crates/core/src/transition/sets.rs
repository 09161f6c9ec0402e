//! The cover sets `Φ±_r(π)` and `Π±(y, r)`.

use std::collections::BTreeMap;

use crate::affine::AffinePerm;
use crate::error::{Error, Result};
use crate::fpf::FpfInvolution;
use crate::order::reflection_conjugate;

/// `π ⋖ π t_{ij}` for `i < j ≢ i (mod n)`.
pub fn is_right_cover(p: &AffinePerm, i: i64, j: i64) -> bool {
    (j - i).rem_euclid(p.n() as i64) != 0
        && i < j
        && p.apply(i) < p.apply(j)
        && p.delta(i, j).is_ok_and(|d| d == 0)
}

/// `t_{ij}` written with `i ∈ [1, n]`.
pub fn normalize_reflection(n: usize, i: i64, j: i64) -> (i64, i64) {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let k = (i - 1).div_euclid(n as i64);
    (i - k * n as i64, j - k * n as i64)
}

/// A set of covers, each recorded with the first reflection `(i, j)` found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSet<T: Ord> {
    pub members: BTreeMap<T, (i64, i64)>,
    /// The scan radius used; the set was confirmed unchanged at twice it.
    pub bound: i64,
}

impl<T: Ord> CoverSet<T> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.members.contains_key(x)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.keys().all(|k| other.members.contains_key(k))
    }
}

/// Which side of the pivot the free index lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}

/// Scans partners at distance `1..=bound`, then confirms nothing new
/// appears at `2 · bound`.
fn scan_twice<T: Ord + Clone>(
    bound: i64,
    side: Side,
    r: i64,
    what: &str,
    mut hit: impl FnMut(i64, i64) -> Option<T>,
) -> Result<CoverSet<T>> {
    let mut scan = |radius: i64| {
        let mut out = BTreeMap::new();
        for d in 1..=radius {
            let (i, j) = match side {
                Side::Below => (r - d, r),
                Side::Above => (r, r + d),
            };
            if let Some(x) = hit(i, j) {
                out.entry(x).or_insert((i, j));
            }
        }
        out
    };
    let members = scan(bound);
    let wide = scan(2 * bound);
    if wide.len() != members.len() {
        return Err(Error::Internal(format!(
            "{what} scan at radius {bound} missed covers found at radius {}",
            2 * bound
        )));
    }
    Ok(CoverSet { members, bound })
}

/// `Φ⁻_r(π)` (for `Side::Below`) or `Φ⁺_r(π)` (for `Side::Above`).
pub fn phi_set(a: &AffinePerm, r: i64, side: Side) -> Result<CoverSet<AffinePerm>> {
    let n = a.n() as i64;
    let bound = n * (2 + a.spread());
    scan_twice(bound, side, r, "phi", |i, j| {
        if (j - i) % n == 0 || !is_right_cover(a, i, j) {
            return None;
        }
        let t = AffinePerm::transposition(a.n(), i, j).ok()?;
        Some(a.compose(&t))
    })
}

/// `(Φ⁻_r(π), Φ⁺_r(π))`.
pub fn phi_sets(a: &AffinePerm, r: i64) -> Result<(CoverSet<AffinePerm>, CoverSet<AffinePerm>)> {
    Ok((phi_set(a, r, Side::Below)?, phi_set(a, r, Side::Above)?))
}

/// `Π⁻(y, r)` (for `Side::Below`) or `Π⁺(y, r)` (for `Side::Above`).
pub fn pi_set(y: &FpfInvolution, r: i64, side: Side) -> Result<CoverSet<FpfInvolution>> {
    let n = y.n() as i64;
    let yr = y.apply(r);
    let bound = n * (2 + y.perm().spread());
    let target = y.height() + 1;
    scan_twice(bound, side, r, "pi", |i, j| {
        let free = if side == Side::Below { i } else { j };
        if (free - r).rem_euclid(n) == 0 || (free - yr).rem_euclid(n) == 0 {
            return None;
        }
        let z = reflection_conjugate(y, i, j).ok()?;
        (z.height() == target).then_some(z)
    })
}

/// `(Π⁻(y, r), Π⁺(y, r))`.
pub fn pi_sets(
    y: &FpfInvolution,
    r: i64,
) -> Result<(CoverSet<FpfInvolution>, CoverSet<FpfInvolution>)> {
    Ok((pi_set(y, r, Side::Below)?, pi_set(y, r, Side::Above)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(n: usize, v: &[i64]) -> AffinePerm {
        AffinePerm::from_window(n, v).unwrap()
    }

    fn fpf(v: &[i64]) -> FpfInvolution {
        FpfInvolution::from_window(v.len(), v).unwrap()
    }

    fn keys<T: Ord + Clone>(s: &CoverSet<T>) -> BTreeSet<T> {
        s.members.keys().cloned().collect()
    }

    /// Every cover `a t_{ij}` with the pivot `r` and partner within `radius`,
    /// judged by direct length comparison.
    fn phi_oracle(a: &AffinePerm, r: i64, radius: i64, side: Side) -> BTreeSet<AffinePerm> {
        let n = a.n() as i64;
        (1..=radius)
            .filter(|d| d % n != 0)
            .filter_map(|d| {
                let (i, j) = match side {
                    Side::Below => (r - d, r),
                    Side::Above => (r, r + d),
                };
                let s = a.compose(&AffinePerm::transposition(a.n(), i, j).unwrap());
                (s.length() == a.length() + 1).then_some(s)
            })
            .collect()
    }

    #[test]
    fn phi_identity() {
        let id = AffinePerm::identity(4);
        for r in 1..=4 {
            let (minus, plus) = phi_sets(&id, r).unwrap();
            for s in minus.members.keys().chain(plus.members.keys()) {
                assert_eq!(s.length(), 1);
                assert!(s.as_reflection().is_some_and(|(i, j)| j - i == 1));
            }
            assert_eq!(minus.len(), 1);
            assert_eq!(plus.len(), 1);
        }
    }

    #[test]
    fn phi_matches_length_oracle() {
        let a = w(4, &[3, 0, 5, 2]);
        let radius = 2 * 4 * a.spread().max(1) + 8;
        for r in -3..=6 {
            for side in [Side::Below, Side::Above] {
                assert_eq!(
                    keys(&phi_set(&a, r, side).unwrap()),
                    phi_oracle(&a, r, radius, side)
                );
            }
        }
    }

    #[test]
    fn pi_examples() {
        let y = fpf(&[6, -3, 8, -1]);
        let (minus, _) = pi_sets(&y, 1).unwrap();
        assert_eq!(
            keys(&minus),
            BTreeSet::from([fpf(&[-5, -4, 9, 10]), fpf(&[4, -5, 10, 1])])
        );
        let (_, plus) = pi_sets(&y, 6).unwrap();
        assert_eq!(
            keys(&plus),
            BTreeSet::from([fpf(&[7, 8, -3, -2]), fpf(&[8, -1, 6, -3])])
        );
        let theta = FpfInvolution::theta(4, crate::fpf::Sign::Plus).unwrap();
        assert_eq!(
            keys(&pi_sets(&theta, 1).unwrap().0),
            BTreeSet::from([fpf(&[-1, 0, 5, 6])])
        );
        assert_eq!(
            keys(&pi_sets(&theta, 2).unwrap().1),
            BTreeSet::from([fpf(&[3, 4, 1, 2])])
        );
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_reflection(4, 9, 3), (3, 9));
        assert_eq!(normalize_reflection(4, 10, 5), (1, 6));
        assert_eq!(normalize_reflection(4, -1, 1), (3, 5));
    }
}
