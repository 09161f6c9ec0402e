//! Height-bounded universes, covers and the quasiparabolic axioms.

use std::collections::HashMap;

use super::bruhat::bruhat_leq;
use crate::affine::AffinePerm;
use crate::error::{Error, Result};
use crate::fpf::{involutions_up_to, FpfCache, FpfInvolution, Sign};

/// `t_{ij} z t_{ij}`.
pub fn reflection_conjugate(z: &FpfInvolution, i: i64, j: i64) -> Result<FpfInvolution> {
    let t = AffinePerm::transposition(z.n(), i, j)?;
    FpfInvolution::new(t.compose(z.perm()).compose(&t))
}

/// Reflections `t_{ij}`, `i ∈ 1..=n`, `i < j ≤ i + bound`, `j ≢ i`.
fn reflections(n: usize, bound: i64) -> impl Iterator<Item = (i64, i64)> {
    let n = n as i64;
    (1..=n).flat_map(move |i| {
        (i + 1..=i + bound)
            .filter(move |j| (j - i) % n != 0)
            .map(move |j| (i, j))
    })
}

/// Downward covers `(t, tzt)` with `j` scanned up to `i + bound`.
pub fn covers_down_within(z: &FpfInvolution, bound: i64) -> Vec<((i64, i64), FpfInvolution)> {
    let target = z.height().checked_sub(1);
    let Some(target) = target else {
        return Vec::new();
    };
    reflections(z.n(), bound)
        .filter_map(|(i, j)| {
            let y = reflection_conjugate(z, i, j).ok()?;
            (y.height() == target).then_some(((i, j), y))
        })
        .collect()
}

/// All downward covers of `z`. A height drop forces `z(i) > z(j)`, hence
/// `j - i < n + spread(z)`, so scanning to `i + n(1 + spread)` is complete.
pub fn covers_down(z: &FpfInvolution) -> Vec<((i64, i64), FpfInvolution)> {
    let n = z.n() as i64;
    covers_down_within(z, n * (1 + z.perm().spread()))
}

/// A Bruhat cover `lower ⋖_F upper = t lower t` inside a universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cover {
    pub upper: usize,
    pub reflection: (i64, i64),
    pub lower: usize,
}

/// Every FPF involution of one sign class with height at most `lmax`,
/// sorted by `(height, window)`, with all downward covers.
#[derive(Clone, Debug)]
pub struct Universe {
    n: usize,
    sign: Sign,
    lmax: u64,
    elements: Vec<FpfInvolution>,
    index: HashMap<FpfInvolution, usize>,
    covers: Vec<Cover>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

impl Universe {
    pub fn build(n: usize, sign: Sign, lmax: u64, max_elements: usize) -> Result<Self> {
        let elements = involutions_up_to(n, sign, lmax, max_elements)?;
        let index: HashMap<FpfInvolution, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, z)| (z.clone(), k))
            .collect();
        let mut covers = Vec::new();
        let mut down = vec![Vec::new(); elements.len()];
        let mut up = vec![Vec::new(); elements.len()];
        for (k, z) in elements.iter().enumerate() {
            for (t, y) in covers_down(z) {
                let lower = *index.get(&y).ok_or_else(|| {
                    Error::Internal(format!("cover {y} of {z} is missing from the universe"))
                })?;
                covers.push(Cover {
                    upper: k,
                    reflection: t,
                    lower,
                });
                if !down[k].contains(&lower) {
                    down[k].push(lower);
                    up[lower].push(k);
                }
            }
        }
        for v in down.iter_mut().chain(up.iter_mut()) {
            v.sort_unstable();
        }
        Ok(Self {
            n,
            sign,
            lmax,
            elements,
            index,
            covers,
            down,
            up,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn lmax(&self) -> u64 {
        self.lmax
    }

    pub fn elements(&self) -> &[FpfInvolution] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, k: usize) -> &FpfInvolution {
        &self.elements[k]
    }

    pub fn index_of(&self, z: &FpfInvolution) -> Result<usize> {
        self.index
            .get(z)
            .copied()
            .ok_or_else(|| Error::NotInUniverse(z.to_string()))
    }

    /// Covers sorted by `(upper, reflection)`.
    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Distinct elements covered by `k`.
    pub fn lower_covers(&self, k: usize) -> &[usize] {
        &self.down[k]
    }

    /// Distinct elements covering `k` inside the universe.
    pub fn upper_covers(&self, k: usize) -> &[usize] {
        &self.up[k]
    }

    /// Largest base-window spread of any element.
    pub fn max_spread(&self) -> i64 {
        self.elements
            .iter()
            .map(|z| z.perm().spread())
            .max()
            .unwrap_or(0)
    }

    /// `y ≤_F z` by reachability along downward covers.
    pub fn leq(&self, y: usize, z: usize) -> bool {
        let target = self.elements[y].height();
        let mut stack = vec![z];
        let mut seen = vec![false; self.len()];
        while let Some(k) = stack.pop() {
            if k == y {
                return true;
            }
            if seen[k] || self.elements[k].height() <= target {
                continue;
            }
            seen[k] = true;
            stack.extend(self.down[k].iter().copied());
        }
        false
    }

    pub fn leq_elements(&self, y: &FpfInvolution, z: &FpfInvolution) -> Result<bool> {
        Ok(self.leq(self.index_of(y)?, self.index_of(z)?))
    }

    /// Indices of every element `≤_F z`, ascending.
    pub fn ideal(&self, z: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![z];
        while let Some(k) = stack.pop() {
            if !seen[k] {
                seen[k] = true;
                stack.extend(self.down[k].iter().copied());
            }
        }
        (0..self.len()).filter(|&k| seen[k]).collect()
    }

    /// Covers recomputed with a wider scan that were missed by the default.
    pub fn widened_cover_discrepancies(&self, extra: i64) -> Vec<(usize, (i64, i64))> {
        let n = self.n as i64;
        let mut out = Vec::new();
        for (k, z) in self.elements.iter().enumerate() {
            let default = covers_down(z);
            let bound = n * (1 + z.perm().spread()) + extra;
            for (t, _) in covers_down_within(z, bound) {
                if !default.iter().any(|(s, _)| *s == t) {
                    out.push((k, t));
                }
            }
        }
        out
    }

    /// Pairs `y ≤_F z` with `y ≰ z` in the ordinary Bruhat order.
    pub fn refinement_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for z in 0..self.len() {
            for y in self.ideal(z) {
                if !bruhat_leq(self.elements[y].perm(), self.elements[z].perm()) {
                    out.push((y, z));
                }
            }
        }
        out
    }

    /// Pairs `y ≤ z` in the ordinary Bruhat order with `y ≰_F z`.
    pub fn converse_gaps(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for z in 0..self.len() {
            let ideal = self.ideal(z);
            for y in 0..self.len() {
                if ideal.binary_search(&y).is_err()
                    && bruhat_leq(self.elements[y].perm(), self.elements[z].perm())
                {
                    out.push((y, z));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpAxiom {
    Qp1,
    Qp2,
}

/// A counterexample to one of the quasiparabolic axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpWitness {
    pub axiom: QpAxiom,
    pub x: FpfInvolution,
    pub reflection: (i64, i64),
    pub simple: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpReport {
    pub axiom: QpAxiom,
    /// Largest `j - i` scanned.
    pub reflection_bound: i64,
    pub checks: usize,
    pub counterexample: Option<QpWitness>,
}

impl QpReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn qp_bound(u: &Universe) -> i64 {
    u.n as i64 * (2 + u.max_spread())
}

/// QP1: `ht(rxr) = ht(x)` implies `rxr = x`.
pub fn verify_qp1<H>(u: &Universe, height: H) -> Result<QpReport>
where
    H: Fn(&FpfInvolution) -> i64,
{
    let bound = qp_bound(u);
    let mut checks = 0;
    for x in u.elements() {
        let hx = height(x);
        for (i, j) in reflections(u.n, bound) {
            checks += 1;
            let rx = reflection_conjugate(x, i, j)?;
            if height(&rx) == hx && &rx != x {
                return Ok(QpReport {
                    axiom: QpAxiom::Qp1,
                    reflection_bound: bound,
                    checks,
                    counterexample: Some(QpWitness {
                        axiom: QpAxiom::Qp1,
                        x: x.clone(),
                        reflection: (i, j),
                        simple: None,
                    }),
                });
            }
        }
    }
    Ok(QpReport {
        axiom: QpAxiom::Qp1,
        reflection_bound: bound,
        checks,
        counterexample: None,
    })
}

/// QP2: `ht(rx) > ht(x)` and `ht(srx) < ht(sx)` imply `rx = sx`, acting by
/// conjugation.
pub fn verify_qp2<H>(u: &Universe, height: H) -> Result<QpReport>
where
    H: Fn(&FpfInvolution) -> i64,
{
    let bound = qp_bound(u);
    let mut checks = 0;
    for x in u.elements() {
        let hx = height(x);
        let sx: Vec<(FpfInvolution, i64)> = (1..=u.n as i64)
            .map(|s| {
                let y = x.conjugate_simple(s);
                let h = height(&y);
                (y, h)
            })
            .collect();
        for (i, j) in reflections(u.n, bound) {
            let rx = reflection_conjugate(x, i, j)?;
            if height(&rx) <= hx {
                checks += u.n;
                continue;
            }
            for (k, (sxk, hsx)) in sx.iter().enumerate() {
                checks += 1;
                let s = k as i64 + 1;
                let srx = rx.conjugate_simple(s);
                if height(&srx) < *hsx && &rx != sxk {
                    return Ok(QpReport {
                        axiom: QpAxiom::Qp2,
                        reflection_bound: bound,
                        checks,
                        counterexample: Some(QpWitness {
                            axiom: QpAxiom::Qp2,
                            x: x.clone(),
                            reflection: (i, j),
                            simple: Some(s),
                        }),
                    });
                }
            }
        }
    }
    Ok(QpReport {
        axiom: QpAxiom::Qp2,
        reflection_bound: bound,
        checks,
        counterexample: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomCoverReport {
    /// `(y, z, w)` triples examined.
    pub checks: usize,
    /// `(y, z, w, is_cover)` where the atom criterion disagreed with `⋖_F`.
    pub failures: Vec<(FpfInvolution, FpfInvolution, AffinePerm, bool)>,
}

impl AtomCoverReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn is_bruhat_cover(v: &AffinePerm, w: &AffinePerm) -> bool {
    v.length() + 1 == w.length() && w.inverse().compose(v).as_reflection().is_some()
}

/// For all `y, z` with `ĥ(z) = ĥ(y) + 1` and all `w ∈ A(z)`: `y ⋖_F z` iff
/// some `v ∈ A(y)` has `v ⋖ w`.
pub fn atom_cover_check(u: &Universe, cache: &mut FpfCache) -> Result<AtomCoverReport> {
    let mut checks = 0;
    let mut failures = Vec::new();
    for (zk, z) in u.elements().iter().enumerate() {
        let Some(target) = z.height().checked_sub(1) else {
            continue;
        };
        let z_atoms = cache.atoms(z)?;
        for (yk, y) in u.elements().iter().enumerate() {
            if y.height() != target {
                continue;
            }
            let is_cover = u.lower_covers(zk).binary_search(&yk).is_ok();
            let y_atoms = cache.atoms(y)?;
            for w in z_atoms.iter() {
                checks += 1;
                let found = y_atoms.iter().any(|v| is_bruhat_cover(v, w));
                if found != is_cover {
                    failures.push((y.clone(), z.clone(), w.clone(), is_cover));
                }
            }
        }
    }
    Ok(AtomCoverReport { checks, failures })
}
