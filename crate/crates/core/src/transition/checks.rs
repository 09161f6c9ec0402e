//! End-to-end checks of the transition identities and their supporting
//! bijections.

use std::collections::{BTreeMap, BTreeSet};

use super::sets::{is_right_cover, normalize_reflection, phi_sets, pi_set, CoverSet, Side};
use crate::affine::{residue, AffinePerm};
use crate::error::{Error, Result};
use crate::fpf::{FpfCache, FpfInvolution};
use crate::order::{covers_down, reflection_conjugate};
use crate::symfunc::{MonomialExpansion, StanleyExpander};

/// Both sides of a transition identity.
#[derive(Clone, Debug)]
pub struct TransitionReport<T: Ord> {
    pub left_set: CoverSet<T>,
    pub right_set: CoverSet<T>,
    pub left: MonomialExpansion,
    pub right: MonomialExpansion,
    pub equal: bool,
}

fn sum_over<T: Ord>(
    n: usize,
    degree: u32,
    set: &CoverSet<T>,
    mut f: impl FnMut(&T) -> Result<MonomialExpansion>,
) -> Result<MonomialExpansion> {
    let mut out = MonomialExpansion::zero(n, degree);
    for x in set.members.keys() {
        out.add_scaled(&f(x)?, 1)?;
    }
    Ok(out)
}

/// `Σ_{Φ⁻_r(π)} F_σ = Σ_{Φ⁺_r(π)} F_σ`.
pub fn check_transition_affine(
    a: &AffinePerm,
    r: i64,
    expander: &mut StanleyExpander,
) -> Result<TransitionReport<AffinePerm>> {
    let (left_set, right_set) = phi_sets(a, r)?;
    let degree = a.length() as u32 + 1;
    let left = sum_over(a.n(), degree, &left_set, |s| expander.expand(s))?;
    let right = sum_over(a.n(), degree, &right_set, |s| expander.expand(s))?;
    Ok(TransitionReport {
        equal: left == right,
        left_set,
        right_set,
        left,
        right,
    })
}

/// `Σ_{Π⁻(y,p)} F̂_z = Σ_{Π⁺(y,q)} F̂_z` with `q = y(p)`.
pub fn check_transition_fpf(
    y: &FpfInvolution,
    p: i64,
    cache: &mut FpfCache,
) -> Result<TransitionReport<FpfInvolution>> {
    let q = y.apply(p);
    if p >= q {
        return Err(Error::Precondition(format!(
            "need p < y(p), got p = {p}, y(p) = {q}"
        )));
    }
    let left_set = pi_set(y, p, Side::Below)?;
    let right_set = pi_set(y, q, Side::Above)?;
    let degree = y.height() as u32 + 1;
    let left = sum_over(y.n(), degree, &left_set, |z| {
        Ok((*cache.fpf_stanley(z)?).clone())
    })?;
    let right = sum_over(y.n(), degree, &right_set, |z| {
        Ok((*cache.fpf_stanley(z)?).clone())
    })?;
    Ok(TransitionReport {
        equal: left == right,
        left_set,
        right_set,
        left,
        right,
    })
}

/// Outcome of checking that `(π, t) ↦ πt` maps onto `A(z)` bijectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomBijectionReport {
    /// Reflections `t` (normalized) with `tyt = z`.
    pub reflections: Vec<(i64, i64)>,
    pub pairs: usize,
    pub atoms_z: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl AtomBijectionReport {
    pub fn passed(&self) -> bool {
        self.injective && self.surjective && self.pairs == self.atoms_z
    }
}

/// Checks the atom bijection for a cover `y ⋖_F z`.
pub fn atom_bijection_check(
    y: &FpfInvolution,
    z: &FpfInvolution,
    cache: &mut FpfCache,
) -> Result<AtomBijectionReport> {
    let reflections: Vec<(i64, i64)> = covers_down(z)
        .into_iter()
        .filter(|(_, lower)| lower == y)
        .map(|((i, j), _)| (i, j))
        .collect();
    if reflections.is_empty() {
        return Err(Error::NotACover {
            y: y.perm().to_string(),
            z: z.perm().to_string(),
        });
    }
    let atoms_y = cache.atoms(y)?;
    let atoms_z: BTreeSet<AffinePerm> = cache.atoms(z)?.iter().cloned().collect();
    let mut images = Vec::new();
    for p in atoms_y.iter() {
        for &(i, j) in &reflections {
            if is_right_cover(p, i, j) {
                images.push(p.compose(&AffinePerm::transposition(p.n(), i, j)?));
            }
        }
    }
    let distinct: BTreeSet<AffinePerm> = images.iter().cloned().collect();
    Ok(AtomBijectionReport {
        reflections,
        pairs: images.len(),
        atoms_z: atoms_z.len(),
        injective: distinct.len() == images.len(),
        surjective: distinct == atoms_z,
    })
}

/// `Π⁺(y,p) ⊆ Π⁺(y,q)` and `Π⁻(y,q) ⊆ Π⁻(y,p)` for `q = y(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetReport {
    pub plus_inclusion: bool,
    pub minus_inclusion: bool,
}

impl SubsetReport {
    pub fn passed(&self) -> bool {
        self.plus_inclusion && self.minus_inclusion
    }
}

pub fn phi_subset_check(y: &FpfInvolution, p: i64) -> Result<SubsetReport> {
    let q = y.apply(p);
    if p >= q {
        return Err(Error::Precondition(format!(
            "need p < y(p), got p = {p}, y(p) = {q}"
        )));
    }
    Ok(SubsetReport {
        plus_inclusion: pi_set(y, p, Side::Above)?.is_subset(&pi_set(y, q, Side::Above)?),
        minus_inclusion: pi_set(y, q, Side::Below)?.is_subset(&pi_set(y, p, Side::Below)?),
    })
}

/// A triple `(π, i, j)` with `π ∈ A(y)`, `π ⋖ π t_{ij}`, and
/// `ℓ̂(t_{ij} y t_{ij}) ≠ ℓ̂(y) + 1`.
pub type Triple = (AffinePerm, i64, i64);

/// The sets `N⁻` and `N⁺` and the toggle `θ` between them.
#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub n_minus: BTreeSet<Triple>,
    pub n_plus: BTreeSet<Triple>,
    /// `θ(θ(x)) = x` on `N⁻ ∪ N⁺`.
    pub involution: bool,
    /// `θ(N⁻) = N⁺`.
    pub bijection: bool,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.involution && self.bijection
    }
}

fn in_n(y: &FpfInvolution, atoms: &BTreeSet<AffinePerm>, (p, i, j): &Triple) -> bool {
    let n = y.n() as i64;
    *i < *j
        && (j - i) % n != 0
        && atoms.contains(p)
        && is_right_cover(p, *i, *j)
        && reflection_conjugate(y, *i, *j).is_ok_and(|z| z.height() != y.height() + 1)
}

/// `θ(π, i, j) = (π t_{ij} t_{kl}, k, l)` with `(k, l) = (y(j), y(i))`.
pub fn theta(y: &FpfInvolution, (p, i, j): &Triple) -> Result<Triple> {
    let (k, l) = (y.apply(*j), y.apply(*i));
    let n = y.n();
    let moved = p
        .compose(&AffinePerm::transposition(n, *i, *j)?)
        .compose(&AffinePerm::transposition(n, k.min(l), k.max(l))?);
    Ok((moved, k, l))
}

pub fn theta_check(y: &FpfInvolution, p: i64, cache: &mut FpfCache) -> Result<ThetaReport> {
    let q = y.apply(p);
    if p >= q {
        return Err(Error::Precondition(format!(
            "need p < y(p), got p = {p}, y(p) = {q}"
        )));
    }
    let n = y.n() as i64;
    let atoms: BTreeSet<AffinePerm> = cache.atoms(y)?.iter().cloned().collect();
    let pivots = [p, q];
    let off_pivot = |x: i64| pivots.iter().all(|&r| (x - r).rem_euclid(n) != 0);
    let mut n_minus = BTreeSet::new();
    let mut n_plus = BTreeSet::new();
    for a in &atoms {
        let bound = n * (2 + a.spread());
        for &r in &pivots {
            for d in 1..=bound {
                let below = (a.clone(), r - d, r);
                if off_pivot(r - d) && in_n(y, &atoms, &below) {
                    n_minus.insert(below);
                }
                let above = (a.clone(), r, r + d);
                if off_pivot(r + d) && in_n(y, &atoms, &above) {
                    n_plus.insert(above);
                }
            }
        }
    }
    let mut involution = true;
    let mut image = BTreeSet::new();
    for x in n_minus.iter().chain(n_plus.iter()) {
        let tx = theta(y, x)?;
        involution &= in_n(y, &atoms, &tx) && theta(y, &tx)? == *x;
        if n_minus.contains(x) {
            image.insert(tx);
        }
    }
    Ok(ThetaReport {
        bijection: image == n_plus,
        involution,
        n_minus,
        n_plus,
    })
}

/// The reflections `r` with `ryr = tyt` versus the prediction: `{t}` when
/// `y(i) ≡ j (mod n)` and `{t, yty}` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub same_class: bool,
    pub expected: BTreeSet<(i64, i64)>,
    pub found: BTreeSet<(i64, i64)>,
}

impl DichotomyReport {
    pub fn passed(&self) -> bool {
        self.expected == self.found
    }
}

/// Requires `t_{ij} y t_{ij} ≠ y`.
pub fn yty_dichotomy(y: &FpfInvolution, i: i64, j: i64) -> Result<DichotomyReport> {
    let n = y.n();
    let target = reflection_conjugate(y, i, j)?;
    if target == *y {
        return Err(Error::Precondition(format!(
            "t({i},{j}) commutes with {}",
            y.perm()
        )));
    }
    let same_class = residue(y.apply(i), n) == residue(j, n);
    let t = normalize_reflection(n, i, j);
    let mut expected = BTreeSet::from([t]);
    if !same_class {
        expected.insert(normalize_reflection(n, y.apply(i), y.apply(j)));
    }
    let reach = (j - i).abs().max((y.apply(j) - y.apply(i)).abs()) + 2 * n as i64;
    let mut found = BTreeSet::new();
    for a in 1..=n as i64 {
        for b in a + 1..=a + reach {
            if (b - a) % n as i64 != 0 && reflection_conjugate(y, a, b)? == target {
                found.insert((a, b));
            }
        }
    }
    Ok(DichotomyReport {
        same_class,
        expected,
        found,
    })
}

/// Sums `F_{πt}` over a triple set, for comparing `N⁻` and `N⁺` directly.
pub fn triple_sum(
    triples: &BTreeSet<Triple>,
    n: usize,
    degree: u32,
    expander: &mut StanleyExpander,
) -> Result<MonomialExpansion> {
    let mut out = MonomialExpansion::zero(n, degree);
    let mut counts: BTreeMap<AffinePerm, i128> = BTreeMap::new();
    for (p, i, j) in triples {
        *counts
            .entry(p.compose(&AffinePerm::transposition(n, *i, *j)?))
            .or_default() += 1;
    }
    for (w, c) in counts {
        out.add_scaled(&expander.expand(&w)?, c)?;
    }
    Ok(out)
}
