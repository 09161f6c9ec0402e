//! Degree-truncated spans of FPF Stanley functions and the conjecture checks
//! built on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lattice::IntLattice;
use crate::error::{Error, Result};
use crate::fpf::{involutions_up_to, FpfCache, FpfInvolution, Sign};
use crate::symfunc::{omega_plus, par_n, Partition};

/// Outcome of a conjecture check at a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    FalsifiedWithWitness,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::FalsifiedWithWitness => "falsified-with-witness",
        }
    }
}

/// The bounds a computation was carried out under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub n: usize,
    pub lmax: u64,
    pub degree: u32,
}

/// FPF involutions of both sign classes with `ℓ̂ ≤ max_height`.
pub fn both_classes(n: usize, max_height: u64, max_elements: usize) -> Result<Vec<FpfInvolution>> {
    let mut all = Vec::new();
    for sign in Sign::both() {
        all.extend(involutions_up_to(n, sign, max_height, max_elements)?);
    }
    Ok(all)
}

/// Coefficients of `F̂_z` on the partitions `index`, zero when the degrees differ.
fn vector_on(
    cache: &mut FpfCache,
    z: &FpfInvolution,
    degree: u32,
    index: &[Partition],
) -> Result<Vec<i128>> {
    if z.height() != degree as u64 {
        return Ok(vec![0; index.len()]);
    }
    let f = cache.fpf_stanley(z)?;
    Ok(index.iter().map(|lam| f.coeff(lam)).collect())
}

/// The lattice spanned by degree-`degree` coefficient vectors of `F̂_z` for
/// `z` of both sign classes with `ℓ̂ ≤ max(lmax, degree)`, optionally only
/// `z ∈ S_n`.
pub fn fpf_span(
    n: usize,
    lmax: u64,
    degree: u32,
    restrict_finite: bool,
    max_elements: usize,
    cache: &mut FpfCache,
) -> Result<IntLattice> {
    if n % 2 == 1 {
        return Err(Error::OddPeriod(n));
    }
    let index = par_n(n, degree);
    let mut rows = Vec::new();
    for z in both_classes(n, lmax.max(degree as u64), max_elements)? {
        if !restrict_finite || z.is_finite() {
            rows.push(vector_on(cache, &z, degree, &index)?);
        }
    }
    IntLattice::from_i128_rows(index.len(), &rows)
}

/// Result of the bounded search for a positive basis at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositiveBasis {
    /// Representatives whose functions form a positive basis.
    Found(Vec<FpfInvolution>),
    /// Every candidate subset was examined.
    NoneExists { searched: u64 },
    /// The cap was reached first.
    Inconclusive { searched: u64 },
}

/// Coordinates of `g` in the independent rows `basis`, if they exist.
fn coordinates(basis: &[Vec<i128>], g: &[i128]) -> Option<Vec<BigRational>> {
    let r = basis.len();
    let d = g.len();
    let q = |x: i128| BigRational::from_integer(BigInt::from(x));
    // Augmented system with one row per ambient coordinate.
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|c| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| q(b[c])).collect();
            row.push(q(g[c]));
            row
        })
        .collect();
    let mut prow = 0;
    let mut pivots = Vec::new();
    for col in 0..r {
        let k = (prow..d).find(|&k| !m[k][col].is_zero())?;
        m.swap(prow, k);
        let inv = BigRational::one() / m[prow][col].clone();
        for x in m[prow].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[prow].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != prow && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(prow);
        prow += 1;
    }
    if m[prow..].iter().any(|row| !row[r].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&k| m[k][r].clone()).collect())
}

/// Searches `r`-subsets of the distinct generators, in lexicographic order,
/// for a `Z`-basis of their span in which every generator has nonnegative
/// integer coordinates.
pub fn positive_basis_search(
    generators: &[(FpfInvolution, Vec<i128>)],
    cap: u64,
) -> Result<PositiveBasis> {
    let mut distinct: BTreeMap<Vec<i128>, FpfInvolution> = BTreeMap::new();
    for (z, v) in generators {
        if v.iter().any(|&x| x != 0) {
            distinct.entry(v.clone()).or_insert_with(|| z.clone());
        }
    }
    let gens: Vec<(Vec<i128>, FpfInvolution)> = distinct.into_iter().collect();
    let Some(dim) = gens.first().map(|g| g.0.len()) else {
        return Ok(PositiveBasis::Found(Vec::new()));
    };
    let vectors: Vec<Vec<i128>> = gens.iter().map(|g| g.0.clone()).collect();
    let lattice = IntLattice::from_i128_rows(dim, &vectors)?;
    let r = lattice.rank();
    let m = gens.len();
    let mut pick: Vec<usize> = (0..r).collect();
    let mut searched = 0u64;
    loop {
        if searched == cap {
            return Ok(PositiveBasis::Inconclusive { searched });
        }
        searched += 1;
        let basis: Vec<Vec<i128>> = pick.iter().map(|&k| vectors[k].clone()).collect();
        if IntLattice::from_i128_rows(dim, &basis)?.span_equal(&lattice)? {
            let positive = vectors.iter().all(|g| {
                coordinates(&basis, g)
                    .is_some_and(|c| c.iter().all(|x| x.is_integer() && !x.is_negative()))
            });
            if positive {
                return Ok(PositiveBasis::Found(
                    pick.iter().map(|&k| gens[k].1.clone()).collect(),
                ));
            }
        }
        // Advance to the next combination.
        let Some(i) = (0..r).rev().find(|&i| pick[i] != i + m - r) else {
            return Ok(PositiveBasis::NoneExists { searched });
        };
        pick[i] += 1;
        for j in i + 1..r {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Per-degree data for the span conjectures.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub truncation: Truncation,
    pub ambient_dim: usize,
    /// Rank of the degree part of `Ω̃^FPF_n`.
    pub rank: usize,
    /// Rank of the degree part of `Ω^FPF_n` (indices in `S_n`).
    pub rank_finite: usize,
    pub generators: usize,
    pub positive_basis: PositiveBasis,
    /// Some `z` of height `degree` failing `ω⁺(F̂_z) = F̂_z`.
    pub omega_plus_witness: Option<FpfInvolution>,
    /// Some `F̂_z` outside the degree part of `Ω̃^FPF_{n+2}`.
    pub not_in_next: Option<FpfInvolution>,
    pub verdict: Verdict,
}

/// All conjecture evidence up to degree `dmax`.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub n: usize,
    pub dmax: u32,
    pub degrees: Vec<DegreeReport>,
    /// Number of `z` checked for `ω⁺`-invariance.
    pub omega_plus_checked: usize,
    pub omega_plus_verdict: Verdict,
    /// Degree and index of the first `F̂_z ∉ Ω̃^FPF_{n+2}`, if any.
    pub non_containment_witness: Option<(u32, FpfInvolution)>,
}

impl ConjectureReport {
    /// The span identity with the non-FPF functions needs those functions,
    /// which this library does not compute.
    pub const SPAN_IDENTITY_STATUS: &'static str =
        "not instrumentable: requires non-FPF involution Stanley functions";
    pub const CAVEAT: &'static str = "evidence, not proof";
}

/// Options bounding `conjecture_reports`.
#[derive(Clone, Copy, Debug)]
pub struct ConjectureOptions {
    pub max_elements: usize,
    pub search_cap: u64,
    /// Also compare against period `n + 2`.
    pub compare_next: bool,
}

impl Default for ConjectureOptions {
    fn default() -> Self {
        Self {
            max_elements: 200_000,
            search_cap: 100_000,
            compare_next: true,
        }
    }
}

pub fn conjecture_reports(
    n: usize,
    dmax: u32,
    opts: ConjectureOptions,
) -> Result<ConjectureReport> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::OddPeriod(n));
    }
    let mut cache = FpfCache::new(n);
    let mut next_cache = FpfCache::new(n + 2);
    let all = both_classes(n, dmax as u64, opts.max_elements)?;
    let next_all = if opts.compare_next {
        both_classes(n + 2, dmax as u64, opts.max_elements)?
    } else {
        Vec::new()
    };
    let mut degrees = Vec::new();
    let mut omega_plus_checked = 0;
    let mut non_containment_witness = None;
    for d in 0..=dmax {
        let index = par_n(n, d);
        let layer: Vec<&FpfInvolution> = all.iter().filter(|z| z.height() == d as u64).collect();
        let mut generators = Vec::new();
        let mut omega_plus_witness = None;
        for z in &layer {
            generators.push(((*z).clone(), vector_on(&mut cache, z, d, &index)?));
            let f = cache.fpf_stanley(z)?;
            omega_plus_checked += 1;
            if omega_plus_witness.is_none() && omega_plus(&f)? != *f {
                omega_plus_witness = Some((*z).clone());
            }
        }
        let rows: Vec<Vec<i128>> = generators.iter().map(|g| g.1.clone()).collect();
        let rows_finite: Vec<Vec<i128>> = generators
            .iter()
            .filter(|g| g.0.is_finite())
            .map(|g| g.1.clone())
            .collect();
        let rank = IntLattice::from_i128_rows(index.len(), &rows)?.rank();
        let rank_finite = IntLattice::from_i128_rows(index.len(), &rows_finite)?.rank();
        let mut not_in_next = None;
        if opts.compare_next {
            let next_index = par_n(n + 2, d);
            let mut next_rows = Vec::new();
            for y in next_all.iter().filter(|y| y.height() == d as u64) {
                next_rows.push(vector_on(&mut next_cache, y, d, &next_index)?);
            }
            let next = IntLattice::from_i128_rows(next_index.len(), &next_rows)?;
            for (z, _) in &generators {
                let f = cache.fpf_stanley(z)?;
                let v: Vec<i128> = next_index.iter().map(|lam| f.coeff(lam)).collect();
                if !next.contains_i128(&v)? {
                    not_in_next = Some(z.clone());
                    break;
                }
            }
            if non_containment_witness.is_none() {
                non_containment_witness = not_in_next.clone().map(|z| (d, z));
            }
        }
        degrees.push(DegreeReport {
            truncation: Truncation {
                n,
                lmax: dmax as u64,
                degree: d,
            },
            ambient_dim: index.len(),
            rank,
            rank_finite,
            generators: generators.len(),
            positive_basis: positive_basis_search(&generators, opts.search_cap)?,
            verdict: if omega_plus_witness.is_some() {
                Verdict::FalsifiedWithWitness
            } else {
                Verdict::Consistent
            },
            omega_plus_witness,
            not_in_next,
        });
    }
    let omega_plus_verdict = if degrees.iter().any(|d| d.omega_plus_witness.is_some()) {
        Verdict::FalsifiedWithWitness
    } else {
        Verdict::Consistent
    };
    Ok(ConjectureReport {
        n,
        dmax,
        degrees,
        omega_plus_checked,
        omega_plus_verdict,
        non_containment_witness,
    })
}
