//! Canonical bases, W-graphs, cells and molecules over a bounded universe.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;

use super::laurent::LaurentPoly;
use super::module::{first_descent, BarOperator, ModuleElement, Variant};
use crate::error::{Error, Result};
use crate::fpf::FpfInvolution;
use crate::order::Universe;

/// The canonical basis `{M̲_z}` or `{N̲_z}` restricted to a universe.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    variant: Variant,
    elements: Vec<FpfInvolution>,
    index: HashMap<FpfInvolution, usize>,
    basis: Vec<ModuleElement>,
    lmax: u64,
}

impl CanonicalBasis {
    /// Builds `C_z` for every `z` by increasing height: start from
    /// `(H_s + v⁻¹) C_{szs}` for a descent `s` and subtract bar-invariant
    /// multiples of lower `C_w` until every lower coefficient lies in
    /// `v⁻¹Z[v⁻¹]`.
    pub fn build(u: &Universe, variant: Variant) -> Result<Self> {
        let elements = u.elements().to_vec();
        let index: HashMap<_, _> = elements
            .iter()
            .enumerate()
            .map(|(k, z)| (z.clone(), k))
            .collect();
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&k| elements[k].height());
        let mut basis: Vec<Option<ModuleElement>> = vec![None; elements.len()];
        let v_inv = LaurentPoly::monomial(1, -1);
        for k in order {
            let z = &elements[k];
            let Some(s) = first_descent(z) else {
                basis[k] = Some(ModuleElement::basis(variant, z));
                continue;
            };
            let y = z.conjugate_simple(s);
            let cy = index
                .get(&y)
                .and_then(|&j| basis[j].as_ref())
                .ok_or_else(|| Error::NotInUniverse(y.perm().to_string()))?;
            let mut x = cy.act(s);
            x.add_scaled(cy, &v_inv);
            let mut rounds = 0usize;
            loop {
                let bad = x
                    .terms()
                    .filter(|(w, p)| *w != z && !p.in_v_inv_z_v_inv())
                    .max_by(|a, b| a.0.height().cmp(&b.0.height()).then_with(|| a.0.cmp(b.0)))
                    .map(|(w, p)| (w.clone(), p.symmetrized_nonnegative_part()));
                let Some((w, c)) = bad else { break };
                rounds += 1;
                if rounds > elements.len() {
                    return Err(Error::Internal(format!(
                        "canonical basis correction for {} does not terminate",
                        z.perm()
                    )));
                }
                let cw = index
                    .get(&w)
                    .and_then(|&j| basis[j].as_ref())
                    .ok_or_else(|| Error::NotInUniverse(w.perm().to_string()))?;
                x.add_scaled(cw, &(-&c));
            }
            if x.coeff(z) != LaurentPoly::one() {
                return Err(Error::Internal(format!(
                    "canonical basis element for {} is not unitriangular",
                    z.perm()
                )));
            }
            basis[k] = Some(x);
        }
        Ok(Self {
            variant,
            elements,
            index,
            basis: basis.into_iter().map(|b| b.expect("all built")).collect(),
            lmax: u.lmax(),
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
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

    pub fn lmax(&self) -> u64 {
        self.lmax
    }

    pub fn index_of(&self, z: &FpfInvolution) -> Result<usize> {
        self.index
            .get(z)
            .copied()
            .ok_or_else(|| Error::NotInUniverse(z.perm().to_string()))
    }

    /// `C_z` for the element at index `k`.
    pub fn element(&self, k: usize) -> &ModuleElement {
        &self.basis[k]
    }

    /// `m_{x,y}` (or `n_{x,y}`), the coefficient of the `x` basis vector in `C_y`.
    pub fn poly(&self, x: usize, y: usize) -> LaurentPoly {
        self.basis[y].coeff(&self.elements[x])
    }

    /// The coefficient of `v⁻¹` in `poly(x, y)`.
    pub fn mu(&self, x: usize, y: usize) -> i64 {
        self.poly(x, y).coeff(-1)
    }

    /// Indices whose element fails to be bar-fixed, unitriangular, or
    /// supported on the lower ideal.
    pub fn verify(&self, u: &Universe) -> Result<Vec<usize>> {
        let mut bar = BarOperator::new(self.variant);
        let mut bad = Vec::new();
        for (k, c) in self.basis.iter().enumerate() {
            let z = &self.elements[k];
            let mut ok = bar.bar(c) == *c && c.coeff(z) == LaurentPoly::one();
            for (w, p) in c.terms() {
                if w != z {
                    ok &= p.in_v_inv_z_v_inv() && u.leq_elements(w, z)?;
                }
            }
            if !ok {
                bad.push(k);
            }
        }
        Ok(bad)
    }

    /// Expresses `e` in the canonical basis, peeling the leading term.
    pub fn expand(&self, e: &ModuleElement) -> Result<BTreeMap<usize, LaurentPoly>> {
        let mut rest = e.clone();
        let mut out = BTreeMap::new();
        while let Some((w, p)) = rest.leading_term() {
            let k = self.index_of(w)?;
            let p = p.clone();
            rest.add_scaled(&self.basis[k], &(-&p));
            out.insert(k, p);
        }
        Ok(out)
    }

    /// `τ_m(x) = {s : sxs ≤_F x}` or `τ_n(x) = {s : x ≤_F sxs}`.
    pub fn tau(&self, k: usize) -> BTreeSet<i64> {
        let z = &self.elements[k];
        (1..=z.n() as i64)
            .filter(|&s| {
                let d = z.conj_height_delta(s);
                match self.variant {
                    Variant::M => d <= 0,
                    Variant::N => d >= 0,
                }
            })
            .collect()
    }

    /// The W-graph on the universe.
    pub fn w_graph(&self) -> WGraph {
        let m = self.elements.len();
        let tau: Vec<BTreeSet<i64>> = (0..m).map(|k| self.tau(k)).collect();
        let mut mu = BTreeMap::new();
        for y in 0..m {
            for (w, p) in self.basis[y].terms() {
                let x = self.index[w];
                if x != y && p.coeff(-1) != 0 {
                    mu.insert((x, y), p.coeff(-1));
                }
            }
        }
        let mut omega = BTreeMap::new();
        for &(x, y) in mu.keys() {
            for (a, b) in [(x, y), (y, x)] {
                if !tau[a].is_subset(&tau[b]) {
                    let w = mu.get(&(a, b)).copied().unwrap_or(0)
                        + mu.get(&(b, a)).copied().unwrap_or(0);
                    if w != 0 {
                        omega.insert((a, b), w);
                    }
                }
            }
        }
        let truncated = self.elements.iter().any(|z| {
            z.height() == self.lmax && (1..=z.n() as i64).any(|s| z.conj_height_delta(s) > 0)
        });
        WGraph {
            variant: self.variant,
            vertices: self.elements.clone(),
            tau,
            mu,
            omega,
            truncated,
        }
    }
}

/// The labeled graph `(V, ω, τ)` restricted to a universe.
#[derive(Clone, Debug)]
pub struct WGraph {
    pub variant: Variant,
    pub vertices: Vec<FpfInvolution>,
    pub tau: Vec<BTreeSet<i64>>,
    /// Nonzero `μ(x, y)` for `x ≠ y`.
    pub mu: BTreeMap<(usize, usize), i64>,
    /// Nonzero `ω(x, y)`.
    pub omega: BTreeMap<(usize, usize), i64>,
    /// Set when some vertex has neighbours above the height cap.
    pub truncated: bool,
}

/// How `τ` and `ω` are read when testing the W-graph action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    Literal,
    TauComplemented,
    OmegaTransposed,
    Both,
}

impl Convention {
    pub fn all() -> [Convention; 4] {
        [
            Convention::Literal,
            Convention::TauComplemented,
            Convention::OmegaTransposed,
            Convention::Both,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Literal => "literal",
            Convention::TauComplemented => "tau-complemented",
            Convention::OmegaTransposed => "omega-transposed",
            Convention::Both => "tau-complemented+omega-transposed",
        }
    }
}

/// Outcome of comparing the W-graph action with the true action on `C_x`.
#[derive(Clone, Debug)]
pub struct ConventionReport {
    pub convention: Convention,
    pub checks: usize,
    /// First failing `(x, s)`.
    pub counterexample: Option<(usize, i64)>,
}

impl WGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Strongly connected components of the nonzero-`ω` graph, each sorted,
    /// listed by smallest member.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<usize, ()>::new();
        let nodes: Vec<_> = (0..self.len()).map(|k| g.add_node(k)).collect();
        for &(x, y) in self.omega.keys() {
            g.add_edge(nodes[x], nodes[y], ());
        }
        let mut out: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|n| g[n]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        out.sort();
        out
    }

    /// Connected components under edges present in both directions.
    pub fn molecules(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.len());
        for &(x, y) in self.omega.keys() {
            if self.omega.contains_key(&(y, x)) {
                uf.union(x, y);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..self.len() {
            groups.entry(uf.find(k)).or_default().push(k);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Compares the displayed W-graph action with `H_s C_x` for every `x`
    /// below the height cap, so that all terms of `H_s C_x` stay inside the
    /// universe.
    pub fn convention_report(
        &self,
        cb: &CanonicalBasis,
        convention: Convention,
    ) -> Result<ConventionReport> {
        let complement = matches!(convention, Convention::TauComplemented | Convention::Both);
        let transpose = matches!(convention, Convention::OmegaTransposed | Convention::Both);
        let in_tau = |k: usize, s: i64| self.tau[k].contains(&s) != complement;
        let weight = |x: usize, y: usize| {
            let key = if transpose { (y, x) } else { (x, y) };
            self.omega.get(&key).copied().unwrap_or(0)
        };
        let mut checks = 0;
        for x in 0..self.len() {
            if self.vertices[x].height() >= cb.lmax() {
                continue;
            }
            let n = self.vertices[x].n() as i64;
            for s in 1..=n {
                checks += 1;
                let actual = cb.expand(&cb.element(x).act(s))?;
                let mut predicted: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
                if !in_tau(x, s) {
                    predicted.insert(x, LaurentPoly::monomial(1, 1));
                } else {
                    predicted.insert(x, LaurentPoly::monomial(-1, -1));
                    for y in 0..self.len() {
                        let w = weight(x, y);
                        if y != x && w != 0 && !in_tau(y, s) {
                            predicted.insert(y, LaurentPoly::monomial(w, 0));
                        }
                    }
                }
                if actual != predicted {
                    return Ok(ConventionReport {
                        convention,
                        checks,
                        counterexample: Some((x, s)),
                    });
                }
            }
        }
        Ok(ConventionReport {
            convention,
            checks,
            counterexample: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpf::Sign;

    #[test]
    fn height_one_elements() {
        let u = Universe::build(4, Sign::Plus, 2, 10_000).unwrap();
        for variant in Variant::both() {
            let cb = CanonicalBasis::build(&u, variant).unwrap();
            let theta = FpfInvolution::theta(4, Sign::Plus).unwrap();
            let t = cb.index_of(&theta).unwrap();
            assert_eq!(*cb.element(t), ModuleElement::basis(variant, &theta));
            for k in 0..cb.len() {
                if cb.elements()[k].height() == 1 {
                    let mut expected = ModuleElement::basis(variant, &cb.elements()[k]);
                    expected.add_scaled(
                        &ModuleElement::basis(variant, &theta),
                        &LaurentPoly::monomial(1, -1),
                    );
                    assert_eq!(*cb.element(k), expected);
                }
            }
        }
    }

    #[test]
    fn bar_fixed_and_unitriangular() {
        for sign in Sign::both() {
            let u = Universe::build(4, sign, 3, 10_000).unwrap();
            for variant in Variant::both() {
                let cb = CanonicalBasis::build(&u, variant).unwrap();
                assert!(cb.verify(&u).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn n2_cells() {
        let mut m_cells = 0;
        for sign in Sign::both() {
            let u = Universe::build(2, sign, 6, 1000).unwrap();
            let all: Vec<usize> = (0..u.len()).collect();
            let gm = CanonicalBasis::build(&u, Variant::M).unwrap().w_graph();
            assert!(gm.truncated);
            assert_eq!(gm.cells(), vec![all.clone()]);
            assert_eq!(gm.molecules(), vec![all.clone()]);
            m_cells += gm.cells().len();
            let gn = CanonicalBasis::build(&u, Variant::N).unwrap().w_graph();
            assert_eq!(gn.cells(), vec![vec![0], all[1..].to_vec()]);
        }
        assert_eq!(m_cells, 2);
    }

    #[test]
    fn action_conventions() {
        for (n, lmax) in [(2usize, 6u64), (4, 3)] {
            for sign in Sign::both() {
                let u = Universe::build(n, sign, lmax, 10_000).unwrap();
                for (variant, good) in [
                    (Variant::M, Convention::Both),
                    (Variant::N, Convention::Literal),
                ] {
                    let cb = CanonicalBasis::build(&u, variant).unwrap();
                    let g = cb.w_graph();
                    let passes = |c| {
                        g.convention_report(&cb, c)
                            .unwrap()
                            .counterexample
                            .is_none()
                    };
                    assert!(passes(good), "{n} {sign} {variant}");
                    assert_eq!(passes(Convention::Literal), variant == Variant::N);
                }
            }
        }
    }

    #[test]
    fn singleton_universe() {
        let u = Universe::build(4, Sign::Minus, 0, 10).unwrap();
        let g = CanonicalBasis::build(&u, Variant::M).unwrap().w_graph();
        assert_eq!(g.cells(), vec![vec![0]]);
        assert_eq!(g.molecules(), vec![vec![0]]);
    }
}
