//! FPF atoms, the atom order and the FPF-involution Stanley function.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use super::involution::{FpfInvolution, Sign};
use crate::affine::AffinePerm;
use crate::error::{Error, Result};
use crate::symfunc::{MonomialExpansion, StanleyExpander};

/// Memoized atoms and FPF Stanley functions for one period `n`.
pub struct FpfCache {
    n: usize,
    atoms: HashMap<FpfInvolution, Rc<Vec<AffinePerm>>>,
    stanley: HashMap<FpfInvolution, Rc<MonomialExpansion>>,
    expander: StanleyExpander,
}

impl FpfCache {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            atoms: HashMap::new(),
            stanley: HashMap::new(),
            expander: StanleyExpander::new(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, z: &FpfInvolution) -> Result<()> {
        if z.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: z.n(),
            });
        }
        Ok(())
    }

    /// `A(z)` by the descent recursion, sorted.
    pub fn atoms(&mut self, z: &FpfInvolution) -> Result<Rc<Vec<AffinePerm>>> {
        self.check(z)?;
        if let Some(a) = self.atoms.get(z) {
            return Ok(Rc::clone(a));
        }
        let result = if z.is_theta() {
            vec![AffinePerm::identity(self.n)]
        } else {
            let mut set = BTreeSet::new();
            for i in 1..=self.n as i64 {
                if z.conj_height_delta(i) != -1 {
                    continue;
                }
                let y = z.conjugate_simple(i);
                for v in self.atoms(&y)?.iter() {
                    let mut w = v.clone();
                    w.right_mul_simple(i);
                    if w.length() == v.length() + 1 {
                        set.insert(w);
                    }
                }
            }
            set.into_iter().collect()
        };
        let rc = Rc::new(result);
        self.atoms.insert(z.clone(), Rc::clone(&rc));
        Ok(rc)
    }

    /// `F̂_z = Σ_{π ∈ A(z)} F_π`.
    pub fn fpf_stanley(&mut self, z: &FpfInvolution) -> Result<Rc<MonomialExpansion>> {
        self.check(z)?;
        if let Some(e) = self.stanley.get(z) {
            return Ok(Rc::clone(e));
        }
        let atoms = self.atoms(z)?;
        let degree = u32::try_from(z.height()).map_err(|_| Error::Overflow("degree"))?;
        let mut total = MonomialExpansion::zero(self.n, degree);
        for a in atoms.iter() {
            total.add_scaled(&self.expander.expand(a)?, 1)?;
        }
        let rc = Rc::new(total);
        self.stanley.insert(z.clone(), Rc::clone(&rc));
        Ok(rc)
    }

    /// `F_π` through the shared expander.
    pub fn stanley(&mut self, a: &AffinePerm) -> Result<MonomialExpansion> {
        self.expander.expand(a)
    }
}

/// `A(z)` with a fresh cache.
pub fn atoms(z: &FpfInvolution) -> Result<Vec<AffinePerm>> {
    Ok(FpfCache::new(z.n()).atoms(z)?.as_ref().clone())
}

/// `F̂_z` with a fresh cache.
pub fn fpf_stanley(z: &FpfInvolution) -> Result<MonomialExpansion> {
    Ok(FpfCache::new(z.n()).fpf_stanley(z)?.as_ref().clone())
}

/// Which window positions the `≺` move may start at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alignment {
    /// Positions whose first two entries form a cycle of `z`.
    Paired,
    /// Every position, keeping only results that are atoms.
    AllCyclic,
}

/// The `≺` successors of the atom `w` of `z`: `u = w⁻¹` has consecutive
/// values `a, d, b, c` with `a < b < c < d`, replaced by `b, c, a, d`.
pub fn prec_successors(z: &FpfInvolution, w: &AffinePerm, alignment: Alignment) -> Vec<AffinePerm> {
    let n = z.n();
    if n < 4 {
        return Vec::new();
    }
    let u = w.inverse();
    let mut out = BTreeSet::new();
    for p in 1..=n as i64 {
        let (a, d, b, c) = (u.apply(p), u.apply(p + 1), u.apply(p + 2), u.apply(p + 3));
        if !(a < b && b < c && c < d) {
            continue;
        }
        if alignment == Alignment::Paired && (z.apply(a) != d || z.apply(b) != c) {
            continue;
        }
        let mut values: Vec<i64> = (p..p + n as i64).map(|q| u.apply(q)).collect();
        values[..4].copy_from_slice(&[b, c, a, d]);
        let Ok(u2) = AffinePerm::from_shifted_window(n, &values) else {
            continue;
        };
        let w2 = u2.inverse();
        if w2.length() == z.height() && z.is_conjugated_by(&w2) {
            out.insert(w2);
        }
    }
    out.into_iter().collect()
}

/// The atoms of `z` with the generating `≺` relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomPoset {
    /// Sorted atoms.
    pub atoms: Vec<AffinePerm>,
    /// `(i, j)` with `atoms[i] ≺ atoms[j]` a generating move.
    pub moves: Vec<(usize, usize)>,
}

impl AtomPoset {
    /// Closure of `≺` from `α_min(z)`.
    pub fn by_closure(z: &FpfInvolution, alignment: Alignment) -> Self {
        let start = z.alpha_min();
        let mut seen = BTreeSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        let mut raw = Vec::new();
        while let Some(w) = queue.pop_front() {
            for v in prec_successors(z, &w, alignment) {
                raw.push((w.clone(), v.clone()));
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        let atoms: Vec<AffinePerm> = seen.into_iter().collect();
        let index = |x: &AffinePerm| atoms.binary_search(x).expect("closure element");
        let mut moves: Vec<(usize, usize)> =
            raw.iter().map(|(a, b)| (index(a), index(b))).collect();
        moves.sort_unstable();
        moves.dedup();
        Self { atoms, moves }
    }

    /// Reflexive-transitive closure as a boolean matrix `leq[i][j]`.
    pub fn order(&self) -> Vec<Vec<bool>> {
        let k = self.atoms.len();
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &self.moves {
            leq[a][b] = true;
        }
        for m in 0..k {
            for i in 0..k {
                if leq[i][m] {
                    let row = leq[m].clone();
                    for (x, &y) in leq[i].iter_mut().zip(&row) {
                        *x |= y;
                    }
                }
            }
        }
        leq
    }

    /// Indices of elements below everything and above everything, if unique.
    pub fn bounds(&self) -> (Option<usize>, Option<usize>) {
        let leq = self.order();
        let k = self.atoms.len();
        let min = (0..k).find(|&i| (0..k).all(|j| leq[i][j]));
        let max = (0..k).find(|&i| (0..k).all(|j| leq[j][i]));
        (min, max)
    }

    /// First pair lacking a meet or a join, if any.
    pub fn lattice_violation(&self) -> Option<(usize, usize)> {
        let leq = self.order();
        let k = self.atoms.len();
        let extremal = |cands: Vec<usize>, above: bool| -> bool {
            cands.iter().any(|&m| {
                cands
                    .iter()
                    .all(|&c| if above { leq[m][c] } else { leq[c][m] })
            })
        };
        for x in 0..k {
            for y in x + 1..k {
                let lower: Vec<usize> = (0..k).filter(|&c| leq[c][x] && leq[c][y]).collect();
                let upper: Vec<usize> = (0..k).filter(|&c| leq[x][c] && leq[y][c]).collect();
                if !extremal(lower, false) || !extremal(upper, true) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Whether `≤` is antisymmetric on the atoms.
    pub fn is_antisymmetric(&self) -> bool {
        let leq = self.order();
        (0..self.atoms.len()).all(|i| (0..i).all(|j| !(leq[i][j] && leq[j][i])))
    }
}

/// The atom poset of `z` under paired `≺` moves.
pub fn atom_poset(z: &FpfInvolution) -> AtomPoset {
    AtomPoset::by_closure(z, Alignment::Paired)
}

/// Every element of a sign class with height at most `max_height`, by
/// breadth-first search from `Θ`, sorted by height then window.
pub fn involutions_up_to(
    n: usize,
    sign: Sign,
    max_height: u64,
    max_elements: usize,
) -> Result<Vec<FpfInvolution>> {
    let theta = FpfInvolution::theta(n, sign)?;
    let mut seen = BTreeSet::new();
    seen.insert(theta.clone());
    let mut layer = vec![theta];
    for _ in 0..max_height {
        let mut next = Vec::new();
        for z in &layer {
            for i in 1..=n as i64 {
                if z.conj_height_delta(i) == 1 {
                    let y = z.conjugate_simple(i);
                    if seen.insert(y.clone()) {
                        if seen.len() > max_elements {
                            return Err(Error::ResourceCap {
                                what: "universe elements",
                                cap: max_elements,
                            });
                        }
                        next.push(y);
                    }
                }
            }
        }
        layer = next;
    }
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort_by(|a, b| (a.height(), a.window()).cmp(&(b.height(), b.window())));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::Partition;

    fn z(s: &str) -> FpfInvolution {
        s.parse().unwrap()
    }

    fn w(s: &str) -> AffinePerm {
        s.parse().unwrap()
    }

    /// All `w` of length `ℓ̂(z)` with `w⁻¹Θw = z`, by exhaustive search of the
    /// length ball.
    fn brute_atoms(zz: &FpfInvolution) -> Vec<AffinePerm> {
        let n = zz.n();
        let mut layer = BTreeSet::from([AffinePerm::identity(n)]);
        for _ in 0..zz.height() {
            let mut next = BTreeSet::new();
            for x in &layer {
                for i in 1..=n as i64 {
                    let mut y = x.clone();
                    y.right_mul_simple(i);
                    if y.length() == x.length() + 1 {
                        next.insert(y);
                    }
                }
            }
            layer = next;
        }
        layer
            .into_iter()
            .filter(|x| zz.is_conjugated_by(x))
            .collect()
    }

    #[test]
    fn example_atoms() {
        let y = z("[6,-3,8,-1]");
        assert_eq!(atoms(&y).unwrap(), vec![w("[3,0,5,2]")]);
        let e = fpf_stanley(&y).unwrap();
        assert_eq!(e.coeff(&"(1,1,1,1)".parse().unwrap()), 4);
        assert_eq!(e.coeff(&"(2,1,1)".parse().unwrap()), 2);
        assert_eq!(e.coeff(&"(2,2)".parse().unwrap()), 1);
        assert_eq!(e.len(), 3);
        let p = atom_poset(&y);
        assert_eq!(p.atoms.len(), 1);
        assert!(p.moves.is_empty());
    }

    #[test]
    fn reversal_has_a_two_chain() {
        let y = z("[4,3,2,1]");
        let a = atoms(&y).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.iter().all(|x| x.length() == 2));
        assert_eq!(a, brute_atoms(&y));
        let p = atom_poset(&y);
        assert_eq!(p.moves.len(), 1);
        let (lo, hi) = p.bounds();
        assert_eq!(p.atoms[lo.unwrap()], y.alpha_min());
        assert_eq!(p.atoms[hi.unwrap()], y.alpha_max());
    }

    #[test]
    fn theta_atoms() {
        for s in Sign::both() {
            let t = FpfInvolution::theta(4, s).unwrap();
            assert_eq!(atoms(&t).unwrap(), vec![AffinePerm::identity(4)]);
            assert_eq!(
                fpf_stanley(&t).unwrap(),
                MonomialExpansion::monomial(4, Partition::empty()).unwrap()
            );
        }
    }

    #[test]
    fn n2_single_atoms() {
        for s in Sign::both() {
            for y in involutions_up_to(2, s, 6, usize::MAX).unwrap() {
                assert_eq!(atoms(&y).unwrap().len(), 1);
                let k = y.height() as usize;
                assert_eq!(
                    fpf_stanley(&y).unwrap(),
                    MonomialExpansion::monomial(2, Partition::rectangle(1, k)).unwrap()
                );
            }
        }
    }

    #[test]
    fn recursion_matches_brute_force_and_closure() {
        for (n, h) in [(4usize, 3u64), (6, 2)] {
            let mut cache = FpfCache::new(n);
            for s in Sign::both() {
                for y in involutions_up_to(n, s, h, usize::MAX).unwrap() {
                    let rec = cache.atoms(&y).unwrap();
                    assert_eq!(*rec, brute_atoms(&y), "{y}");
                    assert!(rec.contains(&y.alpha_min()) && rec.contains(&y.alpha_max()));
                    let paired = AtomPoset::by_closure(&y, Alignment::Paired);
                    let all = AtomPoset::by_closure(&y, Alignment::AllCyclic);
                    assert_eq!(paired.atoms, *rec, "{y}");
                    assert_eq!(paired, all, "{y}");
                    assert_eq!(rec.len() == 1, y.is_321_avoiding(), "{y}");
                }
            }
        }
    }
}
