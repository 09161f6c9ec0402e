//! Integer lattices in row Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A sublattice of `Z^dim` stored by its row Hermite normal form: pivots move
/// strictly right, pivots are positive, and entries above a pivot lie in
/// `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

fn pivot_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn sub_scaled(target: &mut [BigInt], row: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, r) in target.iter_mut().zip(row) {
        *t -= q * r;
    }
}

impl IntLattice {
    /// The HNF of the row span of `rows`.
    pub fn hnf(dim: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        let mut m: Vec<Vec<BigInt>> = rows
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let mut r = 0;
        for col in 0..dim {
            if r == m.len() {
                break;
            }
            loop {
                let best = (r..m.len())
                    .filter(|&k| !m[k][col].is_zero())
                    .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
                let Some(best) = best else { break };
                m.swap(r, best);
                let pivot_row = m[r].clone();
                let mut done = true;
                for row in m.iter_mut().skip(r + 1) {
                    if row[col].is_zero() {
                        continue;
                    }
                    let q = row[col].div_floor(&pivot_row[col]);
                    sub_scaled(row, &pivot_row, &q);
                    done &= row[col].is_zero();
                }
                if done {
                    break;
                }
            }
            if m[r][col].is_zero() {
                continue;
            }
            if m[r][col].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = m[r].clone();
            for row in m.iter_mut().take(r) {
                let q = row[col].div_floor(&pivot_row[col]);
                sub_scaled(row, &pivot_row, &q);
            }
            r += 1;
        }
        m.truncate(r);
        m.retain(|row| row.iter().any(|x| !x.is_zero()));
        Ok(Self { dim, rows: m })
    }

    /// The HNF of integer rows given as `i128`.
    pub fn from_i128_rows(dim: usize, rows: &[Vec<i128>]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::hnf(dim, &rows)
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Membership by triangular divisibility against the pivots.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut rest = v.to_vec();
        for row in &self.rows {
            let c = pivot_col(row).expect("HNF rows are nonzero");
            let (q, rem) = rest[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return Ok(false);
            }
            sub_scaled(&mut rest, row, &q);
        }
        Ok(rest.iter().all(Zero::is_zero))
    }

    pub fn contains_i128(&self, v: &[i128]) -> Result<bool> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&v)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &IntLattice) -> Result<bool> {
        for row in &other.rows {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of spans, which for HNF is equality of bases.
    pub fn span_equal(&self, other: &IntLattice) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(self.rows == other.rows)
    }
}
