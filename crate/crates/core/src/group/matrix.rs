use std::collections::HashMap;
use std::sync::Arc;

use super::{closure, max_order, FiniteGroup};
use crate::finite_field::{FieldElem, Gf};
use crate::{Error, Result};

/// A square matrix over a finite field, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub n: usize,
    pub entries: Vec<FieldElem>,
}

impl Matrix {
    pub fn identity(n: usize) -> Matrix {
        let mut entries = vec![FieldElem::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = FieldElem::ONE;
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Result<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Group("matrix is not square".into()));
        }
        Ok(Matrix { n, entries: rows.concat() })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, f: &Gf, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut entries = vec![FieldElem::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let e = &mut entries[i * n + j];
                    *e = f.add(*e, f.mul(a, other.get(k, j)));
                }
            }
        }
        Matrix { n, entries }
    }

    /// `M x` for a column vector `x`.
    pub fn apply(&self, f: &Gf, x: &[FieldElem]) -> Vec<FieldElem> {
        (0..self.n)
            .map(|i| (0..self.n).fold(FieldElem::ZERO, |acc, j| f.add(acc, f.mul(self.get(i, j), x[j]))))
            .collect()
    }

    pub fn rank(&self, f: &Gf) -> usize {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !m[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, piv * n + j);
            }
            let inv = f.inv(m[rank * n + col]).expect("pivot is nonzero");
            for r in 0..n {
                if r == rank || m[r * n + col].is_zero() {
                    continue;
                }
                let c = f.mul(m[r * n + col], inv);
                for j in 0..n {
                    let t = f.mul(c, m[rank * n + j]);
                    m[r * n + j] = f.sub(m[r * n + j], t);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A matrix group with its concrete elements.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub group: FiniteGroup,
    pub field: Arc<Gf>,
    pub matrices: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
}

impl MatrixGroup {
    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Multiplicative closure of invertible matrices over one field.
pub fn group_from_matrices(field: Arc<Gf>, gens: &[Matrix]) -> Result<MatrixGroup> {
    let n = gens.first().map_or(1, |m| m.n);
    for g in gens {
        if g.n != n {
            return Err(Error::Group("generators have different dimensions".into()));
        }
        if g.rank(&field) != n {
            return Err(Error::Group("singular generator".into()));
        }
    }
    let f = field.clone();
    let c = closure(Matrix::identity(n), gens, move |a, b| a.mul(&f, b), max_order())?;
    Ok(MatrixGroup { group: c.group, field, matrices: c.elements, index: c.index })
}
