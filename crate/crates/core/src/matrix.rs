//! Dense exact matrices tagged with their source and target bases.

use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{serde_scalar_matrix, Scalar};

/// Column `j` holds the image of `source[j]` expanded in `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorMatrix<K> {
    pub source_basis: Vec<K>,
    pub target_basis: Vec<K>,
    #[serde(with = "serde_scalar_matrix")]
    pub entries: Vec<Vec<Scalar>>,
}

impl<K: Clone + Ord + std::fmt::Debug> OperatorMatrix<K> {
    pub fn zeros(source: Vec<K>, target: Vec<K>) -> Self {
        let entries = vec![vec![Scalar::zero(); source.len()]; target.len()];
        OperatorMatrix { source_basis: source, target_basis: target, entries }
    }

    pub fn identity(basis: Vec<K>) -> Self {
        let mut m = Self::zeros(basis.clone(), basis);
        for i in 0..m.entries.len() {
            m.entries[i][i] = crate::scalars::one();
        }
        m
    }

    /// Builds the matrix from sparse column images.
    pub fn from_columns<F>(source: &[K], target: &[K], mut image: F) -> Result<Self>
    where
        F: FnMut(&K) -> Result<BTreeMap<K, Scalar>>,
    {
        let index: BTreeMap<&K, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = Self::zeros(source.to_vec(), target.to_vec());
        for (j, k) in source.iter().enumerate() {
            for (t, c) in image(k)? {
                if c.is_zero() {
                    continue;
                }
                let i = *index
                    .get(&t)
                    .ok_or_else(|| Error::BoxOverflow(format!("{t:?}")))?;
                m.entries[i][j] = c;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.target_basis.len()
    }

    pub fn cols(&self) -> usize {
        self.source_basis.len()
    }

    pub fn get(&self, target: &K, source: &K) -> Option<&Scalar> {
        let i = self.target_basis.iter().position(|k| k == target)?;
        let j = self.source_basis.iter().position(|k| k == source)?;
        Some(&self.entries[i][j])
    }

    /// Sparse image of the `j`-th source vector.
    pub fn column(&self, j: usize) -> BTreeMap<K, Scalar> {
        let mut out = BTreeMap::new();
        for (i, row) in self.entries.iter().enumerate() {
            if !row[j].is_zero() {
                out.insert(self.target_basis[i].clone(), row[j].clone());
            }
        }
        out
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &OperatorMatrix<K>) -> Result<Self> {
        if self.source_basis != rhs.target_basis {
            return Err(Error::BasisMismatch("composition of incompatible operators".into()));
        }
        let mut out = Self::zeros(rhs.source_basis.clone(), self.target_basis.clone());
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols() {
                    let b = &rhs.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &OperatorMatrix<K>) -> Result<Self> {
        self.combine(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &OperatorMatrix<K>) -> Result<Self> {
        self.combine(rhs, |a, b| a - b)
    }

    fn combine(&self, rhs: &OperatorMatrix<K>, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        if self.source_basis != rhs.source_basis || self.target_basis != rhs.target_basis {
            return Err(Error::BasisMismatch("sum of operators on different bases".into()));
        }
        let mut out = self.clone();
        for (ra, rb) in out.entries.iter_mut().zip(&rhs.entries) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a = f(a, b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for a in row.iter_mut() {
                *a = &*a * c;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|a| a.is_zero()))
    }

    /// First nonzero entry as `(target, source, value)`.
    pub fn first_nonzero(&self) -> Option<(K, K, Scalar)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    return Some((self.target_basis[i].clone(), self.source_basis[j].clone(), a.clone()));
                }
            }
        }
        None
    }

    pub fn rank(&self) -> usize {
        rref(self.entries.clone()).1.len()
    }

    pub fn map_keys<L: Clone + Ord + std::fmt::Debug>(&self, f: impl Fn(&K) -> L) -> OperatorMatrix<L> {
        OperatorMatrix {
            source_basis: self.source_basis.iter().map(&f).collect(),
            target_basis: self.target_basis.iter().map(&f).collect(),
            entries: self.entries.clone(),
        }
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = crate::scalars::one() / &rows[r][c];
        for a in rows[r].iter_mut() {
            *a = &*a * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (a, b) in row.iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Rank of the set of vectors.
pub fn rank(rows: Vec<Vec<Scalar>>) -> usize {
    rref(rows).1.len()
}
