//! Exact linear algebra over ℚ(i).
//!
//! Matrices are stored as sparse rows. Elimination is Gauss–Jordan with every
//! pivot scaled to one, so the reduced form of a row space is unique.

use std::collections::BTreeMap;

use num::{One, Zero};
use thiserror::Error;

use crate::scalar::GaussianRational as Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// Sorted `(column, value)` pairs with no zero values.
pub type SparseVec = Vec<(usize, Q)>;

pub fn sparse_from_dense(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_from_map(m: BTreeMap<usize, Q>) -> SparseVec {
    m.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a − c·b`
fn axpy(a: &SparseVec, c: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(v: &SparseVec, c: &Q) -> SparseVec {
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

fn entry(v: &SparseVec, col: usize) -> Option<&Q> {
    v.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &v[k].1)
}

/// Row-echelon basis built one vector at a time.
///
/// Each stored row has leading entry 1 at its pivot column and zeros before it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after elimination by the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        let mut k = 0;
        while k < cur.len() {
            let (col, coeff) = (cur[k].0, cur[k].1.clone());
            if let Some(&r) = self.pivots.get(&col) {
                cur = axpy(&cur, &coeff, &self.rows[r]);
                // entries before `col` are untouched, and `col` itself vanished
            } else {
                k += 1;
            }
        }
        cur
    }

    /// Adds `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let residual = self.reduce(v);
        let Some((pivot, lead)) = residual.first().cloned() else {
            return false;
        };
        let row = scale(&residual, &lead.inv().expect("nonzero lead"));
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Fully reduced rows sorted by pivot column.
    pub fn into_reduced(self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = self
            .pivots
            .values()
            .map(|&r| self.rows[r].clone())
            .collect();
        let pivots: Vec<usize> = self.pivots.keys().copied().collect();
        for i in (0..rows.len()).rev() {
            let (done, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in done.iter_mut() {
                if let Some(c) = entry(row, pivots[i]).cloned() {
                    *row = axpy(row, &c, pivot_row);
                }
            }
        }
        rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Q::one())]).collect(),
        }
    }

    pub fn from_dense(rows: Vec<Vec<Q>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| sparse_from_dense(r)).collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn from_sparse_rows(cols: usize, data: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for row in &data {
            if row.iter().any(|(c, _)| *c >= cols) {
                return Err(LinalgError::DimensionMismatch(format!(
                    "column index beyond {cols}"
                )));
            }
            if row.windows(2).any(|w| w[0].0 >= w[1].0) || row.iter().any(|(_, x)| x.is_zero()) {
                return Err(LinalgError::DimensionMismatch(
                    "row is not a normalized sparse vector".into(),
                ));
            }
        }
        Ok(ExactMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        entry(&self.data[i], j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nonzeros(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.nonzeros() as f64 / (self.rows * self.cols) as f64
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        self.data
            .iter()
            .map(|r| dense_from_sparse(r, self.cols))
            .collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                data[*j].push((i, x.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[Q]) -> Result<Vec<Q>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Q::zero(), |acc, (j, a)| &acc + &(a * &x[*j]))
            })
            .collect())
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new();
        for row in &self.data {
            ech.insert(row);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Reduced row echelon form (zero rows dropped) and rank.
    pub fn rref(&self) -> (ExactMatrix, usize) {
        let rows = self.echelon().into_reduced();
        let rank = rows.len();
        (
            ExactMatrix {
                rows: rank,
                cols: self.cols,
                data: rows,
            },
            rank,
        )
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, _) = self.rref();
        let pivots: Vec<usize> = r.data.iter().map(|row| row[0].0).collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Q::zero(); self.cols];
                x[f] = Q::one();
                for (row, &p) in r.data.iter().zip(&pivots) {
                    if let Some(v) = entry(row, f) {
                        x[p] = -v;
                    }
                }
                x
            })
            .collect()
    }

    /// One solution of `M x = b` with free variables zero.
    pub fn solve(&self, b: &[Q]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented: Vec<SparseVec> = self
            .data
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                if !bi.is_zero() {
                    r.push((self.cols, bi.clone()));
                }
                r
            })
            .collect();
        let mut ech = Echelon::new();
        for row in &augmented {
            ech.insert(row);
        }
        let reduced = ech.into_reduced();
        let mut x = vec![Q::zero(); self.cols];
        for row in &reduced {
            let pivot = row[0].0;
            if pivot == self.cols {
                return Ok(Solution::Inconsistent {
                    witness: row.clone(),
                });
            }
            if let Some(v) = entry(row, self.cols) {
                x[pivot] = v.clone();
            }
        }
        Ok(Solution::Found(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Found(Vec<Q>),
    /// A row of the reduced augmented system reading `0 = 1`.
    Inconsistent {
        witness: SparseVec,
    },
}

/// A subspace of `Q(i)^n` held by its reduced basis, so equal subspaces have
/// identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| vec![(i, Q::one())]).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Result<Self, LinalgError> {
        let mut ech = Echelon::new();
        for v in vectors {
            if v.iter().any(|(c, _)| *c >= ambient) {
                return Err(LinalgError::DimensionMismatch(format!(
                    "vector outside ambient dimension {ambient}"
                )));
            }
            ech.insert(v);
        }
        Ok(Subspace {
            ambient,
            basis: ech.into_reduced(),
        })
    }

    pub fn span_dense(ambient: usize, vectors: &[Vec<Q>]) -> Result<Self, LinalgError> {
        let sparse: Vec<SparseVec> = vectors.iter().map(|v| sparse_from_dense(v)).collect();
        Self::span(ambient, &sparse)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.basis.len(),
            cols: self.ambient,
            data: self.basis.clone(),
        }
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(LinalgError::AmbientMismatch(self.ambient, other.ambient))
        }
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new();
        for v in &self.basis {
            ech.insert(v);
        }
        ech
    }

    pub fn contains_vector(&self, v: &SparseVec) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        let ech = self.echelon();
        Ok(other.basis.iter().all(|v| ech.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let all: Vec<SparseVec> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient, &all)
    }

    /// Zassenhaus: reduce the rows `(u | u)` and `(v | 0)`; the rows whose
    /// left half vanishes carry a basis of `U ∩ V` in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let n = self.ambient;
        let mut ech = Echelon::new();
        for u in &self.basis {
            let mut row = u.clone();
            row.extend(u.iter().map(|(c, x)| (c + n, x.clone())));
            ech.insert(&row);
        }
        for v in &other.basis {
            ech.insert(v);
        }
        let meet: Vec<SparseVec> = ech
            .into_reduced()
            .into_iter()
            .filter(|row| row[0].0 >= n)
            .map(|row| row.into_iter().map(|(c, x)| (c - n, x)).collect())
            .collect();
        Subspace::span(n, &meet)
    }
}
