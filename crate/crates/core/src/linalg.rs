//! Exact dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::tensor::MatrixN;

pub type DenseMatrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form with zero rows removed.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub rows: DenseMatrix,
    pub pivots: Vec<usize>,
}

pub fn row_reduce(mut rows: DenseMatrix, ncols: usize) -> RowEchelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    RowEchelon { rows, pivots }
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    row_reduce(rows.to_vec(), ncols).pivots.len()
}

pub fn identity(d: usize) -> DenseMatrix {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<Scalar>]) -> DenseMatrix {
    let ncols = a.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn matmul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> DenseMatrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![Scalar::zero(); m];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// Exact inverse of a square matrix, or `None` when singular.
pub fn inverse(a: &[Vec<Scalar>]) -> Option<DenseMatrix> {
    let d = a.len();
    let aug: DenseMatrix = a
        .iter()
        .zip(identity(d))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let ech = row_reduce(aug, 2 * d);
    if ech.pivots.len() < d || ech.pivots[d - 1] >= d {
        return None;
    }
    Some(ech.rows.into_iter().map(|r| r[d..].to_vec()).collect())
}

/// Solution set `{particular + span(kernel)}` of `A x = b`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: DenseMatrix,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }
}

/// Solves `A x = b` exactly; `None` if inconsistent. Free variables are set to zero
/// in the particular solution.
pub fn solve_affine(a: &[Vec<Scalar>], b: &[Scalar], nvars: usize) -> Option<AffineSolution> {
    let aug: DenseMatrix = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(y.clone()))
                .collect()
        })
        .collect();
    let ech = row_reduce(aug, nvars + 1);
    if ech.pivots.last() == Some(&nvars) {
        return None;
    }
    let mut particular = vec![Scalar::zero(); nvars];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        particular[p] = row[nvars].clone();
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !ech.pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); nvars];
            v[f] = Scalar::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

/// Row-reduced basis of the span of the given matrices.
pub fn span_basis(mats: &[MatrixN]) -> Vec<MatrixN> {
    let Some(n) = mats.first().map(MatrixN::n) else {
        return Vec::new();
    };
    let rows = mats.iter().map(MatrixN::to_coords).collect();
    row_reduce(rows, n * n)
        .rows
        .iter()
        .map(|r| MatrixN::from_coords(n, r))
        .collect()
}
