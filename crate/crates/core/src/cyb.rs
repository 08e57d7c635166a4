//! Classical Yang-Baxter machinery: leg embeddings, Z, ⟨⟨a, b⟩⟩ and CYB_λ.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};
use crate::tensor::{accumulate, all_indices, SparseOp2, SparseOp3, SparseVec};

/// Anything acting on a pair of tensor legs through its action on basis pairs.
pub trait TwoLegOperator: Sync {
    type Basis: Copy + Ord + Send + Sync + Debug;

    /// Image of `e_a ⊗ e_b` as `(pair, coefficient)` terms.
    fn apply_pair(&self, a: Self::Basis, b: Self::Basis)
        -> Result<Vec<([Self::Basis; 2], Scalar)>>;
}

impl TwoLegOperator for SparseOp2 {
    type Basis = usize;

    fn apply_pair(&self, a: usize, b: usize) -> Result<Vec<([usize; 2], Scalar)>> {
        Ok(self
            .column(&[a, b])
            .map(|c| c.iter().map(|(k, v)| (*k, v.clone())).collect())
            .unwrap_or_default())
    }
}

/// Which two of the three tensor legs an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Legs {
    L12,
    L13,
    L23,
}

impl Legs {
    fn positions(self) -> (usize, usize) {
        match self {
            Legs::L12 => (0, 1),
            Legs::L13 => (0, 2),
            Legs::L23 => (1, 2),
        }
    }
}

type Vec3<B> = BTreeMap<[B; 3], Scalar>;

/// Applies `op` on the given legs of a vector in V^{⊗3}.
pub fn leg_apply<T: TwoLegOperator>(
    op: &T,
    legs: Legs,
    v: &Vec3<T::Basis>,
) -> Result<Vec3<T::Basis>> {
    let (p, q) = legs.positions();
    let mut out = BTreeMap::new();
    for (idx, c) in v {
        for (pair, w) in op.apply_pair(idx[p], idx[q])? {
            let mut k = *idx;
            k[p] = pair[0];
            k[q] = pair[1];
            accumulate(&mut out, k, c * &w);
        }
    }
    Ok(out)
}

const BRACKET_PAIRS: [(Legs, Legs); 3] = [
    (Legs::L12, Legs::L13),
    (Legs::L12, Legs::L23),
    (Legs::L13, Legs::L23),
];

/// Column `idx` of ⟨⟨a, b⟩⟩ = [a12, b13] + [a12, b23] + [a13, b23].
pub fn double_bracket_column<T: TwoLegOperator>(
    a: &T,
    b: &T,
    idx: [T::Basis; 3],
) -> Result<Vec3<T::Basis>> {
    let base: Vec3<T::Basis> = BTreeMap::from([(idx, Scalar::one())]);
    let mut out = BTreeMap::new();
    for (la, lb) in BRACKET_PAIRS {
        for (k, v) in leg_apply(a, la, &leg_apply(b, lb, &base)?)? {
            accumulate(&mut out, k, v);
        }
        for (k, v) in leg_apply(b, lb, &leg_apply(a, la, &base)?)? {
            accumulate(&mut out, k, -v);
        }
    }
    Ok(out)
}

/// Column of Z: u⊗v⊗w ↦ w⊗u⊗v − v⊗w⊗u.
pub fn z_column<B: Copy + Ord>(idx: [B; 3]) -> BTreeMap<[B; 3], Scalar> {
    let [u, v, w] = idx;
    let mut out = BTreeMap::new();
    accumulate(&mut out, [w, u, v], Scalar::one());
    accumulate(&mut out, [v, w, u], -Scalar::one());
    out
}

/// Column `idx` of CYB_λ(op).
pub fn cyb_column<T: TwoLegOperator>(
    op: &T,
    lambda: &Scalar,
    idx: [T::Basis; 3],
) -> Result<Vec3<T::Basis>> {
    let mut out = double_bracket_column(op, op, idx)?;
    for (k, v) in z_column(idx) {
        accumulate(&mut out, k, -(lambda * v));
    }
    Ok(out)
}

/// Number of the given columns on which CYB_λ(op) does not vanish.
pub fn cyb_failures<T: TwoLegOperator>(
    op: &T,
    lambda: &Scalar,
    columns: &[[T::Basis; 3]],
) -> Result<usize> {
    columns
        .par_iter()
        .map(|idx| cyb_column(op, lambda, *idx).map(|c| usize::from(!c.is_empty())))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// `r` acting on the named legs, identity on the third.
pub fn embed(r: &SparseOp2, legs: Legs) -> SparseOp3 {
    let n = r.n();
    let (p, q) = legs.positions();
    let mut out = SparseOp3::zero(n);
    for idx in all_indices::<3>(n) {
        if let Some(col) = r.column(&[idx[p], idx[q]]) {
            for (pair, v) in col {
                let mut o = idx;
                o[p] = pair[0];
                o[q] = pair[1];
                out.add_entry(o, idx, v.clone());
            }
        }
    }
    out
}

pub fn z_op(n: usize) -> SparseOp3 {
    SparseOp3::from_columns(
        n,
        all_indices::<3>(n)
            .into_iter()
            .map(|idx| (idx, z_column(idx))),
    )
}

fn assemble<F>(n: usize, f: F) -> Result<SparseOp3>
where
    F: Fn([usize; 3]) -> Result<SparseVec<3>> + Sync,
{
    let cols = all_indices::<3>(n)
        .into_par_iter()
        .map(|idx| f(idx).map(|c| (idx, c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseOp3::from_columns(n, cols))
}

/// ⟨⟨a, b⟩⟩ as an operator on V^{⊗3}, assembled column by column.
pub fn double_bracket(a: &SparseOp2, b: &SparseOp2) -> Result<SparseOp3> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    assemble(a.n(), |idx| double_bracket_column(a, b, idx))
}

pub fn cyb_lambda(r: &SparseOp2, lambda: &Scalar) -> Result<SparseOp3> {
    assemble(r.n(), |idx| cyb_column(r, lambda, idx))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Triangular,
    Quasitriangular,
    NotRMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CybReport {
    pub lambda: Option<Scalar>,
    pub residual_nonzero_count: usize,
    pub classification: Classification,
}

impl CybReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "classification": self.classification,
            "lambda": self.lambda.as_ref().map(format_scalar),
            "residual_nonzero_count": self.residual_nonzero_count,
        })
    }
}

/// Finds λ with CYB_λ(r) = 0, if any.
///
/// λ is read off the first nonzero entry of Z and then checked everywhere.
pub fn find_lambda(r: &SparseOp2) -> Result<CybReport> {
    let b = double_bracket(r, r)?;
    if b.is_zero() {
        return Ok(CybReport {
            lambda: Some(Scalar::zero()),
            residual_nonzero_count: 0,
            classification: Classification::Triangular,
        });
    }
    let z = z_op(r.n());
    let Some((out, inp, zv)) = z.entries().into_iter().next() else {
        return Ok(CybReport {
            lambda: None,
            residual_nonzero_count: b.nnz(),
            classification: Classification::NotRMatrix,
        });
    };
    let lambda = b.get(out, inp) / zv;
    let residual = b.sub(&z.scale(&lambda))?;
    Ok(if residual.is_zero() {
        CybReport {
            lambda: Some(lambda),
            residual_nonzero_count: 0,
            classification: Classification::Quasitriangular,
        }
    } else {
        CybReport {
            lambda: None,
            residual_nonzero_count: residual.nnz(),
            classification: Classification::NotRMatrix,
        }
    })
}
