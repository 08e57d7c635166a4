//! Sparse operators on tensor powers of V = k^n, wedge elements and gl_n matrices.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, frac, parse_scalar, Scalar};

/// Sparse vector in V^{⊗K}, keyed by 1-based basis tuples.
pub type SparseVec<const K: usize> = BTreeMap<[usize; K], Scalar>;

/// Adds `v` at `key`, dropping the entry if it cancels.
pub fn accumulate<T: Ord>(map: &mut BTreeMap<T, Scalar>, key: T, v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// All tuples in `[1, n]^K`, in lexicographic order.
pub fn all_indices<const K: usize>(n: usize) -> Vec<[usize; K]> {
    let total = n.pow(K as u32);
    (0..total)
        .map(|mut c| {
            let mut idx = [0; K];
            for slot in idx.iter_mut().rev() {
                *slot = c % n + 1;
                c /= n;
            }
            idx
        })
        .collect()
}

/// Linear operator on V^{⊗K}, stored column by column.
///
/// `cols[input][output]` is the coefficient of the output basis tensor in the
/// image of the input basis tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOp<const K: usize> {
    n: usize,
    cols: BTreeMap<[usize; K], SparseVec<K>>,
}

pub type SparseOp2 = SparseOp<2>;
pub type SparseOp3 = SparseOp<3>;

impl<const K: usize> SparseOp<K> {
    pub fn zero(n: usize) -> Self {
        SparseOp {
            n,
            cols: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::zero(n);
        for idx in all_indices::<K>(n) {
            op.add_entry(idx, idx, Scalar::one());
        }
        op
    }

    /// Builds an operator from its columns; empty columns are dropped.
    pub fn from_columns(
        n: usize,
        cols: impl IntoIterator<Item = ([usize; K], SparseVec<K>)>,
    ) -> Self {
        let mut op = Self::zero(n);
        for (inp, col) in cols {
            for (out, v) in col {
                op.add_entry(out, inp, v);
            }
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_index(&self, idx: &[usize; K]) {
        assert!(
            idx.iter().all(|&i| (1..=self.n).contains(&i)),
            "index {idx:?} outside [1, {}]",
            self.n
        );
    }

    /// Adds `v` to the coefficient of `out` in the image of `inp`.
    pub fn add_entry(&mut self, out: [usize; K], inp: [usize; K], v: Scalar) {
        self.check_index(&out);
        self.check_index(&inp);
        if v.is_zero() {
            return;
        }
        let col = self.cols.entry(inp).or_default();
        accumulate(col, out, v);
        if col.is_empty() {
            self.cols.remove(&inp);
        }
    }

    pub fn get(&self, out: [usize; K], inp: [usize; K]) -> Scalar {
        self.cols
            .get(&inp)
            .and_then(|c| c.get(&out))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn column(&self, inp: &[usize; K]) -> Option<&SparseVec<K>> {
        self.cols.get(inp)
    }

    pub fn columns(&self) -> impl Iterator<Item = (&[usize; K], &SparseVec<K>)> {
        self.cols.iter()
    }

    /// `(output, input, value)` triples sorted by output then input.
    pub fn entries(&self) -> Vec<([usize; K], [usize; K], Scalar)> {
        let mut out: Vec<_> = self
            .cols
            .iter()
            .flat_map(|(inp, col)| col.iter().map(move |(o, v)| (*o, *inp, v.clone())))
            .collect();
        out.sort_by_key(|a| (a.0, a.1));
        out
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn apply_vec(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = SparseVec::new();
        for (idx, c) in v {
            if let Some(col) = self.cols.get(idx) {
                for (o, w) in col {
                    accumulate(&mut out, *o, c * w);
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let cols = other
            .cols
            .iter()
            .map(|(inp, col)| (*inp, self.apply_vec(col)))
            .collect::<Vec<_>>();
        Ok(Self::from_columns(self.n, cols))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (inp, col) in &other.cols {
            for (o, v) in col {
                out.add_entry(*o, *inp, v.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        let cols = self
            .cols
            .iter()
            .map(|(inp, col)| (*inp, col.iter().map(|(o, v)| (*o, v * s)).collect()))
            .collect();
        SparseOp { n: self.n, cols }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Canonical JSON: `{"n": n, "entries": [[out, in, "p/q"], ...]}`, sorted.
    pub fn to_json_value(&self) -> Value {
        let entries: Vec<Value> = self
            .entries()
            .into_iter()
            .map(|(o, i, v)| json!([o.to_vec(), i.to_vec(), format_scalar(&v)]))
            .collect();
        json!({ "n": self.n, "entries": entries })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field \"n\""))? as usize;
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field \"entries\""))?;
        let mut op = Self::zero(n);
        let read_idx = |x: &Value| -> Result<[usize; K]> {
            let arr = x
                .as_array()
                .filter(|a| a.len() == K)
                .ok_or_else(|| bad("bad index tuple"))?;
            let mut idx = [0; K];
            for (slot, e) in idx.iter_mut().zip(arr) {
                let i = e.as_u64().ok_or_else(|| bad("bad index"))? as usize;
                if !(1..=n).contains(&i) {
                    return Err(Error::IndexOutOfRange(format!("{i} not in [1, {n}]")));
                }
                *slot = i;
            }
            Ok(idx)
        };
        for e in entries {
            let e = e
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| bad("bad entry"))?;
            let out = read_idx(&e[0])?;
            let inp = read_idx(&e[1])?;
            let val = parse_scalar(
                e[2].as_str()
                    .ok_or_else(|| bad("scalar must be a string"))?,
            )?;
            if op.cols.get(&inp).is_some_and(|c| c.contains_key(&out)) {
                return Err(bad("duplicate entry"));
            }
            op.add_entry(out, inp, val);
        }
        Ok(op)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}

impl SparseOp2 {
    /// `P ∘ r ∘ P` with `P(u⊗v) = v⊗u`.
    pub fn swap_conjugate(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (inp, col) in &self.cols {
            for (o, v) in col {
                out.add_entry([o[1], o[0]], [inp[1], inp[0]], v.clone());
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.swap_conjugate() == self.neg()
    }

    /// Builds the operator of `Σ c · e_{ab} ⊗ e_{cd}` from `((a,b),(c,d), c)` terms.
    pub fn from_tensor(
        n: usize,
        terms: impl IntoIterator<Item = ([usize; 2], [usize; 2], Scalar)>,
    ) -> Self {
        let mut op = Self::zero(n);
        for (x, y, v) in terms {
            op.add_entry([x[0], y[0]], [x[1], y[1]], v);
        }
        op
    }

    /// `((a,b),(c,d), c)` with `r = Σ c · e_{ab} ⊗ e_{cd}`.
    pub fn tensor_terms(&self) -> Vec<([usize; 2], [usize; 2], Scalar)> {
        let mut out: Vec<_> = self
            .cols
            .iter()
            .flat_map(|(i, col)| {
                col.iter()
                    .map(move |(o, v)| ([o[0], i[0]], [o[1], i[1]], v.clone()))
            })
            .collect();
        out.sort_by_key(|a| (a.0, a.1));
        out
    }

    /// Contractions of the first leg with the coordinate functionals e_{ab}^*.
    pub fn first_leg_slices(&self) -> BTreeMap<[usize; 2], MatrixN> {
        let mut out: BTreeMap<[usize; 2], MatrixN> = BTreeMap::new();
        for (x, y, v) in self.tensor_terms() {
            out.entry(x)
                .or_insert_with(|| MatrixN::zero(self.n))
                .add_entry(y[0], y[1], v);
        }
        out.retain(|_, m| !m.is_zero());
        out
    }

    pub fn second_leg_slices(&self) -> BTreeMap<[usize; 2], MatrixN> {
        self.swap_conjugate().first_leg_slices()
    }

    /// `X⊗1 + 1⊗X`.
    pub fn leg_sum(x: &MatrixN) -> Self {
        let n = x.n();
        let mut op = Self::zero(n);
        for ((a, b), v) in x.entries() {
            for c in 1..=n {
                op.add_entry([*a, c], [*b, c], v.clone());
                op.add_entry([c, *a], [c, *b], v.clone());
            }
        }
        op
    }

    /// `g⊗g` for a matrix `g`.
    pub fn tensor_square(g: &MatrixN) -> Self {
        let n = g.n();
        let mut op = Self::zero(n);
        for ((a, b), v) in g.entries() {
            for ((c, d), w) in g.entries() {
                op.add_entry([*a, *c], [*b, *d], v * w);
            }
        }
        op
    }

    /// Adjoint action of `X ∈ gl_n` on the two legs.
    pub fn ad_action(&self, x: &MatrixN) -> Result<Self> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch(x.n(), self.n));
        }
        Self::leg_sum(x).commutator(self)
    }
}

/// Element of gl_n with sparse 1-based entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixN {
    n: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl MatrixN {
    pub fn zero(n: usize) -> Self {
        MatrixN {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 1..=n {
            m.add_entry(i, i, Scalar::one());
        }
        m
    }

    /// Elementary matrix e_{ij}.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.add_entry(i, j, Scalar::one());
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "entry ({i},{j}) outside [1, {}]",
            self.n
        );
        accumulate(&mut self.entries, (i, j), v);
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trace(&self) -> Scalar {
        (1..=self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut m = Self::zero(self.n);
        for ((i, j), v) in &self.entries {
            m.add_entry(*i, *j, v * s);
        }
        m
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Row-major coordinates in the basis e_{11}, e_{12}, ..., e_{nn}.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.n * self.n];
        for ((i, j), x) in &self.entries {
            v[(i - 1) * self.n + (j - 1)] = x.clone();
        }
        v
    }

    pub fn from_coords(n: usize, coords: &[Scalar]) -> Self {
        assert_eq!(coords.len(), n * n);
        let mut m = Self::zero(n);
        for (k, x) in coords.iter().enumerate() {
            m.add_entry(k / n + 1, k % n + 1, x.clone());
        }
        m
    }

    /// The automorphism `e_{jl} ↦ −e_{n+1−l, n+1−j}`.
    pub fn phi(&self) -> Self {
        let n = self.n;
        let mut m = Self::zero(n);
        for ((j, l), v) in &self.entries {
            m.add_entry(n + 1 - l, n + 1 - j, -v.clone());
        }
        m
    }
}

impl Add for &MatrixN {
    type Output = MatrixN;
    fn add(self, rhs: &MatrixN) -> MatrixN {
        assert_eq!(self.n, rhs.n);
        let mut m = self.clone();
        for ((i, j), v) in &rhs.entries {
            m.add_entry(*i, *j, v.clone());
        }
        m
    }
}

impl Sub for &MatrixN {
    type Output = MatrixN;
    fn sub(self, rhs: &MatrixN) -> MatrixN {
        self + &(-rhs)
    }
}

impl Neg for &MatrixN {
    type Output = MatrixN;
    fn neg(self) -> MatrixN {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &MatrixN {
    type Output = MatrixN;
    fn mul(self, rhs: &MatrixN) -> MatrixN {
        assert_eq!(self.n, rhs.n);
        let mut rows: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for ((k, j), v) in &rhs.entries {
            rows.entry(*k).or_default().push((*j, v));
        }
        let mut m = MatrixN::zero(self.n);
        for ((i, k), v) in &self.entries {
            if let Some(row) = rows.get(k) {
                for (j, w) in row {
                    m.add_entry(*i, *j, v * *w);
                }
            }
        }
        m
    }
}

/// Element of gl_n ∧ gl_n as `Σ c · e_{ab} ∧ e_{cd}` with `a∧b = ½(a⊗b − b⊗a)`.
///
/// Pairs are stored with the first factor lexicographically smaller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeElement {
    n: usize,
    terms: BTreeMap<([usize; 2], [usize; 2]), Scalar>,
}

impl WedgeElement {
    pub fn zero(n: usize) -> Self {
        WedgeElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `v · e_x ∧ e_y`.
    pub fn add_term(&mut self, x: [usize; 2], y: [usize; 2], v: Scalar) {
        for i in x.iter().chain(y.iter()) {
            assert!(
                (1..=self.n).contains(i),
                "index {i} outside [1, {}]",
                self.n
            );
        }
        if x == y {
            return;
        }
        if x < y {
            accumulate(&mut self.terms, (x, y), v);
        } else {
            accumulate(&mut self.terms, (y, x), -v);
        }
    }

    /// `X ∧ Y`, expanded bilinearly.
    pub fn of_matrices(x: &MatrixN, y: &MatrixN) -> Self {
        assert_eq!(x.n(), y.n());
        let mut w = Self::zero(x.n());
        for ((a, b), v) in x.entries() {
            for ((c, d), u) in y.entries() {
                w.add_term([*a, *b], [*c, *d], v * u);
            }
        }
        w
    }

    pub fn terms(&self) -> impl Iterator<Item = (&([usize; 2], [usize; 2]), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: [usize; 2], y: [usize; 2]) -> Scalar {
        if x <= y {
            self.terms
                .get(&(x, y))
                .cloned()
                .unwrap_or_else(Scalar::zero)
        } else {
            -self
                .terms
                .get(&(y, x))
                .cloned()
                .unwrap_or_else(Scalar::zero)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut w = self.clone();
        for ((x, y), v) in &other.terms {
            w.add_term(*x, *y, v.clone());
        }
        w
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut w = Self::zero(self.n);
        for ((x, y), v) in &self.terms {
            w.add_term(*x, *y, v * s);
        }
        w
    }

    /// The operator of `½(a⊗b − b⊗a)` summed over terms.
    pub fn to_op(&self) -> SparseOp2 {
        let half = frac(1, 2);
        let mut op = SparseOp2::zero(self.n);
        for (([a, b], [c, d]), v) in &self.terms {
            let h = v * &half;
            op.add_entry([*a, *c], [*b, *d], h.clone());
            op.add_entry([*c, *a], [*d, *b], -h);
        }
        op
    }

    /// `(φ⊗φ)` applied to every term.
    pub fn phi_twist(&self) -> Self {
        let n = self.n;
        let mut w = Self::zero(n);
        // signs of the two factors cancel
        for (([a, b], [c, d]), v) in &self.terms {
            w.add_term([n + 1 - b, n + 1 - a], [n + 1 - d, n + 1 - c], v.clone());
        }
        w
    }
}

pub fn wedge_to_op(w: &WedgeElement) -> SparseOp2 {
    w.to_op()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn wedge_e12_e21() {
        let mut w = WedgeElement::zero(2);
        w.add_term([1, 2], [2, 1], int(1));
        let op = w.to_op();
        assert_eq!(op.get([1, 2], [2, 1]), frac(1, 2));
        assert_eq!(op.get([2, 1], [1, 2]), frac(-1, 2));
        assert_eq!(op.nnz(), 2);
        assert_eq!(op.swap_conjugate(), op.neg());
    }

    #[test]
    fn trivial_wedges_vanish() {
        assert!(WedgeElement::zero(3).to_op().is_zero());
        let mut w = WedgeElement::zero(3);
        w.add_term([1, 1], [1, 1], int(5));
        assert!(w.to_op().is_zero());
    }

    #[test]
    fn canonical_order_flips_sign() {
        let mut a = WedgeElement::zero(3);
        a.add_term([2, 3], [1, 2], int(1));
        let mut b = WedgeElement::zero(3);
        b.add_term([1, 2], [2, 3], int(-1));
        assert_eq!(a, b);
        assert_eq!(a.coefficient([2, 3], [1, 2]), int(1));
    }

    #[test]
    fn compose_and_scale_basics() {
        let mut w = WedgeElement::zero(3);
        w.add_term([1, 2], [3, 1], int(2));
        w.add_term([2, 2], [3, 3], frac(1, 3));
        let r = w.to_op();
        let id = SparseOp2::identity(3);
        assert_eq!(id.compose(&r).unwrap(), r);
        assert!(r.commutator(&r).unwrap().is_zero());
        assert_eq!(r.scale(&frac(1, 2)).scale(&int(2)), r);
        assert!(r.compose(&SparseOp2::zero(4)).is_err());
    }

    #[test]
    fn identity_is_swap_invariant() {
        let id = SparseOp2::identity(3);
        assert_eq!(id.swap_conjugate(), id);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut w = WedgeElement::zero(3);
        w.add_term([1, 2], [3, 2], int(2));
        w.add_term([1, 1], [2, 2], frac(1, 3));
        let op = w.to_op();
        let s = op.to_json();
        let back = SparseOp2::from_json(&s).unwrap();
        assert_eq!(back, op);
        assert_eq!(back.to_json(), s);
        assert!(SparseOp2::from_json(r#"{"n":2,"entries":[[[1,3],[1,1],"1"]]}"#).is_err());
    }

    #[test]
    fn tensor_view_matches_wedge() {
        let x = MatrixN::unit(3, 1, 2);
        let y = MatrixN::unit(3, 3, 1);
        let w = WedgeElement::of_matrices(&x, &y);
        let terms = w.to_op().tensor_terms();
        assert!(terms.contains(&([1, 2], [3, 1], frac(1, 2))));
        assert!(terms.contains(&([3, 1], [1, 2], frac(-1, 2))));
    }

    #[test]
    fn matrix_arithmetic() {
        let a = MatrixN::unit(3, 1, 2);
        let b = MatrixN::unit(3, 2, 3);
        assert_eq!(&a * &b, MatrixN::unit(3, 1, 3));
        assert!((&b * &a).is_zero());
        assert_eq!(a.commutator(&b), MatrixN::unit(3, 1, 3));
        assert_eq!(MatrixN::from_coords(3, &a.to_coords()), a);
        assert_eq!(a.phi(), MatrixN::unit(3, 2, 3).scale(&int(-1)));
        assert_eq!(a.phi().phi(), a);
    }
}
