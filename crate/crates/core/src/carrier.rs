//! Carriers of triangular r-matrices, the map ř and its inverse, cocycle and
//! Frobenius-functional checks, parabolic subalgebras, nilpotent orbit actions
//! and the Jordanian boundary family.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cg::cg_closed_form;
use crate::error::{Error, Result};
use crate::linalg::{
    inverse, rank, row_reduce, solve_affine, span_basis, transpose, AffineSolution, DenseMatrix,
};
use crate::poly::h_j;
use crate::scalar::{frac, int, Scalar};
use crate::tensor::{accumulate, MatrixN, SparseOp2};

/// Coordinates with respect to a fixed basis, read off a set of pivot positions.
#[derive(Clone, Debug)]
struct Frame {
    positions: Vec<usize>,
    /// (S^T)^{-1} with S[i][k] = B_i[positions[k]].
    inv_t: DenseMatrix,
}

impl Frame {
    fn new(basis: &[MatrixN]) -> Option<Self> {
        let Some(first) = basis.first() else {
            return Some(Frame {
                positions: Vec::new(),
                inv_t: Vec::new(),
            });
        };
        let n2 = first.n() * first.n();
        let rows: DenseMatrix = basis.iter().map(MatrixN::to_coords).collect();
        let ech = row_reduce(rows.clone(), n2);
        if ech.pivots.len() != basis.len() {
            return None;
        }
        let sub: DenseMatrix = rows
            .iter()
            .map(|r| ech.pivots.iter().map(|&p| r[p].clone()).collect())
            .collect();
        let inv_t = inverse(&transpose(&sub))?;
        Some(Frame {
            positions: ech.pivots,
            inv_t,
        })
    }

    fn raw_coords(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.inv_t
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.positions)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, &p)| a * &x[p])
                    .sum()
            })
            .collect()
    }
}

/// A subalgebra of gl_n given by an exact basis.
#[derive(Clone, Debug)]
pub struct LieSubalgebra {
    n: usize,
    basis: Vec<MatrixN>,
    frame: Frame,
}

impl PartialEq for LieSubalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_span(other)
    }
}

impl LieSubalgebra {
    /// Subspace spanned by `mats`, with the reduced echelon basis.
    pub fn from_span(n: usize, mats: &[MatrixN]) -> Self {
        Self::from_basis(n, span_basis(mats)).expect("echelon basis is independent")
    }

    /// Keeps `basis` as given; it must be linearly independent.
    pub fn from_basis(n: usize, basis: Vec<MatrixN>) -> Result<Self> {
        if let Some(b) = basis.iter().find(|b| b.n() != n) {
            return Err(Error::DimensionMismatch(b.n(), n));
        }
        let frame = Frame::new(&basis)
            .ok_or_else(|| Error::InvalidParameters("basis is linearly dependent".into()))?;
        Ok(LieSubalgebra { n, basis, frame })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatrixN] {
        &self.basis
    }

    /// Coordinates of `x` in the basis, or None if `x` is outside the span.
    pub fn coords(&self, x: &MatrixN) -> Option<Vec<Scalar>> {
        let c = self.frame.raw_coords(&x.to_coords());
        (self.combine(&c) == *x).then_some(c)
    }

    pub fn combine(&self, c: &[Scalar]) -> MatrixN {
        let mut out = MatrixN::zero(self.n);
        for (b, k) in self.basis.iter().zip(c) {
            if !k.is_zero() {
                out = &out + &b.scale(k);
            }
        }
        out
    }

    pub fn contains(&self, x: &MatrixN) -> bool {
        self.coords(x).is_some()
    }

    pub fn is_closed(&self) -> bool {
        let d = self.dim();
        (0..d)
            .into_par_iter()
            .all(|i| (i + 1..d).all(|j| self.contains(&self.basis[i].commutator(&self.basis[j]))))
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.n == other.n
            && self.dim() == other.dim()
            && other.basis.iter().all(|b| self.contains(b))
    }

    /// c^k_{ij} with [B_i, B_j] = Σ_k c^k_{ij} B_k, as sparse rows.
    pub fn structure_constants(&self) -> Result<Vec<Vec<BTreeMap<usize, Scalar>>>> {
        let d = self.dim();
        (0..d)
            .into_par_iter()
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let c = self
                            .coords(&self.basis[i].commutator(&self.basis[j]))
                            .ok_or(Error::NotLieSubalgebra)?;
                        Ok(c.into_iter()
                            .enumerate()
                            .filter(|(_, v)| !v.is_zero())
                            .collect())
                    })
                    .collect()
            })
            .collect()
    }
}

/// p_{m,n} = span{e_jl : j ≤ m or l > m} ∩ sl_n.
pub fn parabolic(m: usize, n: usize) -> Result<LieSubalgebra> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let mut basis = Vec::new();
    for j in 1..=n {
        for l in 1..=n {
            if j != l && (j <= m || l > m) {
                basis.push(MatrixN::unit(n, j, l));
            }
        }
    }
    for i in 1..n {
        basis.push(&MatrixN::unit(n, i, i) - &MatrixN::unit(n, i + 1, i + 1));
    }
    LieSubalgebra::from_basis(n, basis)
}

/// Span of the first-leg contractions of an antisymmetric `r`.
pub fn carrier(r: &SparseOp2) -> Result<LieSubalgebra> {
    if !r.is_antisymmetric() {
        return Err(Error::InvalidParameters("r is not antisymmetric".into()));
    }
    let slices: Vec<MatrixN> = r.first_leg_slices().into_values().collect();
    if slices.iter().any(|s| !s.trace().is_zero()) {
        return Err(Error::InvalidParameters(
            "carrier slice with nonzero trace".into(),
        ));
    }
    let f = LieSubalgebra::from_span(r.n(), &slices);
    if !f.is_closed() {
        return Err(Error::NotLieSubalgebra);
    }
    Ok(f)
}

/// ř: B_i* ↦ Σ_j C_ij B_j and the form F = C^{-1}, F(B_i, B_j) = ⟨ř⁻¹B_i, B_j⟩.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub subalgebra: LieSubalgebra,
    pub r_check_matrix: DenseMatrix,
    pub form: DenseMatrix,
    pub skew: bool,
    pub cocycle: bool,
}

/// ř and ř⁻¹ of `r` on `f`, in the dual of `f`'s basis.
pub fn r_check(r: &SparseOp2, f: &LieSubalgebra) -> Result<FrobeniusData> {
    if r.n() != f.n() {
        return Err(Error::DimensionMismatch(r.n(), f.n()));
    }
    let d = f.dim();
    let n = f.n();
    let pos = &f.frame.positions;
    let flat = |x: [usize; 2]| (x[0] - 1) * n + (x[1] - 1);
    let mut terms: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (x, y, v) in r.tensor_terms() {
        terms.insert((flat(x), flat(y)), v);
    }
    let rsub: DenseMatrix = pos
        .iter()
        .map(|&p| {
            pos.iter()
                .map(|&q| terms.get(&(p, q)).cloned().unwrap_or_else(Scalar::zero))
                .collect()
        })
        .collect();
    let inv_t = &f.frame.inv_t;
    let c = crate::linalg::matmul(&crate::linalg::matmul(inv_t, &rsub), &transpose(inv_t));
    let mut rebuilt = SparseOp2::zero(n);
    for (i, row) in c.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for ((a, b), x) in f.basis[i].entries() {
                for ((p, q), y) in f.basis[j].entries() {
                    rebuilt.add_entry([*a, *p], [*b, *q], v * x * y);
                }
            }
        }
    }
    if rebuilt != *r {
        return Err(Error::NotInSubalgebra);
    }
    let form = if d == 0 {
        Vec::new()
    } else {
        inverse(&c).ok_or(Error::SingularRCheck)?
    };
    let skew = (0..d).all(|i| (0..d).all(|j| form[i][j] == -form[j][i].clone()));
    let cocycle = cocycle_holds(f, &form)?;
    Ok(FrobeniusData {
        subalgebra: f.clone(),
        r_check_matrix: c,
        form,
        skew,
        cocycle,
    })
}

/// F([X,Y],Z) + F([Z,X],Y) + F([Y,Z],X) = 0 on all basis triples.
fn cocycle_holds(f: &LieSubalgebra, form: &DenseMatrix) -> Result<bool> {
    let d = f.dim();
    let sc = f.structure_constants()?;
    // g[i][j][k] = F([B_i, B_j], B_k)
    let g: Vec<Vec<Vec<Scalar>>> = sc
        .par_iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    (0..d)
                        .map(|k| c.iter().map(|(a, v)| v * &form[*a][k]).sum())
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok((0..d).into_par_iter().all(|i| {
        (0..d).all(|j| (0..d).all(|k| (&g[i][j][k] + &g[k][i][j] + &g[j][k][i]).is_zero()))
    }))
}

/// Linear functional on gl_n, η(X) = Σ c_jl X_jl.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Functional {
    pub coeffs: BTreeMap<(usize, usize), Scalar>,
}

impl Functional {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add(&mut self, j: usize, l: usize, c: Scalar) {
        accumulate(&mut self.coeffs, (j, l), c);
    }

    pub fn eval(&self, x: &MatrixN) -> Scalar {
        self.coeffs
            .iter()
            .map(|((j, l), c)| c * x.get(*j, *l))
            .sum()
    }

    /// The functional taking the values `vals` on `f`'s basis, supported on its pivot positions.
    pub fn from_dual(f: &LieSubalgebra, vals: &[Scalar]) -> Self {
        let n = f.n();
        let mut eta = Functional::zero();
        for (k, &p) in f.frame.positions.iter().enumerate() {
            let c: Scalar = f
                .frame
                .inv_t
                .iter()
                .zip(vals)
                .map(|(row, v)| &row[k] * v)
                .sum();
            eta.add(p / n + 1, p % n + 1, c);
        }
        eta
    }
}

/// η([B_i, B_j]) = F(B_i, B_j) for all basis pairs, and (X, Y) ↦ η([X, Y]) nondegenerate.
pub fn frobenius_functional_check(data: &FrobeniusData, eta: &Functional) -> bool {
    let b = data.subalgebra.basis();
    let d = b.len();
    let gram: DenseMatrix = (0..d)
        .into_par_iter()
        .map(|i| (0..d).map(|j| eta.eval(&b[i].commutator(&b[j]))).collect())
        .collect();
    gram == data.form && rank(&gram) == d
}

/// All η ∈ f* with η([B_i, B_j]) = F(B_i, B_j), as values on the basis.
pub fn solve_frobenius_functional(data: &FrobeniusData) -> Result<Option<AffineSolution>> {
    let sc = data.subalgebra.structure_constants()?;
    let d = data.subalgebra.dim();
    let mut a = Vec::with_capacity(d * d);
    let mut rhs = Vec::with_capacity(d * d);
    for (sc_row, form_row) in sc.iter().zip(&data.form) {
        for (c, f) in sc_row.iter().zip(form_row) {
            let mut row = vec![Scalar::zero(); d];
            for (k, v) in c {
                row[*k] = v.clone();
            }
            a.push(row);
            rhs.push(f.clone());
        }
    }
    Ok(solve_affine(&a, &rhs, d))
}

fn check_nonzero(u: &Scalar, t: &Scalar) -> Result<()> {
    if u.is_zero() || t.is_zero() {
        return Err(Error::InvalidParameters("u and t must be nonzero".into()));
    }
    Ok(())
}

/// u⁻¹(e13* + e24* + ... + e*_{n−2,n}) − t e*_{n,n−1} + 2(e_{n−1,n−1} − e_{nn})*.
///
/// The last term is dual to e_{n−1,n−1} − e_{nn} under the trace form, X ↦ X_{n−1,n−1} − X_{nn}.
pub fn gg_displayed_functional(n: usize, u: &Scalar, t: &Scalar) -> Result<Functional> {
    check_nonzero(u, t)?;
    let mut eta = Functional::zero();
    for j in 1..=n - 2 {
        eta.add(j, j + 2, Scalar::one() / u);
    }
    eta.add(n, n - 1, -t.clone());
    eta.add(n - 1, n - 1, int(1));
    eta.add(n, n, int(-1));
    Ok(eta)
}

/// A functional that does pass the check for b_CG(u, t):
/// u⁻¹ Σ e*_{j,j+2} + t e*_{n−1,n} − t⁻¹ e*_{n,n−1} + 2(e_{n−1,n−1} − e_{nn})*.
/// Unique up to the character Σ_{i ≤ n−2} e*_{ii}.
pub fn gg_corrected_functional(n: usize, u: &Scalar, t: &Scalar) -> Result<Functional> {
    check_nonzero(u, t)?;
    let mut eta = Functional::zero();
    for j in 1..=n - 2 {
        eta.add(j, j + 2, Scalar::one() / u);
    }
    eta.add(n - 1, n, t.clone());
    eta.add(n, n - 1, -(Scalar::one() / t));
    eta.add(n - 1, n - 1, int(1));
    eta.add(n, n, int(-1));
    Ok(eta)
}

/// Off-diagonal e_jl in p_{n−2,n}, followed by h_1, ..., h_{n−1}.
pub fn gg_basis(n: usize) -> Result<LieSubalgebra> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("need n >= 3, got {n}")));
    }
    let m = n - 2;
    let mut basis = Vec::new();
    for j in 1..=n {
        for l in 1..=n {
            if j != l && (j <= m || l > m) {
                basis.push(MatrixN::unit(n, j, l));
            }
        }
    }
    basis.extend((1..n).map(|j| h_j(n, j)));
    LieSubalgebra::from_basis(n, basis)
}

fn exp_nilpotent(x: &MatrixN, s: &Scalar) -> MatrixN {
    let n = x.n();
    let mut out = MatrixN::identity(n);
    let mut term = MatrixN::identity(n);
    for k in 1..n {
        term = (&term * x).scale(&(s / int(k as i64)));
        out = &out + &term;
    }
    out
}

fn require_nilpotent(x: &MatrixN) -> Result<()> {
    if !x.pow(x.n() as u32).is_zero() {
        return Err(Error::NotNilpotent);
    }
    Ok(())
}

/// exp(sX).r = (g⊗g) r (g⊗g)⁻¹ with g = exp(sX).
pub fn nilpotent_exp_action(x: &MatrixN, s: &Scalar, r: &SparseOp2) -> Result<SparseOp2> {
    require_nilpotent(x)?;
    if x.n() != r.n() {
        return Err(Error::DimensionMismatch(x.n(), r.n()));
    }
    let g = SparseOp2::tensor_square(&exp_nilpotent(x, s));
    let g_inv = SparseOp2::tensor_square(&exp_nilpotent(x, &-s.clone()));
    g.compose(r)?.compose(&g_inv)
}

/// Σ_k s^k/k! ad_X^k r, which terminates for nilpotent X.
pub fn ad_exp_series(x: &MatrixN, s: &Scalar, r: &SparseOp2) -> Result<SparseOp2> {
    require_nilpotent(x)?;
    let mut out = r.clone();
    let mut term = r.clone();
    for k in 1.. {
        term = term.ad_action(x)?.scale(&(s / int(k)));
        if term.is_zero() {
            break;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// X = ½[(n−1)e12 + (n−2)e23 + ... + 1·e_{n−1,n}].
pub fn jordanian_x(n: usize) -> MatrixN {
    let mut x = MatrixN::zero(n);
    for i in 1..n {
        x.add_entry(i, i + 1, frac((n - i) as i64, 2));
    }
    x
}

/// [X, r_{1,n}].
pub fn jordanian(n: usize) -> Result<SparseOp2> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("need n >= 2, got {n}")));
    }
    cg_closed_form(n - 1, n)?.ad_action(&jordanian_x(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyb::{find_lambda, Classification};
    use crate::poly::{b_cg, e1_matrix, e2_matrix, e_minus, e_plus};

    #[test]
    fn parabolic_dims() {
        assert_eq!(parabolic(1, 2).unwrap().dim(), 2);
        assert_eq!(parabolic(3, 5).unwrap().dim(), 18);
        assert!(parabolic(2, 5).unwrap().is_closed());
        assert!(parabolic(0, 5).is_err());
    }

    #[test]
    fn carrier_of_zero() {
        assert_eq!(carrier(&SparseOp2::zero(4)).unwrap().dim(), 0);
        assert!(carrier(&SparseOp2::identity(3)).is_err());
    }

    #[test]
    fn coords_roundtrip() {
        let p = gg_basis(5).unwrap();
        let x = &h_j(5, 2).scale(&int(3)) + &MatrixN::unit(5, 1, 4);
        assert_eq!(p.combine(&p.coords(&x).unwrap()), x);
        assert!(p.coords(&MatrixN::unit(5, 5, 1)).is_none());
        assert_eq!(p, parabolic(3, 5).unwrap());
    }

    #[test]
    fn jordanian_sl2() {
        let j = jordanian(2).unwrap();
        let mut want = SparseOp2::zero(2);
        // ½ e12 ∧ (e11 − e22)
        let w = crate::tensor::WedgeElement::of_matrices(
            &MatrixN::unit(2, 1, 2),
            &(&MatrixN::unit(2, 1, 1) - &MatrixN::unit(2, 2, 2)),
        );
        want = want.add(&w.to_op().scale(&frac(1, 2))).unwrap();
        assert_eq!(j, want);
        assert_eq!(carrier(&j).unwrap(), parabolic(1, 2).unwrap());
    }

    #[test]
    fn jordanian_family() {
        for n in 2..=5 {
            let j = jordanian(n).unwrap();
            assert_eq!(
                find_lambda(&j).unwrap().classification,
                Classification::Triangular
            );
            let f = carrier(&j).unwrap();
            assert_eq!(f, parabolic(1, n).unwrap());
            let data = r_check(&j, &f).unwrap();
            assert!(data.skew && data.cocycle);
            let r = cg_closed_form(n - 1, n).unwrap();
            let s = frac(3, 7);
            assert_eq!(
                nilpotent_exp_action(&jordanian_x(n), &s, &r).unwrap(),
                r.add(&j.scale(&s)).unwrap()
            );
        }
    }

    #[test]
    fn exp_action_agrees_with_series() {
        let r = cg_closed_form(2, 5).unwrap();
        for x in [e1_matrix(5), e2_matrix(5)] {
            let s = frac(-2, 3);
            assert_eq!(
                nilpotent_exp_action(&x, &s, &r).unwrap(),
                ad_exp_series(&x, &s, &r).unwrap()
            );
            assert_eq!(nilpotent_exp_action(&x, &int(0), &r).unwrap(), r);
        }
        assert!(nilpotent_exp_action(&MatrixN::identity(5), &int(1), &r).is_err());
    }

    #[test]
    fn gg_orbit_swaps_parameters() {
        let n = 5;
        let r = cg_closed_form(2, n).unwrap();
        let (u, t) = (int(2), int(3));
        let lhs = nilpotent_exp_action(
            &e2_matrix(n),
            &u,
            &nilpotent_exp_action(&e1_matrix(n), &t, &r).unwrap(),
        )
        .unwrap()
        .sub(&r)
        .unwrap();
        assert_eq!(lhs, b_cg(n, &t, &u).unwrap());
        assert_ne!(lhs, b_cg(n, &u, &t).unwrap());
        let one = int(1);
        let lhs = nilpotent_exp_action(
            &e2_matrix(n),
            &one,
            &nilpotent_exp_action(&e1_matrix(n), &one, &r).unwrap(),
        )
        .unwrap()
        .sub(&r)
        .unwrap();
        assert_eq!(lhs, b_cg(n, &one, &one).unwrap());
    }

    #[test]
    fn gg_carrier_and_form() {
        let n = 5;
        let (u, t) = (int(2), int(3));
        let b = b_cg(n, &u, &t).unwrap();
        let f = carrier(&b).unwrap();
        assert_eq!(f.dim(), n * n - 1 - 2 * (n - 2));
        assert_eq!(f, parabolic(n - 2, n).unwrap());
        let data = r_check(&b, &f).unwrap();
        assert!(data.skew && data.cocycle);
        assert!(!frobenius_functional_check(
            &data,
            &gg_displayed_functional(n, &u, &t).unwrap()
        ));
        assert!(frobenius_functional_check(
            &data,
            &gg_corrected_functional(n, &u, &t).unwrap()
        ));
        assert!(!frobenius_functional_check(&data, &Functional::zero()));
        let sol = solve_frobenius_functional(&data).unwrap().unwrap();
        assert_eq!(sol.dimension(), 1);
        assert!(frobenius_functional_check(
            &data,
            &Functional::from_dual(&f, &sol.particular)
        ));
    }

    #[test]
    fn gg_tables() {
        let n = 5;
        let (u, t) = (int(2), int(3));
        let b = b_cg(n, &u, &t).unwrap();
        let g = gg_basis(n).unwrap();
        let data = r_check(&b, &g).unwrap();
        let d = g.dim();
        let idx = |x: &MatrixN| g.basis().iter().position(|b| b == x).unwrap();
        for j in 1..n - 1 {
            let row = &data.form[idx(&h_j(n, j))];
            let mut want = vec![Scalar::zero(); d];
            want[idx(&MatrixN::unit(n, j, j + 2))] = Scalar::one() / &u;
            assert_eq!(row, &want, "r-check inverse of h_{j}");
        }
        let row = &data.r_check_matrix[idx(&h_j(n, n - 1))];
        let img = g.combine(row);
        let want = &e_minus(n).scale(&-t.clone()) + &e_plus(n).scale(&(int(-2) * &t * &u));
        assert_eq!(img, want);
    }
}
