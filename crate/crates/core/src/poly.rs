//! Laurent polynomials in x1, x2 and the operator algebra acting on them:
//! Dunkl operators for G(m,1,2) with m ∈ {1, 2}, divided differences, and the
//! elements realizing Cremmer-Gervais r-matrices and their boundary deformations.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::cyb::TwoLegOperator;
use crate::error::{Error, Result};
use crate::scalar::{frac, int, sgn, Scalar};
use crate::tensor::{accumulate, MatrixN, SparseOp2, WedgeElement};

/// Finite Laurent polynomial; keys are exponent pairs `[a, b]` of x1^a x2^b.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly2 {
    terms: BTreeMap<[i64; 2], Scalar>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(a: i64, b: i64, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term([a, b], c);
        p
    }

    pub fn add_term(&mut self, e: [i64; 2], c: Scalar) {
        accumulate(&mut self.terms, e, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; 2], &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: i64, b: i64) -> Scalar {
        self.terms
            .get(&[a, b])
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            p.add_term(*e, c * s);
        }
        p
    }

    /// Total degrees of the monomials present.
    pub fn degrees(&self) -> std::collections::BTreeSet<i64> {
        self.terms.keys().map(|e| e[0] + e[1]).collect()
    }

    fn map_exponents(&self, f: impl Fn([i64; 2]) -> ([i64; 2], Scalar)) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            let (e2, s) = f(*e);
            p.add_term(e2, c * s);
        }
        p
    }

    /// Exact division by x1 − c·x2, one homogeneous component at a time.
    fn divide_linear(&self, c: i64) -> Result<Self> {
        let mut comps: BTreeMap<i64, BTreeMap<i64, &Scalar>> = BTreeMap::new();
        for (e, v) in &self.terms {
            comps.entry(e[0] + e[1]).or_default().insert(e[0], v);
        }
        let cs = int(c);
        let mut out = Self::zero();
        for (d, f) in comps {
            let (&amin, &amax) = (f.keys().next().unwrap(), f.keys().next_back().unwrap());
            // q_{a−1} = f_a + c·q_a, starting from q_{amax} = 0
            let mut q = Scalar::zero();
            for a in (amin..=amax).rev() {
                let next = f.get(&a).map_or_else(Scalar::zero, |v| (*v).clone()) + &cs * &q;
                if a == amin {
                    if !next.is_zero() {
                        let sign = if c > 0 { "-" } else { "+" };
                        return Err(Error::NonzeroRemainder(format!("x1 {sign} x2")));
                    }
                } else {
                    out.add_term([a - 1, d - a], next.clone());
                }
                q = next;
            }
        }
        Ok(out)
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        self + &rhs.scale(&-Scalar::one())
    }
}

/// Operator on k[x1^{±1}, x2^{±1}] built from atoms by sums, scalings and composition.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyOperator {
    /// Multiplication by x1^a x2^b (negative exponents divide by x1 or x2).
    Mono(i64, i64),
    /// ∂1 or ∂2.
    Partial(u8),
    /// x1 ↔ x2.
    Sigma,
    /// ξ_i: x_i ↦ ω x_i with ω = ±1.
    Xi(u8, i8),
    /// Exact division by x1 − c·x2 with c = ±1.
    DivLinear(i8),
    /// M: x1^j x2^l ↦ sgn(j − l) x1^j x2^l.
    SignDiag,
    Scale(Scalar, Box<PolyOperator>),
    Sum(Vec<PolyOperator>),
    /// Composition; the last factor is applied first.
    Compose(Vec<PolyOperator>),
}

impl PolyOperator {
    pub fn one() -> Self {
        PolyOperator::Mono(0, 0)
    }

    pub fn zero() -> Self {
        PolyOperator::Sum(Vec::new())
    }

    pub fn x1() -> Self {
        PolyOperator::Mono(1, 0)
    }

    pub fn x2() -> Self {
        PolyOperator::Mono(0, 1)
    }

    pub fn mono(a: i64, b: i64) -> Self {
        PolyOperator::Mono(a, b)
    }

    pub fn d1() -> Self {
        PolyOperator::Partial(1)
    }

    pub fn d2() -> Self {
        PolyOperator::Partial(2)
    }

    pub fn sigma() -> Self {
        PolyOperator::Sigma
    }

    pub fn xi1(omega: i8) -> Self {
        PolyOperator::Xi(1, omega)
    }

    pub fn xi2(omega: i8) -> Self {
        PolyOperator::Xi(2, omega)
    }

    pub fn scalar(s: Scalar) -> Self {
        PolyOperator::Scale(s, Box::new(Self::one()))
    }

    pub fn scaled(self, s: Scalar) -> Self {
        PolyOperator::Scale(s, Box::new(self))
    }

    pub fn apply(&self, p: &LaurentPoly2) -> Result<LaurentPoly2> {
        use PolyOperator::*;
        Ok(match self {
            Mono(a, b) => p.map_exponents(|e| ([e[0] + a, e[1] + b], Scalar::one())),
            Partial(i) => {
                let k = usize::from(*i) - 1;
                p.map_exponents(|mut e| {
                    let c = int(e[k]);
                    e[k] -= 1;
                    (e, c)
                })
            }
            Sigma => p.map_exponents(|e| ([e[1], e[0]], Scalar::one())),
            Xi(i, omega) => {
                let k = usize::from(*i) - 1;
                p.map_exponents(|e| {
                    let s = if *omega == -1 && e[k].rem_euclid(2) == 1 {
                        -1
                    } else {
                        1
                    };
                    (e, int(s))
                })
            }
            DivLinear(c) => p.divide_linear(i64::from(*c))?,
            SignDiag => p.map_exponents(|e| (e, int(sgn(e[0] - e[1])))),
            Scale(s, op) => op.apply(p)?.scale(s),
            Sum(ops) => {
                let mut out = LaurentPoly2::zero();
                for op in ops {
                    out = &out + &op.apply(p)?;
                }
                out
            }
            Compose(ops) => {
                let mut cur = p.clone();
                for op in ops.iter().rev() {
                    cur = op.apply(&cur)?;
                }
                cur
            }
        })
    }

    pub fn apply_monomial(&self, a: i64, b: i64) -> Result<LaurentPoly2> {
        self.apply(&LaurentPoly2::monomial(a, b, Scalar::one()))
    }

    /// Total-degree shift, when the operator is homogeneous.
    pub fn degree(&self) -> Option<i64> {
        use PolyOperator::*;
        match self {
            Mono(a, b) => Some(a + b),
            Partial(_) | DivLinear(_) => Some(-1),
            Sigma | Xi(..) | SignDiag => Some(0),
            Scale(_, op) => op.degree(),
            Sum(ops) => {
                let mut degs = ops.iter().map(PolyOperator::degree);
                let first = degs.next()?;
                degs.all(|d| d == first).then_some(first).flatten()
            }
            Compose(ops) => ops.iter().map(PolyOperator::degree).sum(),
        }
    }
}

impl Add for PolyOperator {
    type Output = PolyOperator;
    fn add(self, rhs: PolyOperator) -> PolyOperator {
        let mut terms = match self {
            PolyOperator::Sum(v) => v,
            other => vec![other],
        };
        match rhs {
            PolyOperator::Sum(v) => terms.extend(v),
            other => terms.push(other),
        }
        PolyOperator::Sum(terms)
    }
}

impl Neg for PolyOperator {
    type Output = PolyOperator;
    fn neg(self) -> PolyOperator {
        self.scaled(int(-1))
    }
}

impl Sub for PolyOperator {
    type Output = PolyOperator;
    fn sub(self, rhs: PolyOperator) -> PolyOperator {
        self + (-rhs)
    }
}

/// `a * b` is the composition a ∘ b.
impl Mul for PolyOperator {
    type Output = PolyOperator;
    fn mul(self, rhs: PolyOperator) -> PolyOperator {
        let mut factors = match self {
            PolyOperator::Compose(v) => v,
            other => vec![other],
        };
        match rhs {
            PolyOperator::Compose(v) => factors.extend(v),
            other => factors.push(other),
        }
        PolyOperator::Compose(factors)
    }
}

impl TwoLegOperator for PolyOperator {
    type Basis = i64;

    fn apply_pair(&self, a: i64, b: i64) -> Result<Vec<([i64; 2], Scalar)>> {
        Ok(self.apply_monomial(a, b)?.terms.into_iter().collect())
    }
}

/// Parameters of H_{κ,c}(G(m,1,2)) for m ∈ {1, 2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CherednikParams {
    pub kappa: Scalar,
    pub c0: Scalar,
    pub c1: Scalar,
    pub m: u8,
}

impl CherednikParams {
    pub fn new(m: u8, kappa: Scalar, c0: Scalar, c1: Scalar) -> Result<Self> {
        if m != 1 && m != 2 {
            return Err(Error::InvalidParameters(format!(
                "only m = 1 or 2 is supported, got {m}"
            )));
        }
        let c1 = if m == 1 { Scalar::zero() } else { c1 };
        Ok(CherednikParams { kappa, c0, c1, m })
    }

    pub fn omega(&self) -> i8 {
        if self.m == 2 {
            -1
        } else {
            1
        }
    }
}

type Op = PolyOperator;

fn one_minus(op: Op) -> Op {
    Op::one() - op
}

/// Δ = ((x1 + x2)/(x1 − x2))(1 − σ).
pub fn divided_difference() -> Op {
    (Op::x1() + Op::x2()) * Op::DivLinear(1) * one_minus(Op::sigma())
}

/// The Dunkl operator y_i built from exact-division kernels.
pub fn dunkl_y(params: &CherednikParams, i: u8) -> Result<Op> {
    let w = params.omega();
    let c0 = params.c0.clone();
    let kappa = params.kappa.clone();
    let refl = Op::DivLinear(1) * one_minus(Op::sigma());
    let (partial, refl_sign, xi, inv) = match i {
        1 => (Op::d1(), -Scalar::one(), Op::xi1(w), Op::mono(-1, 0)),
        2 => (Op::d2(), Scalar::one(), Op::xi2(w), Op::mono(0, -1)),
        _ => return Err(Error::InvalidParameters(format!("no Dunkl operator y_{i}"))),
    };
    let mut y = partial.scaled(kappa) + refl.scaled(refl_sign * &c0);
    if params.m == 2 {
        let twisted = Op::DivLinear(-1) * one_minus(Op::xi1(w) * Op::xi2(w) * Op::sigma());
        y = y + twisted.scaled(-c0) + (inv * one_minus(xi)).scaled(-params.c1.clone());
    }
    Ok(y)
}

/// y_i on x1^j x2^l through the closed monomial formulas.
pub fn dunkl_monomial(params: &CherednikParams, i: u8, j: i64, l: i64) -> LaurentPoly2 {
    let m = i64::from(params.m);
    let mc0 = int(m) * &params.c0;
    let mut p = LaurentPoly2::zero();
    let alt = |e: i64| {
        if params.m == 2 && e.rem_euclid(2) == 1 {
            int(2)
        } else {
            int(0)
        }
    };
    if i == 1 {
        p.add_term([j - 1, l], int(j) * &params.kappa);
        for k in 0..=(j - l - 1).div_euclid(m) {
            p.add_term([j - 1 - k * m, l + k * m], -mc0.clone());
        }
        for k in 1..=(l - j).div_euclid(m) {
            p.add_term([j - 1 + k * m, l - k * m], mc0.clone());
        }
        p.add_term([j - 1, l], -(&params.c1 * alt(j)));
    } else {
        p.add_term([j, l - 1], int(l) * &params.kappa);
        for k in 1..=(j - l).div_euclid(m) {
            p.add_term([j - k * m, l - 1 + k * m], mc0.clone());
        }
        for k in 0..=(l - j - 1).div_euclid(m) {
            p.add_term([j + k * m, l - 1 - k * m], -mc0.clone());
        }
        p.add_term([j, l - 1], -(&params.c1 * alt(l)));
    }
    p
}

/// Outcome of checking the defining relations on a family of monomials.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub checked: Vec<String>,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.checked.is_empty()
    }
}

fn operators_agree(a: &Op, b: &Op, monomials: &[[i64; 2]]) -> Result<bool> {
    for e in monomials {
        if a.apply_monomial(e[0], e[1])? != b.apply_monomial(e[0], e[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monomials x1^a x2^b with a, b ≥ 0 and a + b ≤ bound.
pub fn polynomial_monomials(bound: i64) -> Vec<[i64; 2]> {
    (0..=bound)
        .flat_map(|a| (0..=bound - a).map(move |b| [a, b]))
        .collect()
}

/// Checks the defining relations of H_{κ,c}(G(m,1,2)) in the polynomial representation.
pub fn verify_relations(params: &CherednikParams, bound: i64) -> Result<RelationReport> {
    let w = params.omega();
    let (y1, y2) = (dunkl_y(params, 1)?, dunkl_y(params, 2)?);
    let (x1, x2, s) = (Op::x1(), Op::x2(), Op::sigma());
    let (xi1, xi2) = (Op::xi1(w), Op::xi2(w));
    let wf = int(i64::from(w));
    let c0 = params.c0.clone();
    let comm = |a: &Op, b: &Op| a.clone() * b.clone() - b.clone() * a.clone();
    let xi12s = xi1.clone() * xi2.clone() * s.clone();
    // with ω = ±1, ω^{−1} = ω and ξ^{−1} = ξ
    let (sum_diag, sum_12, sum_21, c_tail1, c_tail2) = if params.m == 2 {
        (
            s.clone() + xi12s.clone(),
            s.clone() + xi12s.clone().scaled(wf.clone()),
            s.clone() + xi12s.clone().scaled(wf.clone()),
            xi1.clone().scaled(int(2) * &params.c1),
            xi2.clone().scaled(int(2) * &params.c1),
        )
    } else {
        (s.clone(), s.clone(), s.clone(), Op::zero(), Op::zero())
    };
    let kappa = Op::scalar(params.kappa.clone());
    let rels: Vec<(&str, Op, Op)> = vec![
        ("sigma^2 = 1", s.clone() * s.clone(), Op::one()),
        (
            "xi1^m = 1",
            if params.m == 2 {
                xi1.clone() * xi1.clone()
            } else {
                xi1.clone()
            },
            Op::one(),
        ),
        (
            "xi2^m = 1",
            if params.m == 2 {
                xi2.clone() * xi2.clone()
            } else {
                xi2.clone()
            },
            Op::one(),
        ),
        ("xi1 xi2 = xi2 xi1", comm(&xi1, &xi2), Op::zero()),
        ("x1 x2 = x2 x1", comm(&x1, &x2), Op::zero()),
        ("y1 y2 = y2 y1", comm(&y1, &y2), Op::zero()),
        (
            "sigma x1 = x2 sigma",
            s.clone() * x1.clone(),
            x2.clone() * s.clone(),
        ),
        (
            "sigma y1 = y2 sigma",
            s.clone() * y1.clone(),
            y2.clone() * s.clone(),
        ),
        (
            "sigma xi1 = xi2 sigma",
            s.clone() * xi1.clone(),
            xi2.clone() * s.clone(),
        ),
        (
            "xi1 x1 = w x1 xi1",
            xi1.clone() * x1.clone(),
            (x1.clone() * xi1.clone()).scaled(wf.clone()),
        ),
        (
            "xi2 x2 = w x2 xi2",
            xi2.clone() * x2.clone(),
            (x2.clone() * xi2.clone()).scaled(wf.clone()),
        ),
        (
            "xi1 y1 = w y1 xi1",
            xi1.clone() * y1.clone(),
            (y1.clone() * xi1.clone()).scaled(wf.clone()),
        ),
        (
            "xi2 y2 = w y2 xi2",
            xi2.clone() * y2.clone(),
            (y2.clone() * xi2.clone()).scaled(wf.clone()),
        ),
        ("xi1 x2 = x2 xi1", comm(&xi1, &x2), Op::zero()),
        ("xi2 x1 = x1 xi2", comm(&xi2, &x1), Op::zero()),
        ("xi1 y2 = y2 xi1", comm(&xi1, &y2), Op::zero()),
        ("xi2 y1 = y1 xi2", comm(&xi2, &y1), Op::zero()),
        (
            "[y1, x1]",
            comm(&y1, &x1),
            kappa.clone() - sum_diag.clone().scaled(c0.clone()) - c_tail1,
        ),
        (
            "[y2, x2]",
            comm(&y2, &x2),
            kappa - sum_diag.scaled(c0.clone()) - c_tail2,
        ),
        ("[y1, x2]", comm(&y1, &x2), sum_12.scaled(c0.clone())),
        ("[y2, x1]", comm(&y2, &x1), sum_21.scaled(c0)),
    ];
    let monomials = polynomial_monomials(bound);
    let mut report = RelationReport::default();
    for (name, lhs, rhs) in rels {
        report.checked.push(name.to_string());
        if !operators_agree(&lhs, &rhs, &monomials)? {
            report.failures.push(name.to_string());
        }
    }
    Ok(report)
}

/// Identification x1^{j−1} x2^{l−1} ↔ e_j ⊗ e_l for 1 ≤ j, l ≤ n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncWindow {
    pub n: usize,
}

impl TruncWindow {
    pub fn new(n: usize) -> Self {
        TruncWindow { n }
    }

    fn inside(&self, e: i64) -> bool {
        (0..self.n as i64).contains(&e)
    }

    /// Matrix of `op` on the window; fails if the window is not stable.
    pub fn restrict(&self, op: &Op) -> Result<SparseOp2> {
        let n = self.n;
        let mut out = SparseOp2::zero(n);
        for j in 1..=n {
            for l in 1..=n {
                let img = op.apply_monomial(j as i64 - 1, l as i64 - 1)?;
                for (e, c) in img.terms() {
                    if !self.inside(e[0]) || !self.inside(e[1]) {
                        return Err(Error::WindowInstability {
                            n,
                            a: e[0],
                            b: e[1],
                        });
                    }
                    out.add_entry([e[0] as usize + 1, e[1] as usize + 1], [j, l], c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Matrix X of an operator of the form X⊗1 + 1⊗X, read off from x1^{j−1}.
    pub fn restrict_one_variable(&self, op: &Op) -> Result<MatrixN> {
        let n = self.n;
        let mut out = MatrixN::zero(n);
        for j in 1..=n {
            for (e, c) in op.apply_monomial(j as i64 - 1, 0)?.terms() {
                if !self.inside(e[0]) || e[1] != 0 {
                    return Err(Error::WindowInstability {
                        n,
                        a: e[0],
                        b: e[1],
                    });
                }
                out.add_entry(e[0] as usize + 1, j, c.clone());
            }
        }
        Ok(out)
    }
}

/// x1∂1 − x2∂2.
pub fn euler_difference() -> Op {
    Op::x1() * Op::d1() - Op::x2() * Op::d2()
}

/// x1 y1 − x2 y2.
fn dunkl_euler(params: &CherednikParams) -> Result<Op> {
    Ok(Op::x1() * dunkl_y(params, 1)? - Op::x2() * dunkl_y(params, 2)?)
}

/// −(1/n)(x1 y1 − x2 y2) in H_{1,n/2}(G(1,1,2)).
pub fn r_m1_operator(n: usize) -> Result<Op> {
    let params = CherednikParams::new(1, int(1), frac(n as i64, 2), Scalar::zero())?;
    Ok(dunkl_euler(&params)?.scaled(frac(-1, n as i64)))
}

/// r_{n−1,n} realized on the window through Dunkl operators.
pub fn r_via_dunkl_m1(n: usize) -> Result<SparseOp2> {
    TruncWindow::new(n).restrict(&r_m1_operator(n)?)
}

/// −(1/(2c0))(x1 y1 − x2 y2) + (κ/(2c0) − 1/n)(x1∂1 − x2∂2) for arbitrary κ and c0 ≠ 0.
pub fn r_m1_operator_with(n: usize, params: &CherednikParams) -> Result<Op> {
    if params.m != 1 {
        return Err(Error::InvalidParameters(
            "parameters must have m = 1".into(),
        ));
    }
    if params.c0.is_zero() {
        return Err(Error::InvalidParameters("c0 must be nonzero".into()));
    }
    let two_c0 = int(2) * &params.c0;
    let euler_coeff = &params.kappa / &two_c0 - frac(1, n as i64);
    Ok(dunkl_euler(params)?.scaled(-(Scalar::one() / &two_c0))
        + euler_difference().scaled(euler_coeff))
}

pub fn r_via_dunkl_m1_with(n: usize, params: &CherednikParams) -> Result<SparseOp2> {
    TruncWindow::new(n).restrict(&r_m1_operator_with(n, params)?)
}

/// −(1/n)(x1∂1 − x2∂2) + Δ/2.
pub fn r_m1_display_operator(n: usize) -> Op {
    euler_difference().scaled(frac(-1, n as i64)) + divided_difference().scaled(frac(1, 2))
}

/// E = x1 y1 − x2 y2 + c0(ξ1 − ξ2)σ.
pub fn element_e(params: &CherednikParams) -> Result<Op> {
    if params.m != 2 {
        return Err(Error::InvalidParameters("E is defined for m = 2".into()));
    }
    let xi_diff = (Op::xi1(-1) - Op::xi2(-1)) * Op::sigma();
    Ok(dunkl_euler(params)? + xi_diff.scaled(params.c0.clone()))
}

/// The displayed constants (a_{jl}, b_{jl}, c_{jl}) of E on the window.
pub fn e_constants(j: i64, l: i64, params: &CherednikParams) -> (Scalar, Scalar, Scalar) {
    let s = |e: i64| int(if e.rem_euclid(2) == 0 { 1 } else { -1 });
    let c0 = &params.c0;
    let a = int(4) * c0 - int(2) * &params.kappa * int(l - j) + int(2) * &params.c1 * (s(l) - s(j));
    let b = int(2) * c0 * (int(-1) - s(j + l) + s(l) - s(j));
    let c = int(4) * c0 * (int(1) + s(j + l));
    (a, b, c)
}

/// E as an element of gl_n ∧ gl_n.
///
/// The c-terms enter as c_{jl} e_{l−p,j−p} ∧ e_{jl}; this is the orientation that
/// agrees with the operator on the window.
pub fn e_wedge(n: usize, params: &CherednikParams) -> WedgeElement {
    let mut w = WedgeElement::zero(n);
    for j in 1..=n {
        for l in j + 1..=n {
            let (a, b, c) = e_constants(j as i64, l as i64, params);
            w.add_term([j, j], [l, l], a);
            w.add_term([j, l], [l, j], b);
            for p in 1..j {
                w.add_term([l - p, j - p], [j, l], c.clone());
            }
        }
    }
    w
}

/// g3 = ¼(1 − ξ1)(1 − ξ2).
pub fn g3() -> Op {
    (one_minus(Op::xi1(-1)) * one_minus(Op::xi2(-1))).scaled(frac(1, 4))
}

/// x2/x1 − x1/x2.
fn cross_ratio() -> Op {
    Op::mono(-1, 1) - Op::mono(1, -1)
}

/// g1(x1y1 − x2y2) + g2(x1∂1 − x2∂2) + (x2/x1 − x1/x2)g3 + g4.
pub fn r_m2_operator(n: usize, params: &CherednikParams) -> Result<Op> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "n must be odd for m = 2, got {n}"
        )));
    }
    if params.c0.is_zero() {
        return Err(Error::InvalidParameters("c0 must be nonzero".into()));
    }
    if params.m != 2 {
        return Err(Error::InvalidParameters(
            "parameters must have m = 2".into(),
        ));
    }
    let four_c0 = int(4) * &params.c0;
    let g1 = Op::sigma().scaled(-Scalar::one() / &four_c0);
    let g2 = Op::sigma().scaled(&params.kappa / &four_c0) - Op::scalar(frac(1, 2 * n as i64));
    let g4 = ((Op::xi1(-1) - Op::xi2(-1)) * Op::sigma()).scaled(-(&params.c1 / &four_c0));
    Ok(g1 * dunkl_euler(params)? + g2 * euler_difference() + cross_ratio() * g3() + g4)
}

pub fn r_via_dunkl_m2(n: usize, params: &CherednikParams) -> Result<SparseOp2> {
    TruncWindow::new(n).restrict(&r_m2_operator(n, params)?)
}

/// Δ + ξ1Δξ2 + a1(x2/x1 − x1/x2)g3 + a2(x1∂1 − x2∂2).
pub fn lemma_operator(a1: &Scalar, a2: &Scalar) -> Op {
    divided_difference()
        + Op::xi1(-1) * divided_difference() * Op::xi2(-1)
        + (cross_ratio() * g3()).scaled(a1.clone())
        + euler_difference().scaled(a2.clone())
}

/// Laurent exponent triples in [−bound, bound]^3.
pub fn laurent_cube(bound: i64) -> Vec<[i64; 3]> {
    let r = -bound..=bound;
    r.clone()
        .flat_map(|a| {
            r.clone()
                .flat_map(move |b| (-bound..=bound).map(move |c| [a, b, c]))
        })
        .collect()
}

/// Exponent triples with nonnegative entries and total degree ≤ bound.
pub fn graded_triples(bound: i64) -> Vec<[i64; 3]> {
    (0..=bound)
        .flat_map(|a| {
            (0..=bound - a).flat_map(move |b| (0..=bound - a - b).map(move |c| [a, b, c]))
        })
        .collect()
}

/// CYB_4 of the lemma operator on Laurent monomials with exponents in [−bound, bound].
pub fn lemma_cyb4(a1: &Scalar, a2: &Scalar, bound: i64) -> Result<bool> {
    let op = lemma_operator(a1, a2);
    Ok(crate::cyb::cyb_failures(&op, &int(4), &laurent_cube(bound))? == 0)
}

/// CYB_{4c0²}(E) on every graded component of degree ≤ bound.
pub fn element_e_cyb(params: &CherednikParams, bound: i64) -> Result<bool> {
    let e = element_e(params)?;
    let lambda = int(4) * &params.c0 * &params.c0;
    Ok(crate::cyb::cyb_failures(&e, &lambda, &graded_triples(bound))? == 0)
}

/// E1 = ½(x1⁻¹∂1 + x2⁻¹∂2) − ¼(x1⁻²(1 − ξ1) + x2⁻²(1 − ξ2)).
pub fn element_e1() -> Op {
    (Op::mono(-1, 0) * Op::d1() + Op::mono(0, -1) * Op::d2()).scaled(frac(1, 2))
        - (Op::mono(-2, 0) * one_minus(Op::xi1(-1)) + Op::mono(0, -2) * one_minus(Op::xi2(-1)))
            .scaled(frac(1, 4))
}

/// E2 = ½(x1 + x2 − x1ξ1 − x2ξ2).
pub fn element_e2() -> Op {
    (Op::x1() + Op::x2() - Op::x1() * Op::xi1(-1) - Op::x2() * Op::xi2(-1)).scaled(frac(1, 2))
}

/// Σ ⌊(j+1)/2⌋ e_{j,j+2}.
pub fn e1_matrix(n: usize) -> MatrixN {
    let mut m = MatrixN::zero(n);
    for j in 1..=n.saturating_sub(2) {
        m.add_entry(j, j + 2, int(j.div_ceil(2) as i64));
    }
    m
}

/// e_{n,n−1} + e_{n−2,n−3} + ... + e_{3,2}.
pub fn e2_matrix(n: usize) -> MatrixN {
    let mut m = MatrixN::zero(n);
    let mut k = n;
    while k >= 3 {
        m.add_entry(k, k - 1, int(1));
        k -= 2;
    }
    m
}

/// E⁺ = e12 + e34 + ... + e_{n−2,n−1}.
pub fn e_plus(n: usize) -> MatrixN {
    let mut m = MatrixN::zero(n);
    for j in (1..n.saturating_sub(1)).step_by(2) {
        m.add_entry(j, j + 1, int(1));
    }
    m
}

/// E⁻ = e_{n,n−1} + ... + e32.
pub fn e_minus(n: usize) -> MatrixN {
    e2_matrix(n)
}

/// h_j = Σ_N e_{j−2N,j−2N} − (1/n)⌊(j+1)/2⌋ Id.
pub fn h_j(n: usize, j: usize) -> MatrixN {
    let mut m = MatrixN::zero(n);
    let mut k = j as i64;
    while k >= 1 {
        m.add_entry(k as usize, k as usize, int(1));
        k -= 2;
    }
    &m - &MatrixN::identity(n).scale(&frac(j.div_ceil(2) as i64, n as i64))
}

fn inv_xy() -> Op {
    Op::mono(-1, -1)
}

/// Operator forms of v1..v4.
pub fn v_operators(n: usize) -> [Op; 4] {
    let nn = n as i64;
    let (xi1, xi2) = (Op::xi1(-1), Op::xi2(-1));
    let xi12 = xi1.clone() * xi2.clone();
    let delta = divided_difference();
    let v1 = (inv_xy()
        * (delta.clone() - xi1.clone() * delta * xi2.clone() + xi1.clone() - xi2.clone()))
    .scaled(frac(1, 4))
        - ((Op::mono(-1, 0) * Op::d1() - Op::mono(0, -1) * Op::d2()).scaled(int(2))
            - Op::mono(-2, 0) * one_minus(xi1.clone())
            + Op::mono(0, -2) * one_minus(xi2.clone()))
        .scaled(frac(1, 4 * nn));
    let v2 = (Op::x2() * xi1.clone() - Op::x1() * xi2.clone()
        + (Op::x1() - Op::x2()) * xi12.clone()
        + (Op::x1() * one_minus(xi1.clone()) - Op::x2() * one_minus(xi2.clone()))
            .scaled(frac(1, nn)))
    .scaled(frac(1, 4));
    let v3 = (inv_xy()
        * (Op::x1() * xi1.clone() - Op::x2() * xi2.clone() - (Op::x1() - Op::x2()) * xi12.clone()
            + (Op::x2() * one_minus(xi1.clone()) - Op::x1() * one_minus(xi2.clone()))
                .scaled(frac(1, nn))))
    .scaled(frac(1, 2));
    let v4 = (cross_ratio() * (Op::one() - xi1 - xi2 + xi12)).scaled(frac(1, 2));
    [v1, v2, v3, v4]
}

fn bracket(p: bool) -> i64 {
    i64::from(p)
}

fn odd(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

/// v_i on x1^j x2^l through the closed monomial formulas.
pub fn v_monomial(i: usize, n: usize, j: i64, l: i64) -> LaurentPoly2 {
    let nn = n as i64;
    let mut p = LaurentPoly2::zero();
    let sign = |e: i64| int(if odd(e) { -1 } else { 1 });
    match i {
        1 => {
            for k in 0..=(j - l - 2).div_euclid(2) {
                p.add_term([l + 2 * k, j - 2 * k - 2], int(1));
            }
            for k in 0..=(l - j - 2).div_euclid(2) {
                p.add_term([l - 2 * k - 2, j + 2 * k], int(-1));
            }
            p.add_term([j - 2, l], -frac(j.div_euclid(2), nn));
            p.add_term([j, l - 2], frac(l.div_euclid(2), nn));
            let c = bracket(!odd(j) && odd(l) && j > l) - bracket(odd(j) && !odd(l) && j < l);
            p.add_term([j - 1, l - 1], int(c));
        }
        2 => {
            if odd(l) {
                p.add_term([j, l + 1], frac(1, 2) * (sign(j) - frac(1, nn)));
            }
            if odd(j) {
                p.add_term([j + 1, l], -frac(1, 2) * (sign(l) - frac(1, nn)));
            }
        }
        3 => {
            if odd(l) {
                p.add_term([j, l - 1], sign(j) - frac(1, nn));
            }
            if odd(j) {
                p.add_term([j - 1, l], -(sign(l) - frac(1, nn)));
            }
        }
        4 => {
            if odd(j) && odd(l) {
                p.add_term([j - 1, l + 1], int(2));
                p.add_term([j + 1, l - 1], int(-2));
            }
        }
        _ => panic!("no element v{i}"),
    }
    p
}

/// Wedge forms of v1..v4 in terms of E⁺, E⁻ and h_j.
pub fn v_wedges(n: usize) -> [WedgeElement; 4] {
    let mut v1 = WedgeElement::zero(n);
    for j in 1..=n {
        for l in 1..j {
            for k in 1..=(j - l - 1) / 2 {
                v1.add_term([l + 2 * k - 2, j], [j - 2 * k, l], int(2));
            }
            if j % 2 == 1 && l % 2 == 0 {
                v1.add_term([j - 1, j], [l - 1, l], int(2));
            }
        }
    }
    for j in 1..=n.saturating_sub(2) {
        v1 = v1.add(
            &WedgeElement::of_matrices(&MatrixN::unit(n, j, j + 2), &h_j(n, j)).scale(&int(2)),
        );
    }
    let h = h_j(n, n - 1);
    let v2 = WedgeElement::of_matrices(&e_minus(n), &h).scale(&int(2));
    let v3 = WedgeElement::of_matrices(&e_plus(n), &h).scale(&int(4));
    let v4 = WedgeElement::of_matrices(&e_plus(n), &e_minus(n)).scale(&int(4));
    [v1, v2, v3, v4]
}

fn window_from_monomial_formula(
    n: usize,
    f: impl Fn(i64, i64) -> LaurentPoly2,
) -> Result<SparseOp2> {
    let win = TruncWindow::new(n);
    let mut out = SparseOp2::zero(n);
    for j in 1..=n {
        for l in 1..=n {
            for (e, c) in f(j as i64 - 1, l as i64 - 1).terms() {
                if !win.inside(e[0]) || !win.inside(e[1]) {
                    return Err(Error::WindowInstability {
                        n,
                        a: e[0],
                        b: e[1],
                    });
                }
                out.add_entry([e[0] as usize + 1, e[1] as usize + 1], [j, l], c.clone());
            }
        }
    }
    Ok(out)
}

fn require_odd(n: usize) -> Result<()> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::InvalidParameters(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    Ok(())
}

/// v1..v4 on the window, after checking that all three forms agree.
pub fn elements_v(n: usize) -> Result<[SparseOp2; 4]> {
    require_odd(n)?;
    let win = TruncWindow::new(n);
    let ops = v_operators(n);
    let wedges = v_wedges(n);
    let mut out = Vec::with_capacity(4);
    for (k, (op, wedge)) in ops.iter().zip(&wedges).enumerate() {
        let a = win.restrict(op)?;
        let b = window_from_monomial_formula(n, |j, l| v_monomial(k + 1, n, j, l))?;
        let c = wedge.to_op();
        if a != b || a != c {
            return Err(Error::RepresentationMismatch(format!("v{}", k + 1)));
        }
        out.push(a);
    }
    Ok(out.try_into().expect("four elements"))
}

/// b_CG(u, t) = u v1 + t v2 + tu v3 + ½t²u v4.
pub fn b_cg(n: usize, u: &Scalar, t: &Scalar) -> Result<SparseOp2> {
    let [v1, v2, v3, v4] = elements_v(n)?;
    let half = frac(1, 2);
    v1.scale(u)
        .add(&v2.scale(t))?
        .add(&v3.scale(&(t * u)))?
        .add(&v4.scale(&(&half * t * t * u)))
}

/// The ten relations of the U(n)-module generated by r_{n−2,n}, with their outcomes.
pub fn module_structure_check(n: usize) -> Result<Vec<(String, bool)>> {
    require_odd(n)?;
    let (e1, e2) = (e1_matrix(n), e2_matrix(n));
    let r = crate::cg::cg_closed_form(2, n)?;
    let [v1, v2, v3, v4] = elements_v(n)?;
    let zero = SparseOp2::zero(n);
    let half = frac(1, 2);
    let rels: Vec<(&str, &MatrixN, &SparseOp2, SparseOp2)> = vec![
        ("E1.r = v1", &e1, &r, v1.clone()),
        ("E1.v2 = v3/2", &e1, &v2, v3.scale(&half)),
        ("E2.r = v2", &e2, &r, v2.clone()),
        ("E2.v1 = v3", &e2, &v1, v3.clone()),
        ("E2.v3 = v4", &e2, &v3, v4.clone()),
        ("E1.v1 = 0", &e1, &v1, zero.clone()),
        ("E1.v3 = 0", &e1, &v3, zero.clone()),
        ("E1.v4 = 0", &e1, &v4, zero.clone()),
        ("E2.v2 = 0", &e2, &v2, zero.clone()),
        ("E2.v4 = 0", &e2, &v4, zero),
    ];
    rels.into_iter()
        .map(|(name, x, w, want)| Ok((name.to_string(), w.ad_action(x)? == want)))
        .collect()
}

/// M on x1^j x2^l: sgn(j − l).
pub fn m_operator() -> Op {
    Op::SignDiag
}

/// The operators representing α, β, γ of r_{n−2,n}.
pub fn abg_operators(n: usize) -> [Op; 3] {
    let m = m_operator();
    let xi12 = Op::xi1(-1) * Op::xi2(-1);
    let sym = Op::one() + xi12;
    let delta = divided_difference();
    let alpha = (m.clone() * sym.clone()).scaled(frac(-1, 4))
        - (Op::sigma() * m.clone()).scaled(frac(1, 2))
        + delta.clone().scaled(frac(1, 4))
        + (Op::xi1(-1) * delta * Op::xi2(-1)).scaled(frac(1, 4))
        + cross_ratio() * g3();
    let beta =
        (m.clone() * sym).scaled(frac(1, 4)) - euler_difference().scaled(frac(1, 2 * n as i64));
    let gamma = (Op::sigma() * m).scaled(frac(1, 2));
    [alpha, beta, gamma]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::{alpha_part, beta_part, gamma_part};
    use crate::cg::cg_closed_form;

    fn poly(terms: &[([i64; 2], i64)]) -> LaurentPoly2 {
        let mut p = LaurentPoly2::zero();
        for (e, c) in terms {
            p.add_term(*e, int(*c));
        }
        p
    }

    fn params2() -> CherednikParams {
        CherednikParams::new(2, frac(2, 3), frac(-3, 5), frac(7, 2)).unwrap()
    }

    #[test]
    fn divided_difference_examples() {
        let d = divided_difference();
        assert_eq!(
            d.apply_monomial(1, 0).unwrap(),
            poly(&[([1, 0], 1), ([0, 1], 1)])
        );
        assert!(d.apply_monomial(1, 1).unwrap().is_zero());
        assert_eq!(
            d.apply_monomial(2, 0).unwrap(),
            poly(&[([2, 0], 1), ([1, 1], 2), ([0, 2], 1)])
        );
        assert!(Op::DivLinear(1).apply_monomial(1, 0).is_err());
    }

    #[test]
    fn dunkl_basics() {
        let p = CherednikParams::new(1, frac(3, 2), frac(1, 3), int(0)).unwrap();
        let y1 = dunkl_y(&p, 1).unwrap();
        assert_eq!(
            y1.apply_monomial(1, 0).unwrap(),
            LaurentPoly2::monomial(0, 0, frac(3, 2) - frac(1, 3))
        );
        assert!(y1.apply_monomial(0, 0).unwrap().is_zero());
        assert_eq!(y1.degree(), Some(-1));
    }

    #[test]
    fn dunkl_monomial_formulas() {
        for p in [
            params2(),
            CherednikParams::new(1, frac(5, 4), frac(-2, 7), int(0)).unwrap(),
        ] {
            for i in [1, 2] {
                let y = dunkl_y(&p, i).unwrap();
                for j in 0..=8 {
                    for l in 0..=8 {
                        assert_eq!(
                            y.apply_monomial(j, l).unwrap(),
                            dunkl_monomial(&p, i, j, l),
                            "y{i} on ({j},{l})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn relations_hold() {
        let rep = verify_relations(&params2(), 6).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        let p1 = CherednikParams::new(1, frac(-4, 3), frac(5, 2), int(0)).unwrap();
        let rep = verify_relations(&p1, 6).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn m1_realization() {
        for n in 2..=6 {
            let r = r_via_dunkl_m1(n).unwrap();
            assert_eq!(r, cg_closed_form(1, n).unwrap());
            assert_eq!(
                TruncWindow::new(n)
                    .restrict(&r_m1_display_operator(n))
                    .unwrap(),
                r
            );
        }
    }

    #[test]
    fn m1_realization_any_parameters() {
        let p = CherednikParams::new(1, frac(-7, 3), frac(5, 8), int(0)).unwrap();
        for n in 2..=6 {
            assert_eq!(
                r_via_dunkl_m1_with(n, &p).unwrap(),
                cg_closed_form(1, n).unwrap()
            );
        }
        let zero = CherednikParams::new(1, int(1), int(0), int(0)).unwrap();
        assert!(r_via_dunkl_m1_with(3, &zero).is_err());
    }

    #[test]
    fn m2_realization() {
        for n in [3, 5] {
            assert_eq!(
                r_via_dunkl_m2(n, &params2()).unwrap(),
                cg_closed_form(2, n).unwrap()
            );
        }
        let zero_c0 = CherednikParams::new(2, int(1), int(0), int(0)).unwrap();
        assert!(r_via_dunkl_m2(5, &zero_c0).is_err());
        assert!(r_via_dunkl_m2(4, &params2()).is_err());
    }

    #[test]
    fn e_wedge_matches_window() {
        for n in [3, 4, 5] {
            let p = params2();
            let win = TruncWindow::new(n)
                .restrict(&element_e(&p).unwrap())
                .unwrap();
            assert_eq!(win, e_wedge(n, &p).to_op());
        }
    }

    #[test]
    fn e_traceless_only_at_special_parameters() {
        let n = 5;
        let traceless = |p: &CherednikParams| {
            let op = TruncWindow::new(n)
                .restrict(&element_e(p).unwrap())
                .unwrap();
            op.first_leg_slices().values().all(|m| m.trace().is_zero())
        };
        assert!(traceless(
            &CherednikParams::new(2, int(1), frac(5, 4), int(0)).unwrap()
        ));
        assert!(!traceless(
            &CherednikParams::new(2, int(1), int(1), int(0)).unwrap()
        ));
    }

    #[test]
    fn e_cyb_low_degree() {
        assert!(element_e_cyb(&params2(), 4).unwrap());
    }

    #[test]
    fn lemma_small_window() {
        assert!(lemma_cyb4(&int(1), &frac(2, 5), 2).unwrap());
        assert!(lemma_cyb4(&int(0), &int(0), 2).unwrap());
    }

    #[test]
    fn e1_e2_windows() {
        let n = 5;
        let win = TruncWindow::new(n);
        assert_eq!(
            win.restrict_one_variable(&element_e1()).unwrap(),
            e1_matrix(n)
        );
        assert_eq!(
            win.restrict_one_variable(&element_e2()).unwrap(),
            e2_matrix(n)
        );
        let mut want = MatrixN::unit(5, 1, 3);
        want.add_entry(2, 4, int(1));
        want.add_entry(3, 5, int(2));
        assert_eq!(e1_matrix(5), want);
        let mut want = MatrixN::unit(5, 5, 4);
        want.add_entry(3, 2, int(1));
        assert_eq!(e2_matrix(5), want);
        let c = e1_matrix(n).commutator(&e2_matrix(n));
        assert!(!c.is_zero());
        assert!(c.commutator(&e1_matrix(n)).is_zero());
        assert!(c.commutator(&e2_matrix(n)).is_zero());
    }

    #[test]
    fn v_forms_agree() {
        let v = elements_v(5).unwrap();
        assert!(v.iter().all(|x| !x.is_zero()));
        assert!(elements_v(4).is_err());
    }

    #[test]
    fn v_monomials_on_laurent_range() {
        let ops = v_operators(5);
        for (k, op) in ops.iter().enumerate() {
            for j in -4..=4 {
                for l in -4..=4 {
                    assert_eq!(
                        op.apply_monomial(j, l).unwrap(),
                        v_monomial(k + 1, 5, j, l),
                        "v{} ({j},{l})",
                        k + 1
                    );
                }
            }
        }
    }

    #[test]
    fn degrees() {
        let ops = v_operators(7);
        let degs: Vec<_> = ops.iter().map(PolyOperator::degree).collect();
        assert_eq!(degs, vec![Some(-2), Some(1), Some(-1), Some(0)]);
        assert_eq!(element_e(&params2()).unwrap().degree(), Some(0));
        assert_eq!(element_e1().degree(), Some(-2));
        assert_eq!(element_e2().degree(), Some(1));
    }

    #[test]
    fn module_structure_small() {
        for (name, ok) in module_structure_check(5).unwrap() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn m_operator_examples() {
        assert!(m_operator().apply_monomial(1, 1).unwrap().is_zero());
        assert_eq!(
            m_operator().apply_monomial(2, 1).unwrap(),
            poly(&[([2, 1], 1)])
        );
    }

    #[test]
    fn alpha_beta_gamma_operators() {
        for n in [3, 5, 7] {
            let win = TruncWindow::new(n);
            let [a, b, g] = abg_operators(n);
            assert_eq!(win.restrict(&g).unwrap(), gamma_part(n).to_op());
            assert_eq!(
                win.restrict(&b).unwrap(),
                beta_part(n - 2, n).unwrap().to_op()
            );
            assert_eq!(
                win.restrict(&a).unwrap(),
                alpha_part(n - 2, n).unwrap().to_op()
            );
        }
    }

    #[test]
    fn b_cg_zero() {
        assert!(b_cg(5, &int(0), &int(0)).unwrap().is_zero());
    }
}
