//! Root data for sl_n, Belavin-Drinfeld triples and the α + β + γ construction.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::solve_affine;
use crate::scalar::{frac, gcd, int, modp, Scalar};
use crate::tensor::{MatrixN, WedgeElement};

/// Positive root e_i − e_j, with root vector e_{ij}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosRoot {
    pub i: usize,
    pub j: usize,
}

impl PosRoot {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "positive root needs i < j, got ({i}, {j})");
        PosRoot { i, j }
    }

    /// Simple roots α_i, ..., α_{j−1} making up this root.
    pub fn simple_components(&self) -> std::ops::Range<usize> {
        self.i..self.j
    }
}

/// Diagonal element of sl_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanVector {
    pub diagonal: Vec<Scalar>,
}

impl CartanVector {
    /// h_α for α = e_i − e_j, i.e. e_ii − e_jj under the trace form.
    pub fn of_root(n: usize, root: &PosRoot) -> Self {
        let mut diagonal = vec![Scalar::zero(); n];
        diagonal[root.i - 1] += Scalar::one();
        diagonal[root.j - 1] -= Scalar::one();
        CartanVector { diagonal }
    }

    pub fn trace(&self) -> Scalar {
        self.diagonal.iter().sum()
    }

    pub fn to_matrix(&self) -> MatrixN {
        let n = self.diagonal.len();
        let mut m = MatrixN::zero(n);
        for (k, v) in self.diagonal.iter().enumerate() {
            m.add_entry(k + 1, k + 1, v.clone());
        }
        m
    }
}

/// Belavin-Drinfeld triple for sl_n; simple roots are indexed 1..n−1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdTriple {
    pub n: usize,
    pub s0: BTreeSet<usize>,
    pub s1: BTreeSet<usize>,
    pub zeta: BTreeMap<usize, usize>,
}

fn cartan_entry(a: usize, b: usize) -> i64 {
    match a.abs_diff(b) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

pub fn check_coprime(m: i64, n: i64) -> Result<()> {
    if m < 1 || m >= n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime { m, n });
    }
    Ok(())
}

/// The triple T_{m,n}: S0 = Π∖{α_{n−m}}, S1 = Π∖{α_m}, ζ(α_s) = α_{s+m mod n}.
pub fn cg_triple(m: usize, n: usize) -> Result<BdTriple> {
    check_coprime(m as i64, n as i64)?;
    let s0: BTreeSet<usize> = (1..n).filter(|&s| s != n - m).collect();
    let s1: BTreeSet<usize> = (1..n).filter(|&s| s != m).collect();
    let zeta = s0.iter().map(|&s| (s, (s + m) % n)).collect();
    let t = BdTriple { n, s0, s1, zeta };
    t.validate()?;
    Ok(t)
}

impl BdTriple {
    /// Checks bijectivity, orthogonality and nilpotency.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Error::InvalidParameters(m);
        let image: BTreeSet<usize> = self.zeta.values().copied().collect();
        let domain: BTreeSet<usize> = self.zeta.keys().copied().collect();
        if domain != self.s0 || image != self.s1 || image.len() != self.s0.len() {
            return Err(bad("zeta is not a bijection S0 -> S1".into()));
        }
        for (&a, &za) in &self.zeta {
            for (&b, &zb) in &self.zeta {
                if cartan_entry(a, b) != cartan_entry(za, zb) {
                    return Err(bad(format!("zeta breaks orthogonality at ({a}, {b})")));
                }
            }
        }
        for &s in &self.s0 {
            let mut cur = s;
            let mut steps = 0;
            while let Some(&next) = self.zeta.get(&cur) {
                cur = next;
                steps += 1;
                if steps > self.s0.len() {
                    return Err(bad(format!("zeta is not nilpotent at {s}")));
                }
            }
        }
        Ok(())
    }

    pub fn positive_roots(&self) -> Vec<PosRoot> {
        let n = self.n;
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| PosRoot { i, j }))
            .collect()
    }

    /// ζ̂ on a positive root, when all its simple components lie in S0.
    pub fn zeta_hat(&self, r: &PosRoot) -> Option<PosRoot> {
        let mut imgs = Vec::with_capacity(r.j - r.i);
        for s in r.simple_components() {
            imgs.push(*self.zeta.get(&s)?);
        }
        imgs.sort_unstable();
        let (lo, hi) = (imgs[0], imgs[imgs.len() - 1]);
        // orthogonality forces the image of a connected string to be connected
        assert_eq!(
            hi - lo + 1,
            imgs.len(),
            "zeta-hat image of {r:?} is not a root"
        );
        Some(PosRoot { i: lo, j: hi + 1 })
    }

    /// `ρ ≺ μ` (N ≥ 1) or, with `allow_equal`, `ρ ⪯ μ` (N ≥ 0).
    pub fn precedes(&self, rho: &PosRoot, mu: &PosRoot, allow_equal: bool) -> bool {
        if allow_equal && rho == mu {
            return true;
        }
        let mut cur = *rho;
        while let Some(next) = self.zeta_hat(&cur) {
            if next == *mu {
                return true;
            }
            cur = next;
        }
        false
    }

    /// Precomputed ζ̂ for fast repeated order queries.
    pub fn order_table(&self) -> OrderTable {
        let n = self.n;
        let mut next = vec![None; (n + 1) * (n + 1)];
        for r in self.positive_roots() {
            next[r.i * (n + 1) + r.j] = self.zeta_hat(&r);
        }
        OrderTable { n, next }
    }
}

/// ζ̂ tabulated over all positive roots.
#[derive(Clone, Debug)]
pub struct OrderTable {
    n: usize,
    next: Vec<Option<PosRoot>>,
}

impl OrderTable {
    pub fn zeta_hat(&self, r: &PosRoot) -> Option<PosRoot> {
        self.next[r.i * (self.n + 1) + r.j]
    }

    pub fn precedes(&self, rho: &PosRoot, mu: &PosRoot, allow_equal: bool) -> bool {
        if allow_equal && rho == mu {
            return true;
        }
        let mut cur = *rho;
        while let Some(next) = self.zeta_hat(&cur) {
            if next == *mu {
                return true;
            }
            cur = next;
        }
        false
    }
}

/// All pairs `ρ ≺ μ` for T_{m,n}.
pub fn precedence_pairs(m: usize, n: usize) -> Result<Vec<(PosRoot, PosRoot)>> {
    let t = cg_triple(m, n)?;
    let table = t.order_table();
    let roots = t.positive_roots();
    let mut out = Vec::new();
    for rho in &roots {
        for mu in &roots {
            if table.precedes(rho, mu, false) {
                out.push((*rho, *mu));
            }
        }
    }
    Ok(out)
}

/// α = 2 Σ_{ρ≺μ} e_ρ ∧ e_{−μ}.
pub fn alpha_part(m: usize, n: usize) -> Result<WedgeElement> {
    let mut w = WedgeElement::zero(n);
    for (rho, mu) in precedence_pairs(m, n)? {
        w.add_term([rho.i, rho.j], [mu.j, mu.i], int(2));
    }
    Ok(w)
}

pub fn inverse_mod(m: i64, n: i64) -> Option<i64> {
    (0..n).find(|x| modp(m * x, n) == modp(1, n))
}

/// Coefficient of e_jj ∧ e_ll (j < l) in β_{m,n}.
pub fn beta_coefficient(m: usize, n: usize, j: usize, l: usize) -> Scalar {
    let (m, n) = (m as i64, n as i64);
    let minv = inverse_mod(m, n).expect("m invertible mod n");
    int(-1) + frac(2, n) * int(modp((j as i64 - l as i64) * minv, n))
}

pub fn beta_part(m: usize, n: usize) -> Result<WedgeElement> {
    check_coprime(m as i64, n as i64)?;
    let mut w = WedgeElement::zero(n);
    for j in 1..=n {
        for l in j + 1..=n {
            w.add_term([j, j], [l, l], beta_coefficient(m, n, j, l));
        }
    }
    Ok(w)
}

/// γ = Σ_{j<l} e_{jl} ∧ e_{lj}.
pub fn gamma_part(n: usize) -> WedgeElement {
    let mut w = WedgeElement::zero(n);
    for j in 1..=n {
        for l in j + 1..=n {
            w.add_term([j, l], [l, j], Scalar::one());
        }
    }
    w
}

/// r_{m,n} = α + β + γ for T_{m,n}.
pub fn bd_r_matrix(m: usize, n: usize) -> Result<WedgeElement> {
    Ok(alpha_part(m, n)?.add(&beta_part(m, n)?).add(&gamma_part(n)))
}

/// Antisymmetric matrix B with β = Σ_{j<l} B[j][l] e_jj ∧ e_ll.
fn cartan_wedge_matrix(b: &WedgeElement) -> Result<Vec<Vec<Scalar>>> {
    let n = b.n();
    let mut mat = vec![vec![Scalar::zero(); n]; n];
    for (([a, a2], [c, c2]), v) in b.terms() {
        if a != a2 || c != c2 {
            return Err(Error::NotCartanWedge);
        }
        mat[a - 1][c - 1] += v;
        mat[c - 1][a - 1] -= v;
    }
    // legs must be traceless: contraction with the identity vanishes
    if mat.iter().any(|row| !row.iter().sum::<Scalar>().is_zero()) {
        return Err(Error::NotCartanWedge);
    }
    Ok(mat)
}

/// `(f, rhs)` pairs: f = ζ(α) − α as a diagonal functional and rhs = ½(h_{ζ(α)} + h_α).
fn beta_equations(t: &BdTriple) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    let n = t.n;
    t.zeta
        .iter()
        .map(|(&s, &z)| {
            let mut f = vec![Scalar::zero(); n];
            f[z - 1] += Scalar::one();
            f[z] -= Scalar::one();
            f[s - 1] -= Scalar::one();
            f[s] += Scalar::one();
            let hz = CartanVector::of_root(n, &PosRoot::new(z, z + 1));
            let hs = CartanVector::of_root(n, &PosRoot::new(s, s + 1));
            let rhs = hz
                .diagonal
                .iter()
                .zip(&hs.diagonal)
                .map(|(a, b)| (a + b) * frac(1, 2))
                .collect();
            (f, rhs)
        })
        .collect()
}

/// Checks `(1 ⊗ (ζ(α) − α))β = ½(h_{ζ(α)} + h_α)` for all α ∈ S0.
pub fn verify_beta_variety(t: &BdTriple, b: &WedgeElement) -> Result<bool> {
    let mat = cartan_wedge_matrix(b)?;
    for (f, rhs) in beta_equations(t) {
        for (row, want) in mat.iter().zip(&rhs) {
            let lhs: Scalar = row.iter().zip(&f).map(|(x, y)| x * y).sum::<Scalar>() * frac(1, 2);
            if &lhs != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Solution set of the β_T system inside h∧h.
#[derive(Clone, Debug)]
pub struct BetaSolution {
    pub particular: WedgeElement,
    pub dimension: usize,
}

pub fn solve_beta_variety(t: &BdTriple) -> Option<BetaSolution> {
    let n = t.n;
    let vars: Vec<(usize, usize)> = (1..=n)
        .flat_map(|j| (j + 1..=n).map(move |l| (j, l)))
        .collect();
    let nv = vars.len();
    // B[j][l] in terms of the unknowns: +x for j < l, −x for j > l
    let coeff = |j: usize, l: usize| -> Option<(usize, Scalar)> {
        match j.cmp(&l) {
            std::cmp::Ordering::Less => vars.iter().position(|&v| v == (j, l)).map(|k| (k, int(1))),
            std::cmp::Ordering::Greater => {
                vars.iter().position(|&v| v == (l, j)).map(|k| (k, int(-1)))
            }
            std::cmp::Ordering::Equal => None,
        }
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (f, rhs) in beta_equations(t) {
        for j in 1..=n {
            let mut row = vec![Scalar::zero(); nv];
            for l in 1..=n {
                if let Some((k, s)) = coeff(j, l) {
                    row[k] += s * &f[l - 1] * frac(1, 2);
                }
            }
            a.push(row);
            b.push(rhs[j - 1].clone());
        }
    }
    for j in 1..=n {
        let mut row = vec![Scalar::zero(); nv];
        for l in 1..=n {
            if let Some((k, s)) = coeff(j, l) {
                row[k] += s;
            }
        }
        a.push(row);
        b.push(Scalar::zero());
    }
    let sol = solve_affine(&a, &b, nv)?;
    let mut particular = WedgeElement::zero(n);
    for ((j, l), v) in vars.iter().zip(&sol.particular) {
        particular.add_term([*j, *j], [*l, *l], v.clone());
    }
    Some(BetaSolution {
        particular,
        dimension: sol.dimension(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_triples() {
        let t = cg_triple(1, 3).unwrap();
        assert_eq!(t.s0, BTreeSet::from([1]));
        assert_eq!(t.s1, BTreeSet::from([2]));
        assert_eq!(t.zeta[&1], 2);
        assert!(matches!(cg_triple(2, 4), Err(Error::NotCoprime { .. })));
        let t = cg_triple(12, 31).unwrap();
        assert!(!t.s0.contains(&19) && !t.s1.contains(&12));
        assert_eq!(t.zeta[&1], 13);
        assert_eq!(t.zeta[&20], 1);
    }

    #[test]
    fn zeta_hat_examples() {
        let t = cg_triple(12, 31).unwrap();
        assert_eq!(
            t.zeta_hat(&PosRoot::new(15, 19)),
            Some(PosRoot::new(27, 31))
        );
        assert_eq!(t.zeta_hat(&PosRoot::new(18, 21)), None);
        let t = cg_triple(1, 3).unwrap();
        assert_eq!(t.zeta_hat(&PosRoot::new(1, 2)), Some(PosRoot::new(2, 3)));
    }

    #[test]
    fn precedes_examples() {
        let t = cg_triple(12, 31).unwrap();
        assert!(t.precedes(&PosRoot::new(15, 19), &PosRoot::new(18, 22), true));
        assert!(!t.precedes(&PosRoot::new(15, 19), &PosRoot::new(11, 15), true));
        let r = PosRoot::new(3, 7);
        assert!(t.precedes(&r, &r, true));
        assert!(!t.precedes(&r, &r, false));
        let table = t.order_table();
        assert!(table.precedes(&PosRoot::new(15, 19), &PosRoot::new(18, 22), false));
    }

    #[test]
    fn small_parts() {
        assert!(alpha_part(1, 2).unwrap().is_empty());
        let a = alpha_part(1, 3).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.coefficient([1, 2], [3, 2]), int(2));
        assert!(beta_part(1, 2).unwrap().is_empty());
        assert_eq!(
            beta_part(1, 3).unwrap().coefficient([1, 1], [2, 2]),
            frac(1, 3)
        );
        assert_eq!(gamma_part(3).len(), 3);
        let mut g2 = WedgeElement::zero(2);
        g2.add_term([1, 2], [2, 1], int(1));
        assert_eq!(bd_r_matrix(1, 2).unwrap(), g2);
    }

    #[test]
    fn gamma_action() {
        let op = gamma_part(4).to_op();
        for j in 1..=4 {
            for l in 1..=4 {
                let mut want = std::collections::BTreeMap::new();
                if j != l {
                    want.insert([l, j], frac((j as i64 - l as i64).signum(), 2));
                }
                let got = op.column(&[j, l]).cloned().unwrap_or_default();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn beta_variety_small() {
        let t = cg_triple(2, 5).unwrap();
        assert!(verify_beta_variety(&t, &beta_part(2, 5).unwrap()).unwrap());
        assert!(!verify_beta_variety(&t, &WedgeElement::zero(5)).unwrap());
        assert!(matches!(
            verify_beta_variety(&t, &gamma_part(5)),
            Err(Error::NotCartanWedge)
        ));
        let sol = solve_beta_variety(&t).unwrap();
        assert_eq!(sol.dimension, 0);
        assert_eq!(sol.particular, beta_part(2, 5).unwrap());
    }

    #[test]
    fn cartan_vectors_are_traceless() {
        let h = CartanVector::of_root(4, &PosRoot::new(1, 3));
        assert!(h.trace().is_zero());
        assert_eq!(h.to_matrix().get(3, 3), int(-1));
    }
}
