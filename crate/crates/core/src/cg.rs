//! Closed-form generalized Cremmer-Gervais r-matrices.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bd::check_coprime;
use crate::error::{Error, Result};
use crate::scalar::{frac, int, modp, sgn, Scalar};
use crate::tensor::{accumulate, all_indices, SparseOp2, SparseVec};
use crate::wheels::WheelData;

/// A coprime pair with 1 ≤ m < n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CgParams {
    pub m: usize,
    pub n: usize,
}

impl CgParams {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        check_coprime(m as i64, n as i64)?;
        Ok(CgParams { m, n })
    }
}

/// ψ_j ∈ {1..n} with m·ψ_j ≡ j (mod n).
pub fn psi(m: i64, n: i64, j: i64) -> i64 {
    (1..=n)
        .find(|p| modp(m * p - j, n) == 0)
        .expect("m invertible mod n")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiTable {
    pub m: i64,
    pub n: i64,
    pub values: Vec<i64>,
}

impl PsiTable {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        check_coprime(m, n)?;
        Ok(PsiTable {
            m,
            n,
            values: (1..=n).map(|j| psi(m, n, j)).collect(),
        })
    }

    pub fn get(&self, j: i64) -> i64 {
        self.values[(j - 1) as usize]
    }
}

/// r_{n−m,n}, evaluated one input column e_j ⊗ e_l at a time and cached.
pub struct ClosedForm {
    params: CgParams,
    wheel: WheelData,
    psi: PsiTable,
    cache: Vec<OnceLock<SparseVec<2>>>,
}

impl ClosedForm {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let params = CgParams::new(m, n)?;
        Ok(ClosedForm {
            params,
            wheel: WheelData::new(m as i64, n as i64)?,
            psi: PsiTable::new(m as i64, n as i64)?,
            cache: (0..n * n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn params(&self) -> CgParams {
        self.params
    }

    /// Image of e_j ⊗ e_l.
    pub fn column(&self, j: usize, l: usize) -> &SparseVec<2> {
        let n = self.params.n;
        assert!((1..=n).contains(&j) && (1..=n).contains(&l));
        self.cache[(j - 1) * n + (l - 1)].get_or_init(|| self.evaluate(j as i64, l as i64))
    }

    fn evaluate(&self, j: i64, l: i64) -> SparseVec<2> {
        let n = self.params.n as i64;
        let w = &self.wheel;
        let mut col = SparseVec::new();
        let mut put = |a: i64, b: i64, v: Scalar| {
            assert!(
                (1..=n).contains(&a) && (1..=n).contains(&b),
                "closed form produced e_{a} (x) e_{b} outside the range for column ({j}, {l})"
            );
            accumulate(&mut col, [a as usize, b as usize], v);
        };
        for t in 0..w.len() {
            let step = w.seq[t + 1];
            let jt = w.func_j(t, j, l);
            if jt >= 1 {
                for k in 0..=(jt - 1) / step {
                    put(j - jt + k * step, l + jt - k * step, Scalar::one());
                }
            }
            let jt = w.func_j(t, l, j);
            if jt >= 1 {
                for k in 0..=(jt - 1) / step {
                    put(j + jt - k * step, l - jt + k * step, -Scalar::one());
                }
            }
        }
        let d = self.psi.get(j) - self.psi.get(l);
        put(j, l, frac(sgn(d), 2) - frac(d, n));
        put(l, j, -frac(sgn(j - l), 2));
        col
    }

    /// Materializes every column, in parallel.
    pub fn to_op(&self) -> SparseOp2 {
        let n = self.params.n;
        let cols: Vec<_> = all_indices::<2>(n)
            .into_par_iter()
            .map(|idx| (idx, self.column(idx[0], idx[1]).clone()))
            .collect();
        SparseOp2::from_columns(n, cols)
    }
}

/// r_{n−m,n} as an operator on V⊗V.
pub fn cg_closed_form(m: usize, n: usize) -> Result<SparseOp2> {
    Ok(ClosedForm::new(m, n)?.to_op())
}

/// The m = 1 specialization: sgn(j−l)(½(e_j⊗e_l + e_l⊗e_j) + Σ_{s strictly between} e_s⊗e_{j+l−s}) − ((j−l)/n) e_j⊗e_l.
pub fn cg_m1_display(n: usize) -> SparseOp2 {
    let mut op = SparseOp2::zero(n);
    for j in 1..=n {
        for l in 1..=n {
            let s = sgn(j as i64 - l as i64);
            op.add_entry(
                [j, l],
                [j, l],
                frac(s, 2) - frac(j as i64 - l as i64, n as i64),
            );
            op.add_entry([l, j], [j, l], frac(s, 2));
            for x in j.min(l) + 1..j.max(l) {
                op.add_entry([x, j + l - x], [j, l], int(s));
            }
        }
    }
    op
}

/// The m = 2 specialization (n odd).
pub fn cg_m2_display(n: usize) -> Result<SparseOp2> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::InvalidParameters(format!(
            "the m = 2 display needs odd n >= 3, got {n}"
        )));
    }
    let ni = n as i64;
    let mut op = SparseOp2::zero(n);
    for j in 1..=ni {
        for l in 1..=ni {
            let col = [j as usize, l as usize];
            let mut put =
                |a: i64, b: i64, v: Scalar| op.add_entry([a as usize, b as usize], col, v);
            for k in 0..=(j - l - 1).div_euclid(2) {
                put(l + 2 * k, j - 2 * k, int(1));
            }
            for k in 0..=(l - j - 1).div_euclid(2) {
                put(l - 2 * k, j + 2 * k, int(-1));
            }
            if j % 2 == 0 && l % 2 == 0 {
                put(j - 1, l + 1, int(1));
                put(j + 1, l - 1, int(-1));
            }
            let delta = if j == l { frac(1, 2) } else { Scalar::zero() };
            put(
                j,
                l,
                frac(1, 2) - frac(modp((j - l) * (ni + 1) / 2, ni), ni) - delta,
            );
            put(l, j, -frac(sgn(j - l), 2));
        }
    }
    Ok(op)
}

/// α_{n−m,n} from its displayed action on e_j ⊗ e_l.
pub fn alpha_display(m: usize, n: usize) -> Result<SparseOp2> {
    let w = WheelData::new(m as i64, n as i64)?;
    let ni = n as i64;
    let mut op = SparseOp2::zero(n);
    for j in 1..=ni {
        for l in 1..=ni {
            let col = [j as usize, l as usize];
            let mut put =
                |a: i64, b: i64, v: Scalar| op.add_entry([a as usize, b as usize], col, v);
            put(l, j, int(sgn(l - j)));
            for t in 0..w.len() {
                let step = w.seq[t + 1];
                let jt = w.func_j(t, j, l);
                for k in 0..=(jt - 1).div_euclid(step) {
                    put(j - jt + k * step, l + jt - k * step, int(1));
                }
                let jt = w.func_j(t, l, j);
                for k in 0..=(jt - 1).div_euclid(step) {
                    put(j + jt - k * step, l - jt + k * step, int(-1));
                }
            }
        }
    }
    Ok(op)
}

/// β_{n−m,n} from its displayed diagonal action.
pub fn beta_display(m: usize, n: usize) -> Result<SparseOp2> {
    check_coprime(m as i64, n as i64)?;
    let ni = n as i64;
    let minv = crate::bd::inverse_mod(m as i64, ni).expect("coprime");
    let mut op = SparseOp2::zero(n);
    for j in 1..=ni {
        for l in 1..=ni {
            let delta = if j == l { frac(1, 2) } else { Scalar::zero() };
            let v = frac(1, 2) - frac(modp((j - l) * minv, ni), ni) - delta;
            op.add_entry([j as usize, l as usize], [j as usize, l as usize], v);
        }
    }
    Ok(op)
}

/// `(φ⊗φ) r` for an operator, with φ(e_{jl}) = −e_{n+1−l, n+1−j}.
pub fn phi_twist_op(r: &SparseOp2) -> SparseOp2 {
    let n = r.n();
    let f = |i: usize| n + 1 - i;
    SparseOp2::from_tensor(
        n,
        r.tensor_terms()
            .into_iter()
            .map(|([a, b], [c, d], v)| ([f(b), f(a)], [f(d), f(c)], v)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::{alpha_part, bd_r_matrix, beta_part, gamma_part};

    #[test]
    fn psi_values() {
        assert_eq!(PsiTable::new(2, 5).unwrap().values, vec![3, 1, 4, 2, 5]);
        assert_eq!(
            PsiTable::new(1, 6 + 1).unwrap().values,
            (1..=7).collect::<Vec<_>>()
        );
        for (m, n) in [(3, 7), (5, 12), (12, 31)] {
            assert_eq!(psi(m, n, n), n);
        }
    }

    #[test]
    fn r23_column() {
        let c = ClosedForm::new(1, 3).unwrap();
        let col = c.column(2, 1);
        assert_eq!(col.len(), 2);
        assert_eq!(col[&[2, 1]], frac(1, 6));
        assert_eq!(col[&[1, 2]], frac(1, 2));
        assert!(c.column(2, 2).is_empty());
    }

    #[test]
    fn matches_bd_small() {
        for (m, n) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7)] {
            assert_eq!(
                cg_closed_form(m, n).unwrap(),
                bd_r_matrix(n - m, n).unwrap().to_op(),
                "({m},{n})"
            );
        }
    }

    #[test]
    fn specialized_displays() {
        for n in 2..=8 {
            assert_eq!(cg_m1_display(n), cg_closed_form(1, n).unwrap());
        }
        for n in [3, 5, 7, 9] {
            assert_eq!(cg_m2_display(n).unwrap(), cg_closed_form(2, n).unwrap());
        }
        assert!(cg_m2_display(4).is_err());
    }

    #[test]
    fn part_displays() {
        for (m, n) in [(1, 4), (2, 5), (3, 7), (5, 8)] {
            assert_eq!(
                alpha_display(m, n).unwrap(),
                alpha_part(n - m, n).unwrap().to_op()
            );
            assert_eq!(
                beta_display(m, n).unwrap(),
                beta_part(n - m, n).unwrap().to_op()
            );
            let rest = cg_closed_form(m, n)
                .unwrap()
                .sub(&beta_part(n - m, n).unwrap().to_op())
                .unwrap()
                .sub(&gamma_part(n).to_op())
                .unwrap();
            assert_eq!(rest, alpha_display(m, n).unwrap());
        }
    }

    #[test]
    fn phi_twist_relations() {
        for (m, n) in [(1, 3), (2, 5), (3, 8)] {
            let r = bd_r_matrix(m, n).unwrap();
            assert_eq!(r.phi_twist(), bd_r_matrix(n - m, n).unwrap());
            assert_eq!(
                phi_twist_op(&r.to_op()),
                bd_r_matrix(n - m, n).unwrap().to_op()
            );
            let b = beta_part(m, n).unwrap();
            assert_eq!(b.phi_twist(), b.scale(&int(-1)));
            assert_eq!(gamma_part(n).phi_twist(), gamma_part(n));
        }
    }
}
