//! The end-to-end acceptance suite, shared by the CLI and the `acceptance` test target.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bd::{bd_r_matrix, beta_part, cg_triple, solve_beta_variety, verify_beta_variety};
use crate::carrier::{
    carrier, frobenius_functional_check, gg_displayed_functional, jordanian, nilpotent_exp_action,
    parabolic, r_check,
};
use crate::cg::cg_closed_form;
use crate::cyb::{cyb_failures, find_lambda, Classification};
use crate::error::Result;
use crate::linalg::rank;
use crate::poly::{
    b_cg, e1_matrix, e2_matrix, element_e_cyb, elements_v, lemma_cyb4, module_structure_check,
    r_via_dunkl_m1, r_via_dunkl_m2, verify_relations, CherednikParams,
};
use crate::scalar::{format_scalar, frac, gcd, int, Scalar};
use crate::tensor::{all_indices, SparseOp2};
use crate::wheels::{sbar_bruteforce_with, WheelData};

pub const DEFAULT_SEED: u64 = 20_241_015;

/// Seeded sampler of rationals p/q with p, q ∈ [−9, 9] \ {0}.
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn digit(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=18);
        if v > 9 {
            9 - v
        } else {
            v
        }
    }

    pub fn sample(&mut self) -> Scalar {
        let p = self.digit();
        let q = self.digit();
        frac(p, q)
    }

    /// Cherednik parameters for m = 2; c0 is never zero by construction.
    pub fn cherednik(&mut self, m: u8) -> CherednikParams {
        let (kappa, c0, c1) = (self.sample(), self.sample(), self.sample());
        CherednikParams::new(m, kappa, c0, c1).expect("m is 1 or 2")
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "{status} [{}] {} ({:.1}s): {}",
            self.id, self.name, self.seconds, self.detail
        )
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
        })
    }
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "cross-construction equality"),
    (2, "wheels oracle"),
    (3, "CYB certification"),
    (4, "Dunkl realizations"),
    (5, "operator identities"),
    (6, "module structure"),
    (7, "boundary instances"),
    (8, "beta variety"),
];

fn coprime_pairs(nmin: usize, nmax: usize) -> Vec<(usize, usize)> {
    (nmin..=nmax)
        .flat_map(|n| {
            (1..n)
                .filter(move |&m| gcd(m as i64, n as i64) == 1)
                .map(move |m| (m, n))
        })
        .collect()
}

/// Collects failure descriptions; an empty list means the criterion holds.
type Check = Result<Vec<String>>;

fn criterion_1() -> Check {
    Ok(coprime_pairs(2, 12)
        .into_par_iter()
        .filter_map(
            |(m, n)| match (bd_r_matrix(n - m, n), cg_closed_form(m, n)) {
                (Ok(a), Ok(b)) if a.to_op() == b => None,
                (Ok(_), Ok(_)) => Some(format!("({m},{n}) differs")),
                (Err(e), _) | (_, Err(e)) => Some(format!("({m},{n}): {e}")),
            },
        )
        .collect())
}

fn criterion_2() -> Check {
    let mut failures: Vec<String> = coprime_pairs(2, 20)
        .into_par_iter()
        .filter_map(|(m, n)| {
            let w = WheelData::new(m as i64, n as i64).ok()?;
            let table = cg_triple(m, n).ok()?.order_table();
            let n = n as i64;
            let bad = (1..=n)
                .flat_map(|a| (1..=n).map(move |b| (a, b)))
                .filter(|&(a, b)| w.sbar_closed(a, b) != sbar_bruteforce_with(&table, n, a, b))
                .count();
            (bad > 0).then(|| format!("({m},{n}): {bad} position pairs differ"))
        })
        .collect();
    let w = WheelData::new(12, 31)?;
    if w.sbar_closed(15, 22) != BTreeSet::from([16, 17, 19, 22]) {
        failures.push("S(15,22) for (12,31)".into());
    }
    if WheelData::new(5, 12)?.sbar_closed(3, 5) != BTreeSet::from([4, 5, 7]) {
        failures.push("S(3,5) for (5,12)".into());
    }
    let want: Vec<Vec<i64>> = vec![
        vec![1, 13, 25],
        vec![6, 18, 30],
        vec![11, 23],
        vec![4, 16, 28],
        vec![9, 21],
        vec![2, 14, 26],
        vec![7, 19, 31],
        vec![12, 24],
        vec![5, 17, 29],
        vec![10, 22],
        vec![3, 15, 27],
        vec![8, 20],
    ];
    if w.strings != want {
        failures.push("strings for (12,31)".into());
    }
    Ok(failures)
}

fn criterion_3() -> Check {
    let mut failures = Vec::new();
    for (m, n) in coprime_pairs(3, 9) {
        let rep = find_lambda(&cg_closed_form(m, n)?)?;
        let ok = rep.classification == Classification::Quasitriangular
            && rep.residual_nonzero_count == 0
            && (m != 2 || rep.lambda == Some(frac(1, 4)));
        if !ok {
            failures.push(format!("({m},{n}): {}", rep.to_json_value()));
        }
    }
    Ok(failures)
}

fn criterion_4(seed: u64) -> Check {
    let mut failures = Vec::new();
    for n in 2..=12 {
        if r_via_dunkl_m1(n)? != cg_closed_form(1, n)? {
            failures.push(format!("m = 1, n = {n}"));
        }
    }
    let mut rng = RationalSampler::new(seed);
    for n in [3, 5, 7, 9] {
        let closed = cg_closed_form(2, n)?;
        for _ in 0..5 {
            let p = rng.cherednik(2);
            if r_via_dunkl_m2(n, &p)? != closed {
                failures.push(format!(
                    "m = 2, n = {n}, (kappa, c0, c1) = ({}, {}, {})",
                    format_scalar(&p.kappa),
                    format_scalar(&p.c0),
                    format_scalar(&p.c1)
                ));
            }
        }
    }
    Ok(failures)
}

fn criterion_5(seed: u64) -> Check {
    let mut failures = Vec::new();
    let mut rng = RationalSampler::new(seed.wrapping_add(5));
    for m in [1, 2] {
        for _ in 0..2 {
            let p = rng.cherednik(m);
            let rep = verify_relations(&p, 8)?;
            if !rep.passed() {
                failures.push(format!("relations for m = {m}: {:?}", rep.failures));
            }
        }
    }
    let params: Vec<_> = (0..3).map(|_| rng.cherednik(2)).collect();
    for p in &params {
        if !element_e_cyb(p, 10)? {
            failures.push(format!("CYB for E at c0 = {}", format_scalar(&p.c0)));
        }
    }
    let mut pairs: Vec<(Scalar, Scalar)> =
        [5, 7, 9].iter().map(|&n| (int(1), frac(2, n))).collect();
    pairs.push((int(0), int(0)));
    pairs.extend((0..5).map(|_| (rng.sample(), rng.sample())));
    for (a1, a2) in &pairs {
        if !lemma_cyb4(a1, a2, 5)? {
            failures.push(format!(
                "lemma at ({}, {})",
                format_scalar(a1),
                format_scalar(a2)
            ));
        }
    }
    Ok(failures)
}

fn op_vector(op: &SparseOp2) -> Vec<Scalar> {
    let n = op.n();
    let idx = all_indices::<2>(n);
    idx.iter()
        .flat_map(|o| idx.iter().map(move |i| op.get(*o, *i)))
        .collect()
}

fn criterion_6(seed: u64) -> Check {
    let mut failures = Vec::new();
    for n in [5, 7, 9] {
        for (name, ok) in module_structure_check(n)? {
            if !ok {
                failures.push(format!("n = {n}: {name}"));
            }
        }
        let v = elements_v(n)?;
        let mut rows = vec![op_vector(&cg_closed_form(2, n)?)];
        rows.extend(v.iter().map(op_vector));
        let rk = rank(&rows);
        if rk != 5 {
            failures.push(format!("n = {n}: rank {rk}"));
        }
    }
    let mut rng = RationalSampler::new(seed.wrapping_add(6));
    for n in [5, 7] {
        let v = elements_v(n)?;
        let cols = all_indices::<3>(n);
        for _ in 0..10 {
            let mut w = SparseOp2::zero(n);
            for vi in &v {
                w = w.add(&vi.scale(&rng.sample()))?;
            }
            if cyb_failures(&w, &Scalar::zero(), &cols)? != 0 {
                failures.push(format!("n = {n}: random combination is not triangular"));
            }
        }
    }
    Ok(failures)
}

fn criterion_7() -> Check {
    let params = [(1, 1), (2, 3), (1, -2)];
    let cases: Vec<(usize, i64, i64)> = [5, 7, 9]
        .iter()
        .flat_map(|&n| params.iter().map(move |&(u, t)| (n, u, t)))
        .collect();
    let results: Vec<(String, Vec<&'static str>)> = cases
        .into_par_iter()
        .map(|(n, u, t)| -> Result<(String, Vec<&'static str>)> {
            let tag = format!("({n},{u},{t})");
            let (u, t) = (int(u), int(t));
            let mut out = Vec::new();
            let r = cg_closed_form(2, n)?;
            let b = b_cg(n, &u, &t)?;
            let moved = nilpotent_exp_action(
                &e2_matrix(n),
                &u,
                &nilpotent_exp_action(&e1_matrix(n), &t, &r)?,
            )?;
            if moved.sub(&r)? != b {
                out.push("orbit identity");
            }
            let f = carrier(&b)?;
            if f != parabolic(n - 2, n)? || f.dim() != n * n - 1 - 2 * (n - 2) {
                out.push("carrier");
            }
            match r_check(&b, &f) {
                Ok(data) => {
                    if !data.cocycle || !data.skew {
                        out.push("cocycle");
                    }
                    if !frobenius_functional_check(&data, &gg_displayed_functional(n, &u, &t)?) {
                        out.push("displayed Frobenius functional");
                    }
                }
                Err(_) => out.push("r-check invertible"),
            }
            Ok((tag, out))
        })
        .collect::<Result<_>>()?;
    let mut grouped: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for (tag, checks) in results {
        for c in checks {
            grouped.entry(c).or_default().push(tag.clone());
        }
    }
    let mut failures: Vec<String> = grouped
        .into_iter()
        .map(|(c, tags)| format!("{c} fails at (n,u,t) in {}", tags.join(" ")))
        .collect();
    for n in 2..=7 {
        let j = jordanian(n)?;
        if cyb_failures(&j, &Scalar::zero(), &all_indices::<3>(n))? != 0 {
            failures.push(format!("Jordanian n = {n}: CYB_0"));
        }
        if carrier(&j)? != parabolic(1, n)? {
            failures.push(format!("Jordanian n = {n}: carrier"));
        }
    }
    Ok(failures)
}

fn criterion_8() -> Check {
    Ok(coprime_pairs(2, 12)
        .into_par_iter()
        .filter_map(|(m, n)| {
            let check = || -> Result<bool> {
                let t = cg_triple(m, n)?;
                let ok = verify_beta_variety(&t, &beta_part(m, n)?)?;
                let dim = solve_beta_variety(&t).map(|s| s.dimension);
                Ok(ok && dim == Some(0))
            };
            match check() {
                Ok(true) => None,
                Ok(false) => Some(format!("({m},{n})")),
                Err(e) => Some(format!("({m},{n}): {e}")),
            }
        })
        .collect())
}

fn summarize(failures: &[String]) -> String {
    match failures {
        [] => "ok".into(),
        [one] => one.clone(),
        [first, rest @ ..] if rest.len() > 8 => format!("{first}; ... {} more", rest.len()),
        _ => failures.join("; "),
    }
}

/// Runs criterion `id`; panics inside a check are reported as failures.
pub fn run_criterion(id: u8, seed: u64) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown", |c| c.1);
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(seed),
        5 => criterion_5(seed),
        6 => criterion_6(seed),
        7 => criterion_7(),
        8 => criterion_8(),
        _ => Ok(vec![format!("no criterion {id}")]),
    }));
    let (passed, detail) = match outcome {
        Ok(Ok(f)) => (f.is_empty(), summarize(&f)),
        Ok(Err(e)) => (false, format!("error: {e}")),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panic: {msg}"))
        }
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|(id, _)| run_criterion(*id, seed))
        .collect()
}
