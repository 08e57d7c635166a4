//! Command-line surface. Every command returns its JSON output and an exit code;
//! failures become `{"error": kind, "message": text}` objects.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::acceptance::{run_criterion, CRITERIA, DEFAULT_SEED};
use crate::bd::{bd_r_matrix, beta_part, cg_triple, solve_beta_variety, verify_beta_variety};
use crate::carrier::{
    carrier, frobenius_functional_check, r_check, solve_frobenius_functional, Functional,
};
use crate::cg::{cg_closed_form, CgParams};
use crate::cyb::{cyb_lambda, find_lambda, Classification, CybReport};
use crate::error::{Error, Result};
use crate::poly::{b_cg, r_via_dunkl_m1_with, r_via_dunkl_m2, CherednikParams};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::tensor::{MatrixN, SparseOp2};
use crate::wheels::WheelData;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "CGR_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "cgr",
    version,
    about = "Exact generalized Cremmer-Gervais r-matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Closed,
    Bd,
    Dunkl,
}

fn scalar_arg(s: &str) -> std::result::Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write r_{n−m,n} as canonical JSON.
    Gen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "closed")]
        construction: Construction,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true, default_value = "1")]
        kappa: Scalar,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true, default_value = "1/2")]
        c0: Scalar,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true, default_value = "0")]
        c1: Scalar,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify an operator file by the classical Yang-Baxter equation.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        lambda: Option<Scalar>,
    },
    /// Entry-wise comparison of two operator files.
    Compare { a: PathBuf, b: PathBuf },
    /// Euclid sequence, strings, minimal elements and optionally S̄(j', l').
    Wheels {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, num_args = 2, value_names = ["J", "L"])]
        pair: Option<Vec<i64>>,
    },
    /// Window matrix of the Dunkl-operator realization.
    Dunkl {
        #[arg(long)]
        m: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        kappa: Scalar,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        c0: Scalar,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true, default_value = "0")]
        c1: Scalar,
    },
    /// The boundary r-matrix b_CG(u, t).
    Boundary {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        u: Scalar,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        t: Scalar,
    },
    /// Carrier, ř and Frobenius data of a triangular r-matrix.
    Carrier {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The triple T_{m,n}, its r-matrix and the β variety check.
    Bd {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Run the acceptance criteria and print one line per criterion.
    Acceptance {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        criterion: Option<u8>,
        /// Emit JSON instead of text lines.
        #[arg(long)]
        json: bool,
    },
}

/// Text for stdout plus an exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome {
            stdout: v.to_string(),
            code: 0,
        }
    }

    fn with_code(v: Value, ok: bool) -> Self {
        Outcome {
            stdout: v.to_string(),
            code: if ok { 0 } else { 1 },
        }
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}

fn read_op(path: &Path) -> Result<SparseOp2> {
    SparseOp2::from_json(&std::fs::read_to_string(path)?)
}

fn matrix_json(m: &MatrixN) -> Value {
    Value::Array(
        m.entries()
            .map(|((i, j), v)| json!([i, j, format_scalar(v)]))
            .collect(),
    )
}

fn functional_json(f: &Functional) -> Value {
    Value::Array(
        f.coeffs
            .iter()
            .map(|((i, j), v)| json!([i, j, format_scalar(v)]))
            .collect(),
    )
}

fn cmd_gen(
    m: usize,
    n: usize,
    construction: Construction,
    params: (Scalar, Scalar, Scalar),
    out: Option<&Path>,
) -> Result<Outcome> {
    let (kappa, c0, c1) = params;
    CgParams::new(m, n)?;
    let op = match construction {
        Construction::Closed => cg_closed_form(m, n)?,
        Construction::Bd => bd_r_matrix(n - m, n)?.to_op(),
        Construction::Dunkl => match m {
            1 => r_via_dunkl_m1_with(n, &CherednikParams::new(1, kappa, c0, c1)?)?,
            2 => r_via_dunkl_m2(n, &CherednikParams::new(2, kappa, c0, c1)?)?,
            _ => {
                return Err(Error::InvalidParameters(format!(
                    "Dunkl construction needs m = 1 or 2, got {m}"
                )))
            }
        },
    };
    let text = op.to_json();
    match out {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(Outcome {
                stdout: String::new(),
                code: 0,
            })
        }
        None => Ok(Outcome {
            stdout: text,
            code: 0,
        }),
    }
}

fn cmd_verify(path: &Path, lambda: Option<Scalar>) -> Result<Outcome> {
    let r = read_op(path)?;
    let rep = match lambda {
        None => find_lambda(&r)?,
        Some(l) => {
            let residual = cyb_lambda(&r, &l)?.nnz();
            let classification = match (residual, l.is_zero()) {
                (0, true) => Classification::Triangular,
                (0, false) => Classification::Quasitriangular,
                _ => Classification::NotRMatrix,
            };
            let lambda = (residual == 0).then_some(l);
            CybReport {
                lambda,
                residual_nonzero_count: residual,
                classification,
            }
        }
    };
    Ok(Outcome::with_code(
        rep.to_json_value(),
        rep.classification != Classification::NotRMatrix,
    ))
}

fn cmd_compare(a: &Path, b: &Path) -> Result<Outcome> {
    let (x, y) = (read_op(a)?, read_op(b)?);
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch(x.n(), y.n()));
    }
    let diff = x.sub(&y)?;
    let shown: Vec<Value> = diff
        .entries()
        .into_iter()
        .take(20)
        .map(|(o, i, _)| {
            json!([
                o,
                i,
                format_scalar(&x.get(o, i)),
                format_scalar(&y.get(o, i))
            ])
        })
        .collect();
    let equal = diff.is_zero();
    Ok(Outcome::with_code(
        json!({ "equal": equal, "differences": diff.nnz(), "first": shown }),
        equal,
    ))
}

fn cmd_wheels(m: i64, n: i64, pair: Option<&[i64]>) -> Result<Outcome> {
    let w = WheelData::new(m, n)?;
    let mut v = json!({
        "m": m,
        "n": n,
        "seq": w.seq,
        "strings": w.strings,
        "minimal_elements": w.minimal_elements,
    });
    if let Some(&[j, l]) = pair {
        for x in [j, l] {
            if !(1..=n).contains(&x) {
                return Err(Error::IndexOutOfRange(format!("{x} not in [1, {n}]")));
            }
        }
        v["sbar"] = json!(w.sbar_closed(j, l));
    }
    Ok(Outcome::ok(v))
}

fn cmd_dunkl(m: u8, n: usize, kappa: Scalar, c0: Scalar, c1: Scalar) -> Result<Outcome> {
    let params = CherednikParams::new(m, kappa, c0, c1)?;
    let op = if m == 1 {
        r_via_dunkl_m1_with(n, &params)?
    } else {
        r_via_dunkl_m2(n, &params)?
    };
    Ok(Outcome::ok(op.to_json_value()))
}

fn cmd_carrier(path: &Path) -> Result<Outcome> {
    let r = read_op(path)?;
    let f = carrier(&r)?;
    let basis: Vec<Value> = f.basis().iter().map(matrix_json).collect();
    let frobenius = match r_check(&r, &f) {
        Ok(data) => {
            let eta = solve_frobenius_functional(&data)?
                .map(|s| Functional::from_dual(&f, &s.particular))
                .filter(|eta| frobenius_functional_check(&data, eta));
            json!({
                "invertible": true,
                "skew": data.skew,
                "cocycle": data.cocycle,
                "functional_check": eta.is_some(),
                "functional": eta.as_ref().map(functional_json),
            })
        }
        Err(Error::SingularRCheck) => json!({ "invertible": false, "functional_check": false }),
        Err(e) => return Err(e),
    };
    Ok(Outcome::ok(
        json!({ "dimension": f.dim(), "basis": basis, "frobenius": frobenius }),
    ))
}

fn cmd_bd(m: usize, n: usize) -> Result<Outcome> {
    let t = cg_triple(m, n)?;
    let zeta: Vec<Value> = t.zeta.iter().map(|(a, b)| json!([a, b])).collect();
    let holds = verify_beta_variety(&t, &beta_part(m, n)?)?;
    let dim = solve_beta_variety(&t).map(|s| s.dimension);
    Ok(Outcome::ok(json!({
        "m": m,
        "n": n,
        "s0": t.s0,
        "s1": t.s1,
        "zeta": zeta,
        "beta_variety": { "holds": holds, "dimension": dim },
        "r_matrix": bd_r_matrix(m, n)?.to_op().to_json_value(),
    })))
}

fn cmd_acceptance(seed: u64, only: Option<u8>, as_json: bool) -> Outcome {
    let ids: Vec<u8> = match only {
        Some(id) => vec![id],
        None => CRITERIA.iter().map(|c| c.0).collect(),
    };
    let results: Vec<_> = ids.into_iter().map(|id| run_criterion(id, seed)).collect();
    let all = results.iter().all(|r| r.passed);
    let stdout = if as_json {
        let items: Vec<Value> = results.iter().map(|r| r.to_json_value()).collect();
        json!({ "seed": seed, "passed": all, "criteria": items }).to_string()
    } else {
        let mut lines = vec![format!("seed {seed}")];
        lines.extend(results.iter().map(|r| r.line()));
        lines.join("\n")
    };
    Outcome {
        stdout,
        code: if all { 0 } else { 1 },
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Gen {
            m,
            n,
            construction,
            kappa,
            c0,
            c1,
            out,
        } => cmd_gen(m, n, construction, (kappa, c0, c1), out.as_deref()),
        Command::Verify { input, lambda } => cmd_verify(&input, lambda),
        Command::Compare { a, b } => cmd_compare(&a, &b),
        Command::Wheels { m, n, pair } => cmd_wheels(m, n, pair.as_deref()),
        Command::Dunkl {
            m,
            n,
            kappa,
            c0,
            c1,
        } => cmd_dunkl(m, n, kappa, c0, c1),
        Command::Boundary { n, u, t } => Ok(Outcome::ok(b_cg(n, &u, &t)?.to_json_value())),
        Command::Carrier { input } => cmd_carrier(&input),
        Command::Bd { m, n } => cmd_bd(m, n),
        Command::Acceptance {
            seed,
            criterion,
            json,
        } => Ok(cmd_acceptance(seed, criterion, json)),
    }
}

/// Sizes the global thread pool from `CGR_THREADS`, if set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let k: usize = v.parse().map_err(|_| {
            Error::InvalidParameters(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        run(Cli::try_parse_from(std::iter::once("cgr").chain(args.iter().copied())).unwrap())
    }

    #[test]
    fn gen_closed_contains_sixth() {
        let out = run_args(&["gen", "--m", "1", "--n", "3"]).unwrap();
        assert!(out.stdout.contains("\"1/6\""));
        assert!(run_args(&["gen", "--m", "2", "--n", "4"]).is_err());
    }

    #[test]
    fn gen_constructions_agree() {
        let a = run_args(&["gen", "--m", "2", "--n", "5"]).unwrap();
        let b = run_args(&[
            "gen",
            "--m",
            "2",
            "--n",
            "5",
            "--construction",
            "dunkl",
            "--kappa",
            "1",
            "--c0",
            "1/2",
        ])
        .unwrap();
        let c = run_args(&["gen", "--m", "2", "--n", "5", "--construction", "bd"]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(run_args(&["gen", "--m", "3", "--n", "5", "--construction", "dunkl"]).is_err());
    }

    #[test]
    fn wheels_pair() {
        let out = run_args(&["wheels", "--m", "12", "--n", "31", "--pair", "15", "22"]).unwrap();
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["sbar"], json!([16, 17, 19, 22]));
    }

    #[test]
    fn bd_output() {
        let out = run_args(&["bd", "--m", "2", "--n", "5"]).unwrap();
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["beta_variety"], json!({"holds": true, "dimension": 0}));
        assert_eq!(v["s0"], json!([1, 2, 4]));
    }

    #[test]
    fn error_objects() {
        let e = run_args(&["gen", "--m", "2", "--n", "4"]).unwrap_err();
        assert_eq!(error_json(&e)["error"], "not_coprime");
    }
}
