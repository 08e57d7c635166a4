use std::process::ExitCode;

use cgr::acceptance::{run_criterion, CRITERIA, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("CGR_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    println!("acceptance suite, seed {seed}");
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let res = run_criterion(id, seed);
        println!("{}", res.line());
        failed += usize::from(!res.passed);
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
