//! The β_T system for T_{m,n}: the displayed β is its unique solution.

use cgr::bd::{beta_part, cg_triple, solve_beta_variety, verify_beta_variety};

fn main() -> cgr::Result<()> {
    for (m, n) in [(1, 3), (2, 5), (3, 7), (5, 12)] {
        let t = cg_triple(m, n)?;
        let sol = solve_beta_variety(&t);
        println!(
            "T_({m},{n}): S0 = {:?}, beta satisfies system: {}, solution dimension: {:?}",
            t.s0,
            verify_beta_variety(&t, &beta_part(m, n)?)?,
            sol.map(|s| s.dimension)
        );
    }
    Ok(())
}
