//! Carrier of b_CG, the form ⟨ř⁻¹X, Y⟩ and a Frobenius functional for it.

use cgr::carrier::{
    carrier, frobenius_functional_check, gg_corrected_functional, gg_displayed_functional,
    parabolic, r_check, solve_frobenius_functional, Functional,
};
use cgr::poly::b_cg;
use cgr::scalar::{format_scalar, int};

fn main() -> cgr::Result<()> {
    let (n, u, t) = (5, int(2), int(3));
    let b = b_cg(n, &u, &t)?;
    let f = carrier(&b)?;
    println!(
        "carrier dimension {} (parabolic: {})",
        f.dim(),
        f == parabolic(n - 2, n)?
    );
    let data = r_check(&b, &f)?;
    println!("form skew: {}, cocycle: {}", data.skew, data.cocycle);
    println!(
        "displayed functional passes: {}",
        frobenius_functional_check(&data, &gg_displayed_functional(n, &u, &t)?)
    );
    println!(
        "corrected functional passes: {}",
        frobenius_functional_check(&data, &gg_corrected_functional(n, &u, &t)?)
    );
    if let Some(sol) = solve_frobenius_functional(&data)? {
        let eta = Functional::from_dual(&f, &sol.particular);
        let terms: Vec<String> = eta
            .coeffs
            .iter()
            .map(|((j, l), c)| format!("{} e*_{j}{l}", format_scalar(c)))
            .collect();
        println!(
            "a solution: {} (+ {} free directions)",
            terms.join(" + "),
            sol.dimension()
        );
    }
    Ok(())
}
