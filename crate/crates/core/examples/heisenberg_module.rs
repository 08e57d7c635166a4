//! The module generated by r_{n−2,n} under E1 and E2, and the boundary family b_CG.

use cgr::cyb::find_lambda;
use cgr::poly::{b_cg, e1_matrix, e2_matrix, module_structure_check};
use cgr::scalar::frac;

fn main() -> cgr::Result<()> {
    let n = 7;
    let c = e1_matrix(n).commutator(&e2_matrix(n));
    println!(
        "[E1, E2] central in span(E1, E2): {}",
        c.commutator(&e1_matrix(n)).is_zero() && c.commutator(&e2_matrix(n)).is_zero()
    );
    for (name, ok) in module_structure_check(n)? {
        println!("  {name}: {ok}");
    }
    let b = b_cg(n, &frac(2, 3), &frac(-1, 2))?;
    println!("b_CG(2/3, -1/2): {}", find_lambda(&b)?.to_json_value());
    Ok(())
}
