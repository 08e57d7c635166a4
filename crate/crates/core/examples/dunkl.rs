//! Realizes r_{n−2,n} through Dunkl operators of G(2,1,2) and checks the algebra relations.

use cgr::cg::cg_closed_form;
use cgr::poly::{dunkl_y, r_via_dunkl_m2, verify_relations, CherednikParams};
use cgr::scalar::{format_scalar, frac};

fn main() -> cgr::Result<()> {
    let params = CherednikParams::new(2, frac(3, 2), frac(-1, 4), frac(5, 3))?;
    let rep = verify_relations(&params, 6)?;
    println!(
        "{} relations checked, failures: {:?}",
        rep.checked.len(),
        rep.failures
    );
    let y1 = dunkl_y(&params, 1)?;
    print!("y1 . x1^3 x2 =");
    for (e, c) in y1.apply_monomial(3, 1)?.terms() {
        print!(" + ({}) x1^{} x2^{}", format_scalar(c), e[0], e[1]);
    }
    println!();
    let n = 7;
    println!(
        "window realization equals r_{{5,7}}: {}",
        r_via_dunkl_m2(n, &params)? == cg_closed_form(2, n)?
    );
    Ok(())
}
