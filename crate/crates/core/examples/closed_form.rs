//! Builds r_{n−m,n} by the closed formula and by Belavin-Drinfeld data and compares them.

use cgr::bd::bd_r_matrix;
use cgr::cg::ClosedForm;
use cgr::scalar::format_scalar;

fn main() -> cgr::Result<()> {
    let (m, n) = (3, 8);
    let closed = ClosedForm::new(m, n)?;
    println!("image of e_5 (x) e_2 under r_{{{},{n}}}:", n - m);
    for (k, v) in closed.column(5, 2) {
        println!("  {} e_{} (x) e_{}", format_scalar(v), k[0], k[1]);
    }
    let from_bd = bd_r_matrix(n - m, n)?.to_op();
    println!(
        "closed form equals the BD construction: {}",
        closed.to_op() == from_bd
    );
    Ok(())
}
