//! Finds λ with CYB_λ(r) = 0 for a few Cremmer-Gervais r-matrices.

use cgr::cg::cg_closed_form;
use cgr::cyb::find_lambda;

fn main() -> cgr::Result<()> {
    for (m, n) in [(1, 4), (2, 5), (3, 7), (5, 8)] {
        let rep = find_lambda(&cg_closed_form(m, n)?)?;
        println!("r_{{{},{n}}}: {}", n - m, rep.to_json_value());
    }
    Ok(())
}
