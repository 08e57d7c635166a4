//! The Jordanian boundary r-matrices [X, r_{1,n}].

use cgr::carrier::{carrier, jordanian, jordanian_x, nilpotent_exp_action, parabolic};
use cgr::cg::cg_closed_form;
use cgr::cyb::find_lambda;
use cgr::scalar::frac;

fn main() -> cgr::Result<()> {
    for n in 2..=6 {
        let j = jordanian(n)?;
        let r = cg_closed_form(n - 1, n)?;
        let s = frac(5, 2);
        let linear = nilpotent_exp_action(&jordanian_x(n), &s, &r)? == r.add(&j.scale(&s))?;
        println!(
            "n = {n}: {}, carrier is p_(1,{n}): {}, orbit is linear in s: {linear}",
            find_lambda(&j)?.to_json_value(),
            carrier(&j)? == parabolic(1, n)?
        );
    }
    Ok(())
}
