//! Critical theta of every class for k = 3, through the tangency quartic
//! and through the scalar condition phi(x*(theta)) = 0.
//!
//! cargo run --example critical_temperature -- 5

use cayley_potts::ti::critical_theta;

fn main() -> cayley_potts::Result<()> {
    let q: usize = std::env::args().nth(1).map_or(3, |a| a.parse().expect("q"));
    println!(
        "{:>3} {:>20} {:>20} {:>20} {:>8}",
        "m", "theta_cr", "x**", "|closed - scalar|", "flagged"
    );
    for m in 1..q {
        let c = critical_theta(q, m)?;
        println!(
            "{m:>3} {:>20.15} {:>20.15} {:>20.3e} {:>8}",
            c.theta_cr,
            c.x_double_root,
            (c.theta_cr_closed_form - c.theta_cr_scalar).abs(),
            c.closed_form_flagged
        );
    }
    Ok(())
}
