//! Period-two solutions on one invariant class.
//!
//! cargo run --example period_two -- 4 5 2 0.2   (q k m theta)

use cayley_potts::model::ModelParams;
use cayley_potts::periodic::solve_periodic_class;

fn main() -> cayley_potts::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let q: usize = get(0, "3").parse().expect("q");
    let k: usize = get(1, "3").parse().expect("k");
    let m: usize = get(2, "1").parse().expect("m");
    let theta: f64 = get(3, "0.2").parse().expect("theta");

    let params = ModelParams::new(q, k, theta)?;
    let rep = solve_periodic_class(&params, m)?;
    println!(
        "window ({:.6}, {:.6}), theta_bar_cr = {}, critical points {:?}",
        rep.window.theta_1, rep.window.theta_2, rep.window.theta_bar_cr, rep.window.critical_points
    );
    for s in &rep.solutions {
        println!(
            "  {:?}: x = {:.12}, y = {:.12}, residuals {:.1e} {:.1e}",
            s.kind, s.x, s.y, s.residuals[0], s.residuals[1]
        );
    }
    println!(
        "predicted {:?}, ordering ok {:?}",
        rep.predicted, rep.ordering_ok
    );
    Ok(())
}
