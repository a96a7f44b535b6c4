//! Writes `x h(x)` for both parameter sets of the classic h-plot to
//! `h_q3_k3_m1.dat` and `h_q4_k5_m2.dat` in the current directory.

use std::fmt::Write as _;

use cayley_potts::model::ModelParams;
use cayley_potts::periodic::emit_h_profile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (q, k, m) in [(3, 3, 1), (4, 5, 2)] {
        let prof = emit_h_profile(&ModelParams::new(q, k, 0.2)?, m, 1000)?;
        let mut text = format!("# q = {q}, k = {k}, m = {m}, theta = 0.2\n");
        for (x, h) in &prof.samples {
            writeln!(text, "{x:.16e} {h:.16e}")?;
        }
        let path = format!("h_q{q}_k{k}_m{m}.dat");
        std::fs::write(&path, text)?;
        let (first, last) = (prof.samples[0].1, prof.samples[prof.samples.len() - 1].1);
        println!(
            "{path}: {} sign changes, h from {first:.3} to {last:.3}",
            prof.sign_changes()
        );
    }
    Ok(())
}
