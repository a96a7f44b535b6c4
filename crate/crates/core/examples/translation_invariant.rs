//! All translation-invariant solutions for q = 3, k = 3 below, at and
//! above the critical theta.

use cayley_potts::model::{ti_residual_norm, ModelParams};
use cayley_potts::ti::{critical_theta, enumerate_ti};

fn main() -> cayley_potts::Result<()> {
    let theta_cr = critical_theta(3, 1)?.theta_cr;
    for theta in [2.0, theta_cr, 3.0] {
        let params = ModelParams::new(3, 3, theta)?;
        let en = enumerate_ti(&params)?;
        println!(
            "theta = {theta:.10}: {} solutions (predicted {:?})",
            en.total_count_with_permutations, en.predicted
        );
        for v in en.lifted_vectors(3) {
            println!(
                "  z = {:?}  residual {:.1e}",
                v.as_slice(),
                ti_residual_norm(&params, &v)?
            );
        }
    }
    Ok(())
}
