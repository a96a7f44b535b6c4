//! Brute-force check that solution fields give a consistent family of
//! finite-volume measures, and that nearby fields do not.

use cayley_potts::model::{FieldVector, ModelParams};
use cayley_potts::periodic::solve_periodic_class;
use cayley_potts::ti::enumerate_ti;
use cayley_potts::verifier::{check_compatibility, FieldAssignment, OracleModel};

fn main() -> cayley_potts::Result<()> {
    let ferro = ModelParams::new(3, 3, 3.0)?;
    let model = OracleModel::from(&ferro);
    for v in enumerate_ti(&ferro)?.lifted_vectors(3) {
        let violation = check_compatibility(&model, &FieldAssignment::Constant(v.clone()), 1)?;
        let mut h = v.log();
        h[0] += 1e-2;
        let nudged = FieldVector::from_log(&h)?;
        let off = check_compatibility(&model, &FieldAssignment::Constant(nudged), 1)?;
        println!(
            "constant {:?}: {violation:.1e}  (h_1 + 0.01: {off:.1e})",
            v.as_slice()
        );
    }

    let anti = ModelParams::new(3, 3, 0.2)?;
    let model = OracleModel::from(&anti);
    for s in solve_periodic_class(&anti, 1)?.solutions {
        let (u, v) = s.field_vectors(3).expect("m < q")?;
        let paired = check_compatibility(&model, &FieldAssignment::parity(u.clone(), v), 1)?;
        let constant = check_compatibility(&model, &FieldAssignment::Constant(u.clone()), 1)?;
        println!(
            "parity {:?}: {paired:.1e}  (as constant: {constant:.1e})",
            u.as_slice()
        );
    }
    Ok(())
}
