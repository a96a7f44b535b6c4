use cayley_potts::poly::{
    cubic_cardano, descartes_positive_bound, numeric_roots, reduced_cubic, RootDomain,
};

fn main() -> cayley_potts::Result<()> {
    for (theta, q, m) in [(3.0, 3, 1), (3.0, 3, 2), (2.0, 3, 1), (4.5, 5, 2)] {
        let closed = cubic_cardano(theta, q, m)?;
        let cubic = reduced_cubic(theta, q, m)?;
        let oracle = numeric_roots(&cubic, RootDomain::Real)?;
        println!(
            "theta={theta} q={q} m={m}  Descartes bound {}",
            descartes_positive_bound(&cubic)
        );
        println!(
            "  cardano {:?} cross-checked {}",
            closed.values(),
            closed.cross_checked
        );
        println!("  oracle  {:?} ({:?})", oracle.values(), oracle.method);
    }
    Ok(())
}
