use cayley_potts::model::ModelParams;
use cayley_potts::periodic::count_periodic_measures;

fn main() -> cayley_potts::Result<()> {
    for (q, k) in [(3, 3), (4, 5), (5, 6)] {
        let count = count_periodic_measures(&ModelParams::new(q, k, 0.1)?)?;
        println!(
            "q = {q}, k = {k}: {} period-two solutions (2(2^q - 1) = {})",
            count.total, count.predicted
        );
        for c in &count.breakdown {
            println!(
                "  m = {}: {} copies x {} = {}",
                c.m, c.multiplicity, c.period_two_solutions, c.contribution
            );
        }
    }
    Ok(())
}
