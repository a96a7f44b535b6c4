use cayley_potts::cli::{run_sweep, sweep_table_text, SweepArgs};

fn main() {
    for (min, max) in [(2.0, 3.0), (0.05, 0.5)] {
        let args = SweepArgs {
            q: 3,
            k: 3,
            theta_min: min,
            theta_max: max,
            steps: 101,
            out: None,
        };
        match run_sweep(&args) {
            Ok(report) => {
                let table = sweep_table_text(&report);
                table
                    .lines()
                    .filter(|l| l.starts_with("# transition"))
                    .for_each(|l| println!("{l}"));
            }
            Err(f) => eprintln!("{}", f.message),
        }
    }
}
