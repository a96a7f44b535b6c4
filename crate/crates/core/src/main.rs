use std::process::ExitCode;

use cayley_potts::cli::{execute, Cli, EXIT_OK, EXIT_PARAMS};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARAMS } else { EXIT_OK });
        }
    };
    match execute(&cli) {
        Ok((code, report)) => {
            let has_out = match &cli.command {
                cayley_potts::cli::Command::Ti(a) => a.out.is_some(),
                cayley_potts::cli::Command::Periodic(a) => a.out.is_some(),
                cayley_potts::cli::Command::Sweep(_) => false,
            };
            if !has_out {
                println!("{}", report.to_json());
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
