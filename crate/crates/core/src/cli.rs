//! Command-line front end: `ti`, `periodic` and `sweep`.
//!
//! Exit codes: 0 success, 1 parameter or regime error, 2 a count disagrees
//! with its prediction (unless `--no-strict`), 3 numeric failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::error::Error;
use crate::model::ModelParams;
use crate::periodic::{
    count_periodic_measures, emit_h_profile, solve_periodic_class, HProfile, DEFAULT_PROFILE_THETA,
    PROFILE_INSET,
};
use crate::report::{CountCheck, OracleCheck, RunReport, SweepRow, SweepTable, Transition};
use crate::ti::{critical_theta, enumerate_ti, trivial_crossing_theta, CRITICAL_SNAP};
use crate::verifier::{check_compatibility, FieldAssignment, OracleModel};
use crate::ZERO_TOL;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARAMS: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

pub const DEFAULT_GRID: usize = 1000;
pub const DEFAULT_SWEEP_STEPS: usize = 101;

#[derive(Debug, Parser)]
#[command(
    name = "cayley-potts",
    version,
    about = "Potts model boundary laws on Cayley trees"
)]
pub struct Cli {
    /// Exit 0 even when a count disagrees with its prediction.
    #[arg(long, global = true)]
    pub no_strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Translation-invariant solutions and critical temperatures.
    Ti(TiArgs),
    /// Period-two solutions on the invariant sets (0 < theta < 1).
    Periodic(PeriodicArgs),
    /// Solution counts over a theta grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct TiArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "theta_critical_for"
    )]
    pub theta: Option<f64>,
    /// Report theta_cr for class m (k = 3 only) instead of solving.
    #[arg(long, conflicts_with = "theta")]
    pub theta_critical_for: Option<usize>,
    /// Check every solution with the brute-force compatibility oracle at this depth.
    #[arg(long)]
    pub verify_depth: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PeriodicArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub k: usize,
    /// Defaults to 0.2 when omitted.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, conflicts_with = "all_m")]
    pub m: Option<usize>,
    #[arg(long)]
    pub all_m: bool,
    /// Total period-two count over all classes and their copies.
    #[arg(long)]
    pub count: bool,
    /// Write `x h(x)` samples for the chosen `--m` to this file.
    #[arg(long, requires = "m")]
    pub profile: Option<PathBuf>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = DEFAULT_SWEEP_STEPS)]
    pub steps: usize,
    /// Write the count table here as whitespace-delimited text.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed run: exit code and message for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_) | Error::Regime(_) | Error::SizeGuard { .. } => EXIT_PARAMS,
            Error::Domain(_) | Error::CriticalMismatch { .. } | Error::Numeric(_) => EXIT_NUMERIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_PARAMS,
        message: format!("cannot write {}: {e}", path.display()),
    }
}

fn params_failure(message: String) -> Failure {
    Failure {
        code: EXIT_PARAMS,
        message,
    }
}

/// Validate `q` and `k` on their own, for commands where `theta` varies.
fn check_q_k(q: usize, k: usize) -> Result<(), Failure> {
    ModelParams::new(q, k, 2.0)
        .map(|_| ())
        .map_err(Failure::from)
}

pub fn run_ti(args: &TiArgs) -> Result<RunReport, Failure> {
    check_q_k(args.q, args.k)?;
    if let Some(m) = args.theta_critical_for {
        if args.k != 3 {
            return Err(params_failure(format!(
                "--theta-critical-for needs k = 3, got k = {}",
                args.k
            )));
        }
        if m == 0 || m >= args.q {
            return Err(params_failure(format!(
                "--theta-critical-for needs 1 <= m <= q - 1, got m = {m}"
            )));
        }
        let mut report = RunReport::new("ti", args.q, args.k, None);
        report.setting("theta_critical_for", m);
        let c = critical_theta(args.q, m)?;
        if c.closed_form_flagged {
            report.warnings.push(format!(
                "Ferrari closed form is not usable for q = {}, m = {m}; tangency quartic solved numerically",
                args.q
            ));
        }
        report.critical.push(c);
        return Ok(report);
    }

    let theta = args
        .theta
        .expect("clap enforces --theta without --theta-critical-for");
    let params = ModelParams::new(args.q, args.k, theta)?;
    let mut report = RunReport::new("ti", args.q, args.k, Some(theta));
    report.setting("zero_tolerance", ZERO_TOL);
    report.setting("critical_snap", CRITICAL_SNAP);
    let en = enumerate_ti(&params)?;
    let lifted = en.lifted_vectors(args.q);

    for c in en.critical.iter().filter(|c| c.closed_form_flagged) {
        report.warnings.push(format!(
            "Ferrari closed form is not usable for m = {}; tangency quartic solved numerically",
            c.m
        ));
    }
    if let Some(s) = en.solutions.iter().find_map(|s| s.snapped_theta) {
        report.warnings.push(format!(
            "theta is within {CRITICAL_SNAP} of theta_cr = {s}; treated as critical"
        ));
    }
    if let Some(t) =
        trivial_crossing_theta(args.q, args.k).filter(|t| (theta - t).abs() <= CRITICAL_SNAP)
    {
        report.warnings.push(format!(
            "theta is at (k + q - 1)/(k - 1) = {t}, where a nontrivial branch passes through z = 1 and each class loses a root"
        ));
    }
    report.counts.push(CountCheck {
        name: "ti_solutions".into(),
        found: en.total_count_with_permutations,
        predicted: en.predicted,
        matches: en.matches_prediction(),
    });
    if en.matches_prediction() == Some(false) {
        report.warnings.push(format!(
            "found {} distinct solution vectors, predicted {}",
            en.total_count_with_permutations,
            en.predicted.unwrap_or_default()
        ));
    }

    if let Some(depth) = args.verify_depth {
        report.setting("verify_depth", depth);
        let model = OracleModel::from(&params);
        for v in &lifted {
            let violation =
                check_compatibility(&model, &FieldAssignment::Constant(v.clone()), depth)?;
            report.oracle.push(OracleCheck {
                label: format!("constant field {:?}", v.as_slice()),
                depth,
                violation,
                tolerance: ZERO_TOL,
                passed: violation < ZERO_TOL,
            });
        }
    }
    report.critical = en.critical;
    report.ti_solutions = en.solutions;
    Ok(report)
}

fn write_profile(path: &Path, params: &ModelParams, profile: &HProfile) -> Result<(), Failure> {
    let mut text = String::new();
    let _ = writeln!(text, "# command: periodic --profile");
    let _ = writeln!(text, "# q = {}", params.q());
    let _ = writeln!(text, "# k = {}", params.k());
    let _ = writeln!(text, "# m = {}", profile.m);
    let _ = writeln!(text, "# theta = {}", profile.theta);
    let _ = writeln!(text, "# theta_bar_cr = {}", params.theta_bar_cr());
    let _ = writeln!(text, "# theta_1 = {}", profile.theta_1);
    let _ = writeln!(text, "# theta_2 = {}", profile.theta_2);
    let _ = writeln!(
        text,
        "# epsilon = {} (inset {PROFILE_INSET} of window width)",
        profile.epsilon
    );
    let _ = writeln!(text, "# grid = {}", profile.samples.len());
    let _ = writeln!(text, "# sign_changes = {}", profile.sign_changes());
    let _ = writeln!(text, "# columns: x h(x)");
    for (x, h) in &profile.samples {
        let _ = writeln!(text, "{x:.16e} {h:.16e}");
    }
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

pub fn run_periodic(args: &PeriodicArgs) -> Result<RunReport, Failure> {
    check_q_k(args.q, args.k)?;
    let theta = args.theta.unwrap_or(DEFAULT_PROFILE_THETA);
    let params = ModelParams::new(args.q, args.k, theta)?;
    let mut report = RunReport::new("periodic", args.q, args.k, Some(theta));
    if args.theta.is_none() {
        report.warnings.push(format!(
            "--theta not given; using default theta = {DEFAULT_PROFILE_THETA}"
        ));
    }
    report.setting("theta_bar_cr", params.theta_bar_cr());

    if theta > 1.0 {
        if args.count || args.profile.is_some() {
            return Err(Error::Regime(format!(
                "period-two solving needs 0 < theta < 1, got theta = {theta}"
            ))
            .into());
        }
        report.warnings.push(format!(
            "theta = {theta} is ferromagnetic; only the threshold theta_bar_cr is reported"
        ));
        return Ok(report);
    }

    let classes: Vec<usize> = match args.m {
        Some(m) => {
            if m == 0 || m > args.q {
                return Err(params_failure(format!(
                    "--m needs 1 <= m <= q, got m = {m}"
                )));
            }
            vec![m]
        }
        None if args.count => vec![],
        None => {
            if !args.all_m {
                report
                    .warnings
                    .push("no --m given; solving every class m = 1..q".into());
            }
            (1..=args.q).collect()
        }
    };
    if classes.contains(&args.q) {
        report.warnings.push(format!(
            "class m = q = {} has no field-vector form with q - 1 coordinates; solved as the reduced scalar system",
            args.q
        ));
    }
    for m in classes {
        let class = solve_periodic_class(&params, m)?;
        report.counts.push(CountCheck {
            name: format!("periodic_m{m}"),
            found: class.solutions.len(),
            predicted: class.predicted,
            matches: class.matches,
        });
        if class.ordering_ok == Some(false) {
            report
                .warnings
                .push(format!("class {m}: roots are not ordered x0 < 1 < x2"));
        }
        report.periodic_classes.push(class);
    }

    if args.count {
        let count = count_periodic_measures(&params)?;
        report.counts.push(CountCheck {
            name: "period_two_total".into(),
            found: count.total,
            predicted: Some(count.predicted),
            matches: Some(count.matches),
        });
        report.periodic_count = Some(count);
    }

    if let Some(path) = &args.profile {
        let m = args.m.expect("clap enforces --m with --profile");
        let grid = args.grid.unwrap_or(DEFAULT_GRID);
        if args.grid.is_none() {
            report
                .warnings
                .push(format!("--grid not given; using {DEFAULT_GRID} points"));
        }
        report.setting("grid", grid);
        report.setting("profile", path.display());
        let profile = emit_h_profile(&params, m, grid)?;
        report.setting("profile_sign_changes", profile.sign_changes());
        write_profile(path, &params, &profile)?;
    }
    Ok(report)
}

fn sweep_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if min == max || steps <= 1 {
        return vec![min];
    }
    (0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn transitions(
    rows: &[SweepRow],
    column: &str,
    value: impl Fn(&SweepRow) -> Option<usize>,
    references: &[f64],
    step: f64,
) -> Vec<Transition> {
    rows.windows(2)
        .filter_map(|w| {
            let (from, to) = (value(&w[0])?, value(&w[1])?);
            if from == to {
                return None;
            }
            let mid = 0.5 * (w[0].theta + w[1].theta);
            let reference = references
                .iter()
                .copied()
                .min_by(|a, b| (a - mid).abs().total_cmp(&(b - mid).abs()));
            Some(Transition {
                column: column.to_string(),
                from,
                to,
                theta_lo: w[0].theta,
                theta_hi: w[1].theta,
                reference,
                within_one_step: reference.map(|r| (r - mid).abs() <= step),
            })
        })
        .collect()
}

pub fn run_sweep(args: &SweepArgs) -> Result<RunReport, Failure> {
    check_q_k(args.q, args.k)?;
    let (min, max) = (args.theta_min, args.theta_max);
    if !(min > 0.0 && max >= min && max.is_finite()) {
        return Err(params_failure(format!(
            "sweep needs 0 < theta-min <= theta-max, got [{min}, {max}]"
        )));
    }
    let mut report = RunReport::new("sweep", args.q, args.k, None);
    report.setting("theta_min", min);
    report.setting("theta_max", max);
    report.setting("steps", args.steps);

    let grid = sweep_grid(min, max, args.steps);
    let step = if grid.len() > 1 {
        grid[1] - grid[0]
    } else {
        0.0
    };
    if grid.contains(&1.0) {
        report
            .warnings
            .push("theta = 1 is on the grid and was skipped".into());
    }

    let evaluated: Vec<(SweepRow, Vec<String>)> = grid
        .par_iter()
        .filter(|&&t| t != 1.0)
        .map(|&theta| {
            let params = ModelParams::new(args.q, args.k, theta).expect("q, k, theta validated");
            let mut notes = Vec::new();
            let ti_count = match enumerate_ti(&params) {
                Ok(en) => Some(en.total_count_with_permutations),
                Err(e) => {
                    notes.push(format!("theta = {theta}: ti failed: {e}"));
                    None
                }
            };
            let (periodic_m1, periodic_total) = if theta < 1.0 {
                let m1 = match solve_periodic_class(&params, 1) {
                    Ok(c) => Some(c.solutions.len()),
                    Err(e) => {
                        notes.push(format!("theta = {theta}: periodic m = 1 failed: {e}"));
                        None
                    }
                };
                (m1, count_periodic_measures(&params).ok().map(|c| c.total))
            } else {
                (None, None)
            };
            (
                SweepRow {
                    theta,
                    ti_count,
                    periodic_m1,
                    periodic_total,
                },
                notes,
            )
        })
        .collect();

    let mut rows = Vec::with_capacity(evaluated.len());
    for (row, notes) in evaluated {
        report.warnings.extend(notes);
        rows.push(row);
    }

    let mut ti_refs: Vec<f64> = if args.k == 3 {
        (1..args.q)
            .map(|m| critical_theta(args.q, m).map(|c| c.theta_cr))
            .collect::<crate::Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    ti_refs.extend(trivial_crossing_theta(args.q, args.k));
    let bar = ModelParams::new(args.q, args.k, 2.0)
        .expect("validated")
        .theta_bar_cr();
    let bar_refs: Vec<f64> = if bar > 0.0 { vec![bar] } else { vec![] };

    let mut found = transitions(&rows, "ti_count", |r| r.ti_count, &ti_refs, step);
    found.extend(transitions(
        &rows,
        "periodic_m1",
        |r| r.periodic_m1,
        &bar_refs,
        step,
    ));
    report.sweep = Some(SweepTable {
        step,
        rows,
        transitions: found,
    });

    if let Some(path) = &args.out {
        let table = sweep_table_text(&report);
        std::fs::write(path, table).map_err(|e| io_failure(path, e))?;
    }
    Ok(report)
}

fn cell(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |n| n.to_string())
}

/// Whitespace-delimited sweep table with `#` header lines.
pub fn sweep_table_text(report: &RunReport) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "# command: sweep");
    let _ = writeln!(text, "# q = {}", report.params.q);
    let _ = writeln!(text, "# k = {}", report.params.k);
    for (key, value) in &report.params.settings {
        let _ = writeln!(text, "# {key} = {value}");
    }
    let Some(sweep) = &report.sweep else {
        return text;
    };
    for t in &sweep.transitions {
        let _ = writeln!(
            text,
            "# transition {}: {} -> {} in ({}, {}), reference {}, within one step: {}",
            t.column,
            t.from,
            t.to,
            t.theta_lo,
            t.theta_hi,
            t.reference.map_or("-".into(), |r| r.to_string()),
            t.within_one_step.map_or("-".into(), |b| b.to_string()),
        );
    }
    let _ = writeln!(text, "# columns: theta ti_count periodic_m1 periodic_total");
    for r in &sweep.rows {
        let _ = writeln!(
            text,
            "{:.16e} {} {} {}",
            r.theta,
            cell(r.ti_count),
            cell(r.periodic_m1),
            cell(r.periodic_total)
        );
    }
    text
}

/// Run a parsed command. On success returns the exit code (0, or 2 when a
/// strict check fails) and the report.
pub fn execute(cli: &Cli) -> Result<(u8, RunReport), Failure> {
    let (report, out) = match &cli.command {
        Command::Ti(a) => (run_ti(a)?, a.out.as_deref()),
        Command::Periodic(a) => (run_periodic(a)?, a.out.as_deref()),
        Command::Sweep(a) => (run_sweep(a)?, None),
    };
    if let Some(path) = out {
        std::fs::write(path, report.to_json()).map_err(|e| io_failure(path, e))?;
    }
    let code = if report.all_checks_pass() || cli.no_strict {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok((code, report))
}
