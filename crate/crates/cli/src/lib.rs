//! Library side of the `upq` binary: argument validation, command dispatch
//! and report rendering.
//!
//! Exit codes: 0 on success, 1 when the engine rejects its input or the
//! report cannot be written, 2 on usage errors. A certificate whose
//! conditions fail is still a successful run.

pub mod args;
pub mod report;

use std::io::Write;

use thiserror::Error;
use upq_core::{
    chamber_report, irreducibility_certificate, mw_check, property_driver, rank_bounds, regime_bounds, toledo,
    WallOptions,
};

pub use args::{parse_args, Command, OutputFormat, RunConfig, UsageError};
pub use report::{MwReport, Report, ToledoReport};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Engine(#[from] upq_core::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot start thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("missing {0}")]
    Missing(&'static str),
}

/// Runs the engine operation behind `config`.
pub fn execute(config: &RunConfig) -> Result<Report, RunError> {
    match config.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            pool.install(|| dispatch(config))
        }
        None => dispatch(config),
    }
}

fn dispatch(config: &RunConfig) -> Result<Report, RunError> {
    let pair_type = || config.type_spec.ok_or(RunError::Missing("--type"));
    let alpha = || config.alpha.clone().ok_or(RunError::Missing("--alpha"));
    let ctx = || config.ctx.ok_or(RunError::Missing("--degL or --canonical"));
    let interval = || config.interval.clone().ok_or(RunError::Missing("--interval"));

    Ok(match config.command {
        Command::Toledo => {
            let t = pair_type()?;
            Report::Toledo(ToledoReport {
                pair_type: t,
                tau: toledo(&t),
            })
        }
        Command::Mw => {
            let t = pair_type()?;
            let alpha = alpha()?;
            let deg_l = ctx()?.twist_degree();
            let bounds = match &config.ranks {
                Some(r) => rank_bounds(&t, deg_l, &alpha, r)?,
                None => regime_bounds(t.p(), t.q(), deg_l, &alpha)?,
            };
            let verdict = mw_check(&t, deg_l, &alpha, config.ranks.as_ref())?;
            Report::Mw(MwReport {
                pair_type: t,
                twist_degree: deg_l,
                alpha,
                ranks: config.ranks,
                tau: toledo(&t),
                bounds,
                verdict,
            })
        }
        Command::Walls | Command::Chambers => {
            let t = pair_type()?;
            let (lo, hi) = interval()?;
            let opts = WallOptions {
                mw_filter: config.mw_filter,
                ctx: config.ctx,
            };
            let report = chamber_report(&t, &lo, &hi, &opts)?;
            if config.command == Command::Walls {
                Report::Walls(report)
            } else {
                Report::Chambers(report)
            }
        }
        Command::Certify => {
            let t = pair_type()?;
            let genus = ctx()?.genus().ok_or(RunError::Missing("--genus"))?;
            Report::Certify(irreducibility_certificate(&t, genus, &alpha()?)?)
        }
        Command::Selftest => Report::Selftest(property_driver(config.seed, config.trials)?),
    })
}

/// Executes `config` and writes the report; returns the exit code.
pub fn run(config: &RunConfig) -> i32 {
    match execute(config).and_then(|r| write_report(config, &r)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("upq: {e}");
            1
        }
    }
}

fn write_report(config: &RunConfig, report: &Report) -> Result<(), RunError> {
    let text = report.render(config.output_format)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Parses `argv` (without the program name), runs, and returns the exit code.
pub fn main_with<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    match parse_args(argv) {
        Ok(config) => run(&config),
        Err(UsageError::Clap(e)) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("upq: {e}");
            2
        }
    }
}
