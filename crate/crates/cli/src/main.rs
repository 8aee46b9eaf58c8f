mod args;
mod commands;
mod config;
mod error;
mod format;
mod parse;

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use qdilemma::game::Convention;

use args::{Cli, Command};
use commands::Rendered;
use config::{Decoherence, RunConfig};
use error::{validation, CliError, CliResult};

const THREADS_ENV: &str = "QDILEMMA_THREADS";

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| {
        validation(format!(
            "{THREADS_ENV} = {raw:?}: expected a non-negative integer"
        ))
    })?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| validation(format!("{THREADS_ENV}: {e}")))?;
    }
    Ok(())
}

/// Opens the output file up front so an unwritable path fails before any
/// computation.
fn open_output(path: Option<&Path>) -> CliResult<Option<(PathBuf, File)>> {
    path.map(|p| {
        File::create(p)
            .map(|f| (p.to_path_buf(), f))
            .map_err(|source| CliError::Output {
                path: p.to_path_buf(),
                source,
            })
    })
    .transpose()
}

fn run(cli: Cli) -> CliResult<Rendered> {
    let (output, job): (Option<PathBuf>, Box<dyn FnOnce() -> CliResult<Rendered>>) = match cli
        .command
    {
        Command::Payoff { common, profile } => {
            let cfg = RunConfig::resolve(&common, Decoherence::Required, Convention::TwoParam)?;
            (
                cfg.output.clone(),
                Box::new(move || commands::payoff(&cfg, &profile)),
            )
        }
        Command::Sweep {
            common,
            profile,
            param,
            start,
            stop,
            step,
        } => {
            let decoherence = match param {
                args::SweepParam::Delta => Decoherence::Required,
                _ => Decoherence::Forbidden("the sweep varies decoherence"),
            };
            let cfg = RunConfig::resolve(&common, decoherence, Convention::TwoParam)?;
            (
                cfg.output.clone(),
                Box::new(move || commands::sweep(&cfg, &profile, param, &start, &stop, &step)),
            )
        }
        Command::FindNe { common } => {
            let cfg = RunConfig::resolve(&common, Decoherence::Required, Convention::TwoParam)?;
            (
                cfg.output.clone(),
                Box::new(move || commands::find_ne(&cfg)),
            )
        }
        Command::Threshold {
            common,
            profile,
            direction,
            threshold_tol,
        } => {
            let cfg = RunConfig::resolve(
                &common,
                Decoherence::Forbidden("the threshold search scans mu"),
                Convention::TwoParam,
            )?;
            (
                cfg.output.clone(),
                Box::new(move || commands::threshold(&cfg, &profile, direction, threshold_tol)),
            )
        }
        Command::VerifyPaper { json, seed, output } => {
            (output, Box::new(move || commands::verify_paper(seed, json)))
        }
        Command::OracleCheck {
            gamma_t,
            dt,
            json,
            output,
        } => (
            output,
            Box::new(move || commands::oracle_check(&gamma_t, dt, json)),
        ),
        Command::MixedNe { common, psi, phi } => {
            let cfg = RunConfig::resolve(&common, Decoherence::Required, Convention::ThreeParam)?;
            (
                cfg.output.clone(),
                Box::new(move || commands::mixed_ne(&cfg, &psi, &phi)),
            )
        }
    };

    let sink = open_output(output.as_deref())?;
    let rendered = job()?;
    match sink {
        Some((path, mut file)) => file
            .write_all(rendered.body.as_bytes())
            .map_err(|source| CliError::Output { path, source })?,
        None => {
            let mut out = std::io::stdout().lock();
            // A closed stdout (e.g. piped into `head`) is not an error.
            let _ = out.write_all(rendered.body.as_bytes());
        }
    }
    Ok(rendered)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    let failure = match result {
        Ok(rendered) => rendered.failure,
        Err(e) => Some(e),
    };
    match failure {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
