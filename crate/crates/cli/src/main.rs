//! Batch driver for the verification suites.
//!
//! Exit status: 0 when every check passes, 1 when some check fails, 2 on a configuration
//! or I/O error.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime};

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use obstruction::group_rings::table_io::{data_dir, DATA_DIR_ENV};
use obstruction::suites::{check_tables, run_suite, write_tables, Suite, SuiteParams};

use config::{Format, RunConfig, RunFlags};
use output::{Report, SuiteReport};

#[derive(Debug, Parser)]
#[command(name = "obstruction", version, about = "Exact verification suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Chern, Pontrjagin and Wu classes over the subgroups.
    Chern(RunFlags),
    /// Serre spectral sequences of the three classifying-space fibrations and the ×p fibration.
    Serre(RunFlags),
    /// Eilenberg–MacLane cohomology tables and their consistency checks.
    Emspace(RunFlags),
    /// Minimal resolutions, Ext charts and the lifted bottom-cell map.
    Steenrod(RunFlags),
    /// Cyclic-subgroup census and the Oliver class-group order.
    Oliver(RunFlags),
    /// GL2(F_p) span of the transfer witness.
    Gl2(RunFlags),
    /// The explicit three-dimensional construction at p = 3.
    Construct3(RunFlags),
    /// Every suite, one report.
    All(RunFlags),
    /// Ring and Eilenberg–MacLane table files.
    Tables {
        #[command(subcommand)]
        action: TablesCmd,
    },
}

#[derive(Debug, Subcommand)]
enum TablesCmd {
    /// Write every table for the given primes.
    Write {
        /// Defaults to the data directory from the environment.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 5, 7])]
        primes: Vec<u32>,
    },
    /// Check that the table files match the built-in tables byte for byte.
    Check {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 5, 7])]
        primes: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A failure that is not a failed check.
struct UsageError(anyhow::Error);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn usage<T>(r: Result<T>) -> Result<T, UsageError> {
    r.map_err(UsageError)
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool, UsageError> {
    let (suites, flags): (Vec<Suite>, RunFlags) = match cli.cmd {
        Cmd::Chern(f) => (vec![Suite::Chern], f),
        Cmd::Serre(f) => (vec![Suite::Serre], f),
        Cmd::Emspace(f) => (vec![Suite::Emspace], f),
        Cmd::Steenrod(f) => (vec![Suite::Steenrod], f),
        Cmd::Oliver(f) => (vec![Suite::Oliver], f),
        Cmd::Gl2(f) => (vec![Suite::Gl2], f),
        Cmd::Construct3(f) => (vec![Suite::Construct3], f),
        Cmd::All(f) => (Suite::ALL.to_vec(), f),
        Cmd::Tables { action } => return tables(action),
    };
    let id = if suites.len() == 1 { suites[0].name() } else { "all" };
    let cfg = usage(flags.resolve(data_dir()))?;
    let report = execute(id, &suites, &cfg.params);
    emit(&report, &cfg)?;
    Ok(!report.failed())
}

/// Suites run concurrently; the report keeps the requested order.
fn execute(id: &str, suites: &[Suite], params: &SuiteParams) -> Report {
    let started = SystemTime::now();
    let clock = Instant::now();
    let parts: Vec<SuiteReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&s| scope.spawn(move || SuiteReport::new(s.name(), run_suite(s, params))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    Report::new(id, params.clone(), parts, started, clock.elapsed())
}

fn emit(report: &Report, cfg: &RunConfig) -> Result<(), UsageError> {
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cfg.out {
        Some(path) => usage(std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn resolve_dir(dir: Option<PathBuf>) -> Result<PathBuf> {
    dir.or_else(data_dir)
        .ok_or_else(|| anyhow!("no table directory: pass --dir or set {DATA_DIR_ENV}"))
}

fn check_primes(primes: &[u32]) -> Result<()> {
    match primes.iter().find(|p| ![3, 5, 7].contains(*p)) {
        Some(p) => Err(anyhow!("p must be one of 3, 5, 7 (got {p})")),
        None => Ok(()),
    }
}

fn tables(action: TablesCmd) -> Result<bool, UsageError> {
    match action {
        TablesCmd::Write { dir, primes } => {
            usage(check_primes(&primes))?;
            let dir = usage(resolve_dir(dir))?;
            let written = usage(write_tables(&dir, &primes).map_err(|e| anyhow!(e)))?;
            for path in written {
                println!("{}", path.display());
            }
            Ok(true)
        }
        TablesCmd::Check { dir, primes, format } => {
            usage(check_primes(&primes))?;
            let dir = usage(resolve_dir(dir))?;
            let started = SystemTime::now();
            let clock = Instant::now();
            let checks = check_tables(&dir, &primes);
            let mut params = SuiteParams::new(primes[0]);
            params.data_dir = Some(dir);
            let report = Report::new("tables", params, vec![SuiteReport::new("tables", checks)], started, clock.elapsed());
            emit(&report, &RunConfig { params: report.config.clone(), format, out: None })?;
            Ok(!report.failed())
        }
    }
}
