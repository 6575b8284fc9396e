mod cli;
mod commands;
mod error;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use dplab_core::montecarlo::SimulationConfig;

use cli::{Command, RunConfig};
use error::{CliError, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
use report::{row_passed, write_report, ReportRow};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    match run(&config) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("dplab: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(config: &RunConfig) -> Result<i32, CliError> {
    if let Some(threads) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    let (rows, verifying) = build_rows(&config.command)?;
    emit(&rows, config)?;
    let failed = rows.iter().filter(|r| !row_passed(r)).count();
    if failed > 0 {
        eprintln!("dplab: {failed} check(s) failed");
    }
    Ok(if verifying && failed > 0 {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    })
}

/// Rows of the report and whether their verdicts decide the exit status.
fn build_rows(command: &Command) -> Result<(Vec<ReportRow>, bool), CliError> {
    Ok(match *command {
        Command::Exact { from, to } => (commands::cmd_exact(from, to)?, false),
        Command::Bruteforce { n, algo } => (commands::cmd_bruteforce(n, algo.into())?, true),
        Command::Simulate {
            n,
            samples,
            seed,
            target,
        } => {
            let sim = SimulationConfig { n, samples, seed };
            (commands::cmd_simulate(&sim, target.into())?, false)
        }
        Command::Verify { suite } => (commands::cmd_verify(suite)?, true),
    })
}

fn emit(rows: &[ReportRow], config: &RunConfig) -> Result<(), CliError> {
    match &config.out {
        Some(path) => {
            let file = File::create(path)?;
            let mut writer = BufWriter::new(file);
            write_report(rows, config.format, &mut writer)?;
            writer.flush()?;
        }
        None => write_report(rows, config.format, io::stdout().lock())?,
    }
    Ok(())
}
