//! Batch front end: each subcommand builds part of the pipeline from one
//! validated [`RunConfig`] and writes deterministic artifacts.
//!
//! Exit codes: 0 success, 1 verification or runtime failure, 2 invalid
//! configuration, 3 resource cap exceeded.

pub mod cmd;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;

use clap::Parser;
use serde_json::Value;

pub use config::{Cli, Command, FileConfig, Format, Opts, RunConfig, VerifyLevel};
pub use error::{CliError, Result};
pub use output::Sink;

/// Runs one command; returns the summary printed to stderr.
pub fn run(rc: &RunConfig) -> Result<(Value, Vec<std::path::PathBuf>)> {
    if rc.max_qubits != lcnu_circuits::max_qubits() {
        std::env::set_var("CARLEMAN_LCNU_MAX_QUBITS", rc.max_qubits.to_string());
    }
    let mut sink = Sink::new(rc.out.clone(), rc.stdout);
    let summary = match rc.command {
        Command::Build => cmd::build::build(rc, &mut sink)?,
        Command::Decompose => cmd::build::decompose(rc, &mut sink)?,
        Command::Verify => cmd::verify::verify(rc, &mut sink)?,
        Command::Circuits => cmd::circuits::circuits(rc, &mut sink)?,
        Command::Estimate => cmd::estimate::estimate(rc, &mut sink)?,
        Command::PauliCompare => cmd::estimate::pauli_compare(rc, &mut sink)?,
        Command::Condition => cmd::analysis::condition(rc, &mut sink)?,
        Command::Solve => cmd::analysis::solve(rc, &mut sink)?,
    };
    Ok((summary, sink.written().to_vec()))
}

/// Parses arguments, runs, and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = RunConfig::resolve(cli.command, &cli.opts).and_then(|rc| run(&rc));
    match outcome {
        Ok((summary, written)) => {
            for p in written {
                eprintln!("wrote {}", p.display());
            }
            eprintln!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
