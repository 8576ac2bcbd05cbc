//! `diffsets`: formulas, constructions, exact searches and lemma checks
//! from the command line.
//!
//! Exit codes: 0 success, 1 bad input or domain error, 2 search refused by
//! the node budget, 3 a computed value contradicts a stated result.

mod args;
mod commands;
mod report;

use std::io;
use std::process::ExitCode;

use clap::Parser;
use diffsets_core::Error;

use crate::args::Cli;
use crate::commands::Finding;
use crate::report::Emitter;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own usage-error code would collide with the budget code
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = Emitter::new(cli.format, cli.output.as_deref())
        .map_err(CliError::from)
        .and_then(|mut out| {
            let finding = commands::run(cli.command, &mut out)?;
            out.finish()?;
            Ok(finding)
        });
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result))
}

fn exit_code(result: &Result<Finding, CliError>) -> u8 {
    match result {
        Ok(Finding::Consistent) => 0,
        Ok(Finding::Counterexample) => 3,
        Err(CliError::Core(Error::BudgetExceeded { .. })) => 2,
        Err(_) => 1,
    }
}
