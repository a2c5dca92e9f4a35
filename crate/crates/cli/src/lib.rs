//! Command-line front end: tables of certified radii, verification sweeps,
//! functional evaluation and sharpness ladders, written as CSV or JSON.

pub mod args;
pub mod coeffs;
pub mod commands;
pub mod error;
pub mod output;

pub use args::{Cli, Command, Format};
pub use commands::{cmd_evaluate, cmd_sharpness, cmd_tables, cmd_verify, Exit, Outcome};
pub use error::{CliError, Result};
pub use output::OutputRecord;

/// Runs one parsed command, writes its record and returns the exit status.
pub fn run(cli: &Cli) -> Result<Exit> {
    let (outcome, output) = match &cli.command {
        Command::Tables(a) => (cmd_tables(a)?, &a.output),
        Command::Verify(a) => (cmd_verify(a)?, &a.output),
        Command::Evaluate(a) => (cmd_evaluate(a)?, &a.output),
        Command::Sharpness(a) => (cmd_sharpness(a)?, &a.output),
    };
    output::emit(&outcome.record, output.format, output.out.as_deref())?;
    Ok(outcome.exit)
}
