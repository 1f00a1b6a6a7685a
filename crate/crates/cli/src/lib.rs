//! Command-line harness around the `entrobound` library: bound evaluation,
//! parameter sweeps, randomised dominance checks, tightness tables, the
//! finite-approximation explorer and state-file analysis.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod states;

use clap::Parser;

use cli::{Cli, Command};
use error::{CliResult, EXIT_OK, EXIT_USAGE};

pub fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Bound(a) => commands::bound::run(a),
        Command::Sweep(a) => commands::sweep::run(a),
        Command::Montecarlo(a) => commands::montecarlo::run(a),
        Command::Tightness(a) => commands::tightness::run(a),
        Command::Fa(a) => commands::fa::run(a),
        Command::Analyze(a) => commands::analyze::run(a),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("entrobound: {e}");
            e.exit_code()
        }
    }
}
