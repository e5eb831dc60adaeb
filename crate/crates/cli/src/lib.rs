//! Command-line front end for `qdetect-core`.
//!
//! Subcommands write figure data as CSV (`figure1`, `figure2`, `figure3`),
//! run the closed-form-vs-oracle validation suite (`validate`), or print a
//! single-point comparison (`compare`).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod compare;
pub mod config;
mod error;
pub mod figures;
pub mod output;
pub mod validate;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::Parser;

pub use args::{Cli, Command};
pub use error::CliError;

/// Exit code for success.
pub const EXIT_OK: u8 = 0;
/// Exit code for bad flags, parameters or configuration.
pub const EXIT_USAGE: u8 = 1;
/// Exit code for numerical or tolerance failures.
pub const EXIT_NUMERIC: u8 = 2;

/// Parse `argv`, run the command against standard output, and return the
/// process exit code.
pub fn main_with_args<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Run a parsed command. Output goes to `--out` when given, otherwise to
/// `stdout`. Returns the exit code for runs that complete but fail their
/// checks (`validate`).
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Figure1(a) => {
            let text = figures::figure1(a)?;
            output::emit(&text, a.output.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Figure2(a) => {
            let text = figures::figure2(a)?;
            output::emit(&text, a.output.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Figure3(a) => {
            let text = figures::figure3(a)?;
            output::emit(&text, a.output.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Validate(a) => {
            let sweep = validate::Sweep::from_args(a)?;
            let report = validate::run(&sweep)?;
            output::emit(&report.render(), a.output.out.as_deref(), stdout)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_NUMERIC
            })
        }
        Command::Compare(a) => {
            let text = compare::compare(a)?;
            output::emit(&text, a.output.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
    }
}
