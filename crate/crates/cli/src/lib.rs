//! Command-line front end: argument parsing, dispatch to the exact and
//! numeric checks, report emission and the acceptance suite.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod emit;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use commuting_core::Error as CoreError;
use commuting_numeric::NumericError;

pub use args::Cli;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Usage(String),
    /// A check could not be carried out or its output not written: exit code 1.
    Failed(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failed(_) | CliError::Io(_) => EXIT_FAIL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Io(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NotCovered { family, g } => {
                CliError::Usage(format!("{family} family with g = {g} is not covered by the paper"))
            }
            CoreError::InvalidSpec(_)
            | CoreError::QuarticConstraint
            | CoreError::ZeroLeadingPotential
            | CoreError::Parse(_)
            | CoreError::UnsupportedDegree(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::Core(c) => c.into(),
            NumericError::Input(m) => CliError::Usage(m),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Parses `argv` (program name first) and runs the command against the
/// process's standard streams.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(passed) => {
            if passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
