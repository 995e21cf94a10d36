//! Command-line front end for `eigenshift-core`.
//!
//! Four commands: `eigenpair`, `decompose`, `sweep` and `table`. Reports are
//! CSV (default) or JSON with ten significant digits. Exit status:
//!
//! | status | cause |
//! |---|---|
//! | 0 | success |
//! | 1 | any other failure (I/O, missing iterate) |
//! | 2 | invalid input |
//! | 3 | near-singular shift |
//! | 4 | zero start or zero function |
//! | 5 | nodal sample point |
//! | 6 | empty decomposition |

use std::ffi::OsString;

use clap::Parser;

use eigenshift_core::{Error, Result};

pub mod args;
pub mod commands;
pub mod report;
pub mod request;
pub mod tables;

pub use args::Cli;
pub use report::{format_number, Cell, Format, Report};
pub use request::{RunRequest, TableId};

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::InvalidGrid(_) | Error::InvalidParameter(_) | Error::NonFinite { .. } | Error::GridMismatch => 2,
        Error::NearSingularShift { .. } => 3,
        Error::ZeroStart | Error::ZeroFunction => 4,
        Error::NodalPoint { .. } | Error::NoValidPoint { .. } => 5,
        Error::EmptyResult { .. } => 6,
        Error::MissingIterate { .. } => 1,
    }
}

/// Executes a validated request.
pub fn run(request: &RunRequest) -> Result<Report> {
    match request {
        RunRequest::Eigenpair(req) => commands::run_eigenpair(req),
        RunRequest::Decompose(req) => {
            let (report, result) = commands::run_decompose(req)?;
            for skip in &result.skipped {
                eprintln!("warning: shift {} skipped: {}", skip.sigma, skip.error);
            }
            if let Some(path) = &req.dump {
                commands::write_dump(&result, path)
                    .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(report)
        }
        RunRequest::Sweep(req) => commands::sweep(req).map(|o| commands::sweep_report(&o)),
        RunRequest::Table(req) => tables::run_table(req),
    }
}

/// Parses `args`, runs, writes the report and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (request, output) = match cli.into_request() {
        Ok(parsed) => parsed,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let report = match run(&request) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match report.write(output.format, output.path.as_deref()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            1
        }
    }
}
