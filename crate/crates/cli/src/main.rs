//! `shiftdtw` command-line tool.
//!
//! Exit codes: 0 success, 1 data error, 2 usage error. Only the result
//! document is written to stdout; diagnostics go to stderr.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let _ = err.print();
            return ExitCode::from(u8::try_from(code).unwrap_or(2));
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
