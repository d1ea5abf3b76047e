//! Command-line front end for `wedgerate-core`: parameter sweeps written as
//! CSV or JSON, figure recipes, and validation suites.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod expr;
pub mod output;
pub mod validate;

use args::{Cli, Command};
use clap::Parser;
use error::{CliError, ExitStatus};
use std::ffi::OsString;
use std::io::Write;

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let (table, output) = match &cli.command {
        Command::WedgeDecay(a) => (commands::wedge_decay(a)?, &a.output),
        Command::PlatesDecay(a) => (commands::plates_decay_cmd(a)?, &a.output),
        Command::HalfsheetDecay(a) => (commands::halfsheet_decay_cmd(a)?, &a.output),
        Command::WedgeShift(a) => (commands::wedge_shift_cmd(a)?, &a.output),
        Command::HalfsheetShift(a) => (commands::halfsheet_shift_cmd(a)?, &a.output),
        Command::Validate(a) => {
            let checks = match a.jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?
                    .install(|| validate::run_suite(a.suite, a.seed)),
                None => validate::run_suite(a.suite, a.seed),
            };
            let text = validate::render(&checks);
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    context: "writing report".into(),
                    source,
                })?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            return if failed == 0 {
                Ok(ExitStatus::Success)
            } else {
                Err(CliError::Validation { failed })
            };
        }
    };
    output::emit(&table, output.format, output.out.as_deref(), stdout)?;
    Ok(if table.all_converged() {
        ExitStatus::Success
    } else {
        ExitStatus::NotConverged
    })
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run(args: Vec<OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let args = match config::expand(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.status().code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return ExitStatus::Usage.code();
            }
            let _ = write!(stdout, "{}", e.render());
            return ExitStatus::Success.code();
        }
    };
    match dispatch(&cli, stdout) {
        Ok(ExitStatus::NotConverged) => {
            let _ = writeln!(
                stderr,
                "warning: some rows did not converge (converged = false)"
            );
            ExitStatus::NotConverged.code()
        }
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.status().code()
        }
    }
}
