//! Front end for the `gaussbc` library: curve generation, hybrid sweeps,
//! verification suites and Monte Carlo runs, writing CSV and JSON.

use std::ffi::OsString;

use clap::{CommandFactory, FromArgMatches};

pub mod args;
pub mod commands;
pub mod config;
pub mod curve;
pub mod output;

use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn command() -> clap::Command {
    Cli::command().mut_subcommands(|s| s.args_override_self(true))
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let cmd = command();
    let argv = match config::expand_args(&cmd, argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    let cli = match cmd.try_get_matches_from(argv).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let threads = match &cli.command {
        Command::Region(a) => a.common.threads,
        Command::SweepHybrid(a) => a.common.threads,
        Command::Verify(a) => a.common.threads,
        Command::Simulate(a) => a.common.threads,
    };
    if let Some(t) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }
    let outcome = match &cli.command {
        Command::Region(a) => commands::region::run(a).map(|_| true),
        Command::SweepHybrid(a) => commands::sweep::run(a).map(|_| true),
        Command::Verify(a) => commands::verify::run(a),
        Command::Simulate(a) => commands::simulate::run(a),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
