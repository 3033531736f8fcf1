//! fibkit: exact arithmetic for the generalized Fibonacci and Lucas
//! polynomial families, their binomial analogues and valuations, and
//! certified series tails.
//!
//! The binary is a thin shim over [`run`]; everything observable happens
//! in the library so tests can drive the exact same code paths
//! in-process. Output invariants: results go to stdout, diagnostics to
//! stderr, and a given command line produces byte-identical stdout on
//! every run. Exit codes are 0 for success, 1 for a computation that ran
//! and produced a failing verdict, and 2 for usage errors.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

#[derive(Debug, PartialEq, Eq)]
pub enum CliError {
    /// Rejected input or flag combination: exit code 2.
    Usage(String),
    /// The computation ran and its verdict is failure: exit code 1.
    Failed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

/// Parse, resolve, render, print. Returns the process exit code instead of
/// exiting so the caller keeps control (and tests avoid process teardown).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // help and version render with code 0, real parse errors with 2
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(cli) {
        Ok(rendered) => {
            let mut out = std::io::stdout();
            let _ = out.write_all(rendered.stdout.as_bytes());
            let _ = out.flush();
            i32::from(rendered.failed)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("fibkit: {msg}");
            2
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("fibkit: {msg}");
            1
        }
    }
}

fn run_parsed(cli: args::Cli) -> Result<commands::Rendered, CliError> {
    let cap = config::env_cap()?;
    let file = match &cli.config {
        Some(path) => config::load(path)?,
        None => config::FileConfig::default(),
    };
    let resolved = args::resolve(cli, &file, cap)?;
    if let Some(jobs) = resolved.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs needs at least one thread".into()));
        }
        // The global pool installs once per process; a second command in
        // the same process just keeps the first pool. Output never depends
        // on the thread count, only wall time does.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    commands::render(&resolved)
}
