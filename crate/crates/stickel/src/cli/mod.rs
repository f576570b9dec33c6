//! Command-line front end: `annihilate`, `table`, `crosscheck` and `lp`.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 precision underflow,
//! 4 golden or cross-check mismatch.

mod commands;
mod config;
mod golden;

pub use commands::{check_row, cmd_annihilate, cmd_crosscheck, cmd_lp, cmd_table, resolve_recipe, table_header, RowOutcome};
pub use config::{parse_config_text, read_config_file, Cli, Command, FieldArgs, Format, RunConfig, Sub, TableArgs};
pub use golden::{bundled, header as golden_header, load as load_golden, parse_golden, GoldenRow, TABLE_IDS};

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

use crate::fields::FieldError;
use crate::lfunctions::LfError;
use crate::stickelberger::StickelError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("precision underflow: {0}")]
    Precision(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("output: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Precision(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<StickelError> for CliError {
    fn from(e: StickelError) -> Self {
        match e {
            StickelError::Inexact(_) | StickelError::Precision(_) => CliError::Precision(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<LfError> for CliError {
    fn from(e: LfError) -> Self {
        if e.is_precision() {
            CliError::Precision(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

pub fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cfg.command {
        Command::Annihilate => cmd_annihilate(cfg, out).map(drop),
        Command::Table => cmd_table(cfg, out, err).map(drop),
        Command::Crosscheck => cmd_crosscheck(cfg, out).map(drop),
        Command::Lp => cmd_lp(cfg, out, err).map(drop),
    }
}

/// Output produced inside a worker pool, written once the pool is done.
fn flush(buffered: (Result<(), CliError>, Vec<u8>, Vec<u8>), out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let (r, o, e) = buffered;
    out.write_all(&o).and_then(|_| err.write_all(&e)).map_err(|e| CliError::Io(e.to_string()))?;
    r
}

/// Parse arguments, run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = RunConfig::from_cli(&cli).and_then(|cfg| match cfg.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CliError::Config(e.to_string()))?;
            let buffered = pool.install(|| {
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let r = execute(&cfg, &mut o, &mut e);
                (r, o, e)
            });
            flush(buffered, out, err)
        }
        None => execute(&cfg, out, err),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
