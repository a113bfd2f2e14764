//! Front end of `yamabe-core`: each subcommand builds a [`ResultTable`]
//! that `main` writes as CSV or JSON.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod table;

pub use args::Cli;
pub use commands::run;
pub use table::{Format, ResultTable};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] yamabe_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// A finished run: its table, and the first violated identity if any.
#[derive(Debug)]
pub struct Outcome {
    pub table: ResultTable,
    pub failure: Option<String>,
}
