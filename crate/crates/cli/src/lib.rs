//! Library side of the `rheokit` command-line tool.

pub mod commands;
pub mod document;
mod error;
pub mod output;

pub use error::CliError;
