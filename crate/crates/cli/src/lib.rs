//! Command-line front end: modulus parsing, JSON reports, an on-disk cache
//! and the `zeta`, `table` and `verify` subcommands.

pub mod cache;
pub mod commands;
pub mod error;
pub mod parse;
pub mod report;

pub use error::CliError;
