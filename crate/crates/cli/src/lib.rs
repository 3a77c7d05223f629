//! Command-line front end: table export with a persistent cache, volume and
//! intersection-number queries, asymptotic data and oracle verification.

pub mod cache;
pub mod commands;
pub mod document;

pub use cache::{TableCache, CACHE_ENV};
pub use commands::{run, Cli, EXIT_FAILURE, EXIT_OK, EXIT_ORACLE_MISCALIBRATED, EXIT_USAGE};
pub use document::{render_csv, TableDocument};
