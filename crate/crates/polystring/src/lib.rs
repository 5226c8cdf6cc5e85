//! File formats, reports and the command-line front end for
//! `polystring-core`.

pub mod caps;
pub mod checkpoint;
pub mod commands;
pub mod groupfile;
pub mod reference;
pub mod report;

mod error;

pub use error::CliError;

/// Exit status: every check passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status: a mathematical check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status: bad usage, unreadable input or an exceeded resource limit.
pub const EXIT_USAGE: i32 = 2;
