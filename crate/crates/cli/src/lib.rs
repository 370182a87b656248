//! The `crossed` command-line tool: loads definition files, runs the
//! checks and computations of the `crossed` library, and reports the
//! outcome as human-readable text or JSON.

pub mod commands;
pub mod formats;
pub mod report;

pub use commands::run;
