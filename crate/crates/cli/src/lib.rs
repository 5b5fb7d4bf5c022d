//! Report rows, property suites and subcommand logic for the `qspectra`
//! verifier.

pub mod commands;
pub mod report;
pub mod suites;
