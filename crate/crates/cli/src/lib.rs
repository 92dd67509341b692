//! Command-line front end: subcommands, JSON reports and the acceptance suite.

pub mod commands;
pub mod report;
pub mod suite;
