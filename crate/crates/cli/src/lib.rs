//! Commands behind the `quadperm` binary and the reproduction suite.

pub mod appendix;
pub mod commands;

pub use appendix::{run_checks, CheckResult, Provenance, Settings, Status, CHECKS, CRITERIA};
pub use commands::{Output, SCHEMA};
