//! File formats, experiment harness and command-line plumbing on top of
//! `serieslab-core`.

pub mod config;
pub mod format;
pub mod grammar;
pub mod harness;
pub mod report;
