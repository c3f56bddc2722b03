//! File formats and the command-line front end for `pebbling-core`.
//!
//! Graphs, configurations, move sequences, certificates and reports are
//! read and written as JSON (graphs also as plain edge lists). Every output
//! is deterministic: the same inputs give the same bytes.

pub mod cli;
pub mod formats;
pub mod report;
