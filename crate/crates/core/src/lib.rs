//! Exact graph pebbling on small graphs.
//!
//! The crate computes rooted and global pebbling numbers by exhaustive
//! search, builds and checks weight-function certificates (tree strategies,
//! cycle-with-tail strategies, attached trees and their nonnegative
//! combinations), solves the tree-strategy linear program in exact rational
//! arithmetic, and audits the structural conditions that rule a graph out of
//! Class 0.
//!
//! Everything here is `no_std` with `alloc`; file formats, clocks and the
//! command line live in the `pebble` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod budget;
pub mod catalog;
pub mod certificate;
pub mod class0;
pub mod config;
mod error;
pub mod generators;
pub mod graph;
pub mod lp;
pub mod naive;
pub mod rational;
pub mod search;
pub mod simplex;
pub mod solver;
pub mod strategy;
pub mod validity;

pub use budget::SolverBudget;
pub use config::{apply_move, replay, Configuration, PebblingMove};
pub use error::Error;
pub use graph::{Graph, RootedGraph, Vertex};
pub use rational::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;
