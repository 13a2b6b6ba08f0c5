//! Return-time and hitting-time statistics of blocks in finite-alphabet
//! stationary processes.
//!
//! The crate is `no_std` (with `alloc`). It contains the domain types
//! ([`Alphabet`], [`SymbolSequence`], [`Block`], [`StepCdf`], [`EvalGrid`]),
//! seeded process generators ([`processes`]), occurrence scanning and
//! empirical estimation ([`stats`]) and exact reference laws ([`analytic`]).
//! File formats, parallel execution and the command line live in the
//! `serieslab` crate.
//!
//! Conventions used throughout:
//!
//! * `R_B` is the first return time of a block `B` to itself, `mu(B) * R_B`
//!   its normalized version, whose mean is 1 (Kac).
//! * `G_B(t)` is the integral of the survival function of the normalized
//!   return time over `[0, t]`. The hitting-time distribution `F_B` satisfies
//!   `G_B(t) - mu(B) <= F_B(t) <= G_B(t)`, so `G_B` is the default estimator
//!   of `F_B`.

#![no_std]

extern crate alloc;

pub mod alphabet;
pub mod analytic;
pub mod block;
pub mod cdf;
mod error;
pub mod grid;
pub mod processes;
pub mod rng;
pub mod sequence;
pub mod stats;

pub use alphabet::{Alphabet, Symbol};
pub use block::Block;
pub use cdf::{ecdf_from_samples, StepCdf};
pub use error::{Error, Result};
pub use grid::EvalGrid;
pub use sequence::{Provenance, SymbolSequence};
