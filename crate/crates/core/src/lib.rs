//! Converse bounds for stable lossless source coding of a binary i.i.d. source.
//!
//! An encoder is `(D, D')`-stable when inputs within Hamming distance `D`
//! are mapped to codewords within Hamming distance `D'`. Restricted to one
//! type class, a stable lossless encoder is an injective homomorphism from
//! the source neighborhood graph (a union of generalized Johnson graphs) into
//! a power of the Hamming cube, so its maximum degree and clique number cannot
//! exceed those of the target. This crate provides
//!
//! * [`bounds`]: closed-form asymptotic rate bounds and their optimizer-based
//!   cross-checks,
//! * [`exact`]: exact finite-blocklength degrees and clique numbers
//!   (Ahlswede-Khachatrian, Kleitman) in big-integer and log domains,
//! * [`graph`]: explicit small graphs with brute-force degree and clique oracles,
//! * [`codes`]: encoder tables, stability checks and a homomorphism search,
//! * [`region`]: `(p, R)` region sweeps, crossover search, CSV and SVG output.

pub mod bits;
pub mod bounds;
pub mod codes;
mod error;
pub mod exact;
pub mod graph;
pub mod region;

pub use error::{Error, Result};
