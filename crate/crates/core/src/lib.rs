//! Exact-size random trees and their height and distance profiles.
//!
//! The crate samples conditioned Galton–Watson trees, modified-root trees,
//! forests and unrooted simply generated trees; computes height profiles,
//! distance profiles (naively and by centroid decomposition) and Wiener
//! indices; evaluates exact profile moments from a truncated power-series
//! engine; and checks all of it against brute-force enumeration and Monte
//! Carlo experiments.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod cli;
pub mod distprofile;
pub mod experiments;
pub mod fft;
pub mod genfun;
pub mod oracle;
pub mod rng;
pub mod sampler;
pub mod tree;
pub mod weights;

pub use error::{Error, Result};
