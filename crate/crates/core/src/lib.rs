// SPDX-License-Identifier: Apache-2.0

//! Weighted unitary t-designs and the tight POVMs they induce for
//! ancilla-assisted process tomography.
//!
//! The crate is `no_std` and only needs an allocator. Everything that touches
//! files, threads or the terminal lives in the `udesign` companion crate.
//!
//! Module map:
//!
//! - [`linalg`], [`eigen`]: dense complex matrices and Hermitian spectral tools.
//! - [`qops`]: operator bases, permutation operators, partial traces, Haar
//!   sampling, maximally entangled kets, superoperators, the Jamiołkowski map
//!   and the channel-class subspace projectors.
//! - [`designs`]: weighted unitary sets, frame potentials, `γ(t, d)`, exact
//!   Haar moments, certification, the design gallery and MUUB checks.
//! - [`search`]: numerical design discovery by frame-potential minimisation.
//! - [`povm`]: POVMs from designs, frame superoperators, tightness and
//!   canonical duals.
//! - [`tomography`]: channel gallery, Monte Carlo tomography and predicted
//!   error rates.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is how NaN inputs get rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod designs;
pub mod eigen;
mod error;
pub mod linalg;
pub(crate) mod math;
pub mod povm;
pub mod qops;
pub mod rng;
pub mod search;
pub mod tomography;

pub use error::{Error, Result};
pub use linalg::{Operator, C64};

/// Absolute tolerance for algebraic identities (unitarity, normalisation, ...).
pub const ATOL_ALG: f64 = 1e-9;

/// Relative cutoff below which eigen/singular values are treated as zero.
pub const RANK_CUTOFF: f64 = 1e-10;
