// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operator is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("operator is not a density matrix: {0}")]
    NotAState(String),

    #[error("state is not the image of a channel: tr_s(rho) deviates from I/d by {residual:.3e}")]
    NotChannelImage { residual: f64 },

    #[error("map is not completely positive (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("elements do not form a POVM: ||sum F - I|| = {residual:.3e}")]
    NotAPovm { residual: f64 },

    #[error(
        "POVM is not informationally complete for {class}: support rank {support_rank}, span dimension {span_dim}"
    )]
    NotInformationallyComplete {
        class: &'static str,
        support_rank: usize,
        span_dim: usize,
    },

    #[error("outcome probabilities are inconsistent: |sum p - 1| = {defect:.3e}")]
    InconsistentPovm { defect: f64 },

    #[error("resource guard tripped: {0}")]
    ResourceLimit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
