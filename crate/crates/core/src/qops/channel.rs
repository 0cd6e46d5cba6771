// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;

use super::{split_dim, trace_system, SuperOperator};
use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::math;
use crate::{ATOL_ALG, RANK_CUTOFF};

/// Trace-preserving completely positive map on `End(C^d)` in Kraus form.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    dim: usize,
    kraus: Vec<Operator>,
    unital: bool,
}

impl QuantumChannel {
    /// Validates `Σ B†B = I` within [`ATOL_ALG`] and records whether the map
    /// is unital (`Σ BB† = I`).
    pub fn new(kraus: Vec<Operator>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?;
        let dim = first.rows();
        if kraus.iter().any(|b| b.rows() != dim || b.cols() != dim) {
            return Err(Error::InvalidChannel(
                "Kraus operators must be square and of equal size".into(),
            ));
        }
        let mut tp = Operator::zeros(dim, dim);
        let mut un = Operator::zeros(dim, dim);
        for b in &kraus {
            tp = &tp + &b.adjoint_matmul(b);
            un = &un + &b.matmul(&b.adjoint());
        }
        let id = Operator::identity(dim);
        let tp_residual = tp.distance(&id);
        if tp_residual > ATOL_ALG {
            return Err(Error::InvalidChannel(format!(
                "not trace preserving: ||sum B^dag B - I|| = {tp_residual:.3e}"
            )));
        }
        let unital = un.distance(&id) <= ATOL_ALG;
        Ok(Self { dim, kraus, unital })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            kraus: alloc::vec![Operator::identity(dim)],
            unital: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[Operator] {
        &self.kraus
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// `ℰ(ρ) = Σ B ρ B†`.
    pub fn apply(&self, rho: &Operator) -> Operator {
        let mut out = Operator::zeros(self.dim, self.dim);
        for b in &self.kraus {
            out = &out + &b.matmul(rho).matmul(&b.adjoint());
        }
        out
    }

    /// Process matrix `s = Σ |B⟩⟩⟨⟨B|`.
    pub fn superoperator(&self) -> SuperOperator {
        SuperOperator::from_kraus(&self.kraus).expect("validated non-empty")
    }
}

/// `ρ = (ℰ ⊗ 𝓘)(|I⟩⟨I|)`, equal to the process matrix divided by `d`.
pub fn jamiolkowski(channel: &QuantumChannel) -> Operator {
    let d = channel.dim();
    channel.superoperator().into_matrix().scale_real(1.0 / d as f64)
}

fn check_channel_image(state: &Operator) -> Result<usize> {
    if !state.is_square() {
        return Err(Error::InvalidInput("Jamiołkowski state must be square".into()));
    }
    let d = split_dim(state.rows())?;
    let marginal = trace_system(state, d)?;
    let residual = marginal.distance(&Operator::identity(d).scale_real(1.0 / d as f64));
    if residual > ATOL_ALG {
        return Err(Error::NotChannelImage { residual });
    }
    Ok(d)
}

/// Channel whose Jamiołkowski state is `state`, in Kraus form.
///
/// The state must satisfy `tr_s(ρ) = I/d` (trace preservation) and be
/// positive semidefinite within [`ATOL_ALG`] (complete positivity).
pub fn inverse_jamiolkowski(state: &Operator) -> Result<QuantumChannel> {
    let d = check_channel_image(state)?;
    let s = state.scale_real(d as f64);
    let e = crate::eigen::eigh(&s)?;
    let min = e.values[0];
    if min < -ATOL_ALG {
        return Err(Error::NotCompletelyPositive { min_eigenvalue: min });
    }
    let cut = RANK_CUTOFF * e.max_abs_value();
    let kraus: Vec<Operator> = e
        .values
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &v)| v > cut)
        .map(|(k, &v)| {
            let col = e.column(k).scale_real(math::sqrt(v));
            Operator::unvectorize(&col, d).expect("d² column")
        })
        .collect();
    QuantumChannel::new(kraus)
}

/// Process matrix `s = d·ρ` of the linear map with Jamiołkowski state `ρ`,
/// without positivity or trace-preservation checks.
pub fn linear_inverse_jamiolkowski(state: &Operator) -> Result<SuperOperator> {
    if !state.is_square() {
        return Err(Error::InvalidInput("Jamiołkowski state must be square".into()));
    }
    let d = split_dim(state.rows())?;
    SuperOperator::from_matrix(d, state.scale_real(d as f64))
}

/// Hilbert–Schmidt distance between two maps on `End(C^d)`, normalised by
/// `1/d` so that it equals the distance between their Jamiołkowski states.
/// The unnormalised `‖s − r‖` of the process matrices is `d` times larger.
pub fn channel_distance(a: &SuperOperator, b: &SuperOperator) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.distance(b) / a.dim() as f64
}
