// SPDX-License-Identifier: Apache-2.0

//! Operator and superoperator algebra for a system `C^d` paired with an
//! ancilla `C^d`.
//!
//! Bipartite operators on `C^d ⊗ C^d` use the Kronecker index `a·d + b`,
//! system first. Superoperators are stored in the matrix-unit basis
//! `E_{k₁k₂} = |k₁⟩⟨k₂|`.

mod basis;
mod channel;
mod haar;
mod perm;
mod projectors;
mod superop;

pub use basis::{herm_basis, HermitianBasis};
pub use channel::{channel_distance, inverse_jamiolkowski, jamiolkowski, linear_inverse_jamiolkowski, QuantumChannel};
pub use haar::{haar_unitary, max_entangled_ket};
pub use perm::{partial_trace, permutation_operator, trace_ancilla, trace_system, Permutation};
pub use projectors::{subspace_projectors, ChannelClass, SubspaceProjectors};
pub use superop::{BasisConvention, SuperOperator};

use crate::error::{Error, Result};

/// Integer square root of a bipartite dimension `D = d²`.
pub fn split_dim(big: usize) -> Result<usize> {
    let d = (libm::sqrt(big as f64) + 0.5) as usize;
    if d * d == big && d > 0 {
        Ok(d)
    } else {
        Err(Error::InvalidDimension {
            dim: big,
            reason: "not the square of a local dimension",
        })
    }
}
