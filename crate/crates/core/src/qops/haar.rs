// SPDX-License-Identifier: Apache-2.0

use crate::eigen::qr_square;
use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::math;
use crate::rng::Stream;
use crate::ATOL_ALG;

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of `R`'s diagonal divided out of `Q`.
pub fn haar_unitary(d: usize, rng: &mut Stream) -> Operator {
    loop {
        let g = Operator::from_fn(d, d, |_, _| rng.complex_normal());
        // a Ginibre matrix is singular with probability zero
        if let Ok((mut q, r_diag)) = qr_square(&g) {
            for (c, r) in r_diag.iter().enumerate() {
                let phase = r / r.norm();
                for row in 0..d {
                    q[(row, c)] *= phase;
                }
            }
            return q;
        }
    }
}

/// `|U⟩ = (U ⊗ I)|I⟩ = (1/√d) Σ_k U|k⟩ ⊗ |k⟩` as a `d² × 1` column.
pub fn max_entangled_ket(u: &Operator) -> Result<Operator> {
    if !u.is_square() {
        return Err(Error::InvalidInput(alloc::format!(
            "maximally entangled ket needs a square operator, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    u.ensure_unitary(ATOL_ALG)?;
    let d = u.dim();
    Ok(u.vectorize().scale_real(1.0 / math::sqrt(d as f64)))
}
