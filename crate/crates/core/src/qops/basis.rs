// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};
use crate::math;

/// Orthonormal Hermitian operator basis `{λ₀, …, λ_{d²−1}}` with
/// `λ₀ = I/√d` and the rest traceless.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    dim: usize,
    ops: Vec<Operator>,
}

impl HermitianBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[Operator] {
        &self.ops
    }

    pub fn get(&self, k: usize) -> &Operator {
        &self.ops[k]
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Real coefficients `tr(λ_k A)` of a Hermitian operator.
    pub fn coefficients(&self, a: &Operator) -> Vec<f64> {
        self.ops.iter().map(|l| l.hs_inner(a).re).collect()
    }
}

/// Generalised Gell-Mann basis.
///
/// Order: `I/√d`, then the symmetric pairs `(E_jk + E_kj)/√2` for `j < k`
/// (lexicographic), then the antisymmetric pairs `i(E_kj − E_jk)/√2`, then the
/// diagonal operators `(Σ_{m<l} E_mm − l E_ll)/√(l(l+1))`. For `d = 2` this
/// is `(I, X, Y, Z)/√2`.
pub fn herm_basis(d: usize) -> Result<HermitianBasis> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "operator basis needs d >= 2",
        });
    }
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let mut ops = Vec::with_capacity(d * d);
    ops.push(Operator::identity(d).scale_real(1.0 / math::sqrt(d as f64)));

    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|j| (j + 1..d).map(move |k| (j, k))).collect();
    for &(j, k) in &pairs {
        let mut m = Operator::zeros(d, d);
        m[(j, k)] = C64::new(s, 0.0);
        m[(k, j)] = C64::new(s, 0.0);
        ops.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = Operator::zeros(d, d);
        m[(j, k)] = C64::new(0.0, -s);
        m[(k, j)] = C64::new(0.0, s);
        ops.push(m);
    }
    for l in 1..d {
        let norm = 1.0 / math::sqrt((l * (l + 1)) as f64);
        let mut m = Operator::zeros(d, d);
        for k in 0..l {
            m[(k, k)] = C64::new(norm, 0.0);
        }
        m[(l, l)] = C64::new(-(l as f64) * norm, 0.0);
        ops.push(m);
    }
    Ok(HermitianBasis { dim: d, ops })
}
