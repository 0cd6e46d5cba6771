// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::designs::WeightedUnitarySet;
use crate::eigen::{eigh, unitary_log, Eigh};
use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};
use crate::math;
use crate::qops::herm_basis;

/// How the weights of a searched design are parametrised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// One logit per element.
    #[default]
    Free,
    /// Weights fixed at `1/n`; logits are ignored.
    Uniform,
    /// One logit per contiguous block of `d²` elements, read from the
    /// block's first logit slot.
    PerBasis,
}

impl WeightMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightMode::Free => "free",
            WeightMode::Uniform => "uniform",
            WeightMode::PerBasis => "per-basis",
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(WeightMode::Free),
            "uniform" => Ok(WeightMode::Uniform),
            "per-basis" | "per_basis" => Ok(WeightMode::PerBasis),
            other => Err(Error::UnknownName(other.into())),
        }
    }
}

/// Map from a real vector `θ` of length `n·d² + n` to `n` weighted
/// unitaries: `U_j = exp(i Σ_k θ_{jk} √d λ_k)` and weights given by the
/// normalised exponentials of the trailing logits.
#[derive(Debug, Clone)]
pub struct Parametrization {
    dim: usize,
    size: usize,
    mode: WeightMode,
    /// `√d λ_k`.
    generators: Vec<Operator>,
}

impl Parametrization {
    pub fn new(dim: usize, size: usize, mode: WeightMode) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter {
                name: "size",
                reason: "a design needs at least one element".into(),
            });
        }
        let d2 = dim * dim;
        if mode == WeightMode::PerBasis && size % d2 != 0 {
            return Err(Error::InvalidParameter {
                name: "size",
                reason: alloc::format!("per-basis weights need a multiple of d^2 = {d2} elements, got {size}"),
            });
        }
        let s = math::sqrt(dim as f64);
        let generators = herm_basis(dim)?.operators().iter().map(|l| l.scale_real(s)).collect();
        Ok(Self {
            dim,
            size,
            mode,
            generators,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn theta_len(&self) -> usize {
        self.size * self.dim * self.dim + self.size
    }

    pub(crate) fn generators(&self) -> &[Operator] {
        &self.generators
    }

    fn check_len(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.theta_len() {
            return Err(Error::DimensionMismatch {
                expected: self.theta_len(),
                found: theta.len(),
            });
        }
        Ok(())
    }

    /// `H_j = Σ_k θ_{jk} √d λ_k`.
    pub fn hamiltonian(&self, theta: &[f64], j: usize) -> Operator {
        let d2 = self.dim * self.dim;
        let mut h = Operator::zeros(self.dim, self.dim);
        for (k, g) in self.generators.iter().enumerate() {
            let c = theta[j * d2 + k];
            if c != 0.0 {
                h.add_scaled_real(c, g);
            }
        }
        h
    }

    /// Eigendecompositions of every `H_j` and the unitaries built from them.
    pub(crate) fn spectral(&self, theta: &[f64]) -> Result<(Vec<Eigh>, Vec<Operator>)> {
        self.check_len(theta)?;
        let mut eigs = Vec::with_capacity(self.size);
        let mut us = Vec::with_capacity(self.size);
        for j in 0..self.size {
            let e = eigh(&self.hamiltonian(theta, j))?;
            us.push(e.map(|m| C64::from_polar(1.0, m)));
            eigs.push(e);
        }
        Ok((eigs, us))
    }

    pub fn unitaries(&self, theta: &[f64]) -> Result<Vec<Operator>> {
        Ok(self.spectral(theta)?.1)
    }

    pub fn weights(&self, theta: &[f64]) -> Vec<f64> {
        let n = self.size;
        let logits = &theta[n * self.dim * self.dim..];
        match self.mode {
            WeightMode::Free => softmax(logits),
            WeightMode::Uniform => alloc::vec![1.0 / n as f64; n],
            WeightMode::PerBasis => {
                let d2 = self.dim * self.dim;
                let block: Vec<f64> = (0..n / d2).map(|b| logits[b * d2]).collect();
                let wb = softmax(&block);
                (0..n).map(|y| wb[y / d2] / d2 as f64).collect()
            }
        }
    }

    /// Raw elements before deduplication: `n` unitaries and their weights.
    pub fn elements(&self, theta: &[f64]) -> Result<(Vec<Operator>, Vec<f64>)> {
        Ok((self.unitaries(theta)?, self.weights(theta)))
    }

    /// The weighted set, with phase-equivalent elements merged.
    pub fn to_set(&self, theta: &[f64]) -> Result<WeightedUnitarySet> {
        let (us, ws) = self.elements(theta)?;
        WeightedUnitarySet::merged(us, ws)
    }

    /// A `θ` that maps back onto `set` (up to element phases): generator
    /// coefficients from the principal logarithm, logits from `ln w`.
    pub fn from_set(&self, set: &WeightedUnitarySet) -> Result<Vec<f64>> {
        if set.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: set.dim(),
            });
        }
        if set.len() != self.size {
            return Err(Error::InvalidParameter {
                name: "size",
                reason: alloc::format!("set has {} elements, parametrisation {}", set.len(), self.size),
            });
        }
        let d = self.dim as f64;
        let mut theta = Vec::with_capacity(self.theta_len());
        for u in set.unitaries() {
            let h = unitary_log(u)?;
            // tr(√d λ_k · √d λ_j) = d δ_jk
            theta.extend(self.generators.iter().map(|g| g.hs_inner(&h).re / d));
        }
        match self.mode {
            WeightMode::Uniform => theta.extend(core::iter::repeat(0.0).take(self.size)),
            _ => theta.extend(set.weights().iter().map(|&w| math::ln(w))),
        }
        Ok(theta)
    }
}

/// Builds the weighted set for `θ`; the size is inferred from its length.
pub fn parametrize(dim: usize, mode: WeightMode, theta: &[f64]) -> Result<WeightedUnitarySet> {
    let per = dim * dim + 1;
    if dim == 0 || theta.is_empty() || theta.len() % per != 0 {
        return Err(Error::InvalidInput(alloc::format!(
            "theta length {} is not a positive multiple of d^2 + 1 = {per}",
            theta.len()
        )));
    }
    Parametrization::new(dim, theta.len() / per, mode)?.to_set(theta)
}

pub(crate) fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = logits.iter().map(|&l| math::exp(l - max)).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| x / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{phase_equivalent, pu2_11pt};
    use crate::linalg::paulis;

    #[test]
    fn zero_theta_gives_identities() {
        let p = Parametrization::new(2, 3, WeightMode::Free).unwrap();
        let theta = alloc::vec![0.0; p.theta_len()];
        let (us, ws) = p.elements(&theta).unwrap();
        assert!(us.iter().all(|u| *u == Operator::identity(2)));
        assert!(ws.iter().all(|w| (w - 1.0 / 3.0).abs() < 1e-15));
        assert_eq!(p.to_set(&theta).unwrap().len(), 1);
    }

    #[test]
    fn single_z_generator() {
        // exp(i π/2 Z) = iZ
        let p = Parametrization::new(2, 1, WeightMode::Free).unwrap();
        let mut theta = alloc::vec![0.0; p.theta_len()];
        theta[3] = core::f64::consts::FRAC_PI_2;
        let u = &p.unitaries(&theta).unwrap()[0];
        assert!(u.unitarity_residual() < 1e-10);
        assert!(phase_equivalent(u, &paulis()[3]));
    }

    #[test]
    fn round_trip_through_theta() {
        let set = pu2_11pt().unwrap();
        let p = Parametrization::new(2, 11, WeightMode::Free).unwrap();
        let theta = p.from_set(&set).unwrap();
        let back = p.to_set(&theta).unwrap();
        for ((u, w), (v, x)) in set.iter().zip(back.iter()) {
            assert!(phase_equivalent(u, v));
            assert!((w - x).abs() < 1e-12);
        }
    }

    #[test]
    fn per_basis_weights() {
        let p = Parametrization::new(2, 8, WeightMode::PerBasis).unwrap();
        let mut theta = alloc::vec![0.0; p.theta_len()];
        theta[32] = 1.0;
        theta[33] = 5.0; // ignored: not a block head
        let w = p.weights(&theta);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(w[..4].iter().all(|&x| (x - w[0]).abs() < 1e-15));
        assert!(w[0] > w[4]);
        assert!(Parametrization::new(2, 6, WeightMode::PerBasis).is_err());
    }

    #[test]
    fn mode_names() {
        for m in [WeightMode::Free, WeightMode::Uniform, WeightMode::PerBasis] {
            assert_eq!(m.as_str().parse::<WeightMode>().unwrap(), m);
        }
    }
}
