// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;

use crate::eigen::expi_hermitian;
use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};
use crate::rng::Stream;
use crate::ATOL_ALG;

/// Two unitaries are phase-equivalent when `|tr(U†V)|² ≥ d² − DEDUP_TOL`.
pub const DEDUP_TOL: f64 = 1e-6;

/// `|tr(U†V)|²`.
pub fn overlap_sqr(u: &Operator, v: &Operator) -> f64 {
    u.hs_inner(v).norm_sqr()
}

pub fn phase_equivalent(u: &Operator, v: &Operator) -> bool {
    let d = u.rows() as f64;
    overlap_sqr(u, v) >= d * d - DEDUP_TOL
}

/// Finite set of unitaries on `C^d` with positive weights summing to one,
/// understood as a subset of `PU(d)`.
#[derive(Debug, Clone)]
pub struct WeightedUnitarySet {
    dim: usize,
    unitaries: Vec<Operator>,
    weights: Vec<f64>,
}

impl WeightedUnitarySet {
    /// Validates every invariant and fixes each element's global phase.
    pub fn new(unitaries: Vec<Operator>, weights: Vec<f64>) -> Result<Self> {
        let dim = Self::check_shapes(&unitaries, &weights)?;
        for (k, &w) in weights.iter().enumerate() {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidInput(format!("weight {k} is not positive: {w}")));
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > ATOL_ALG {
            return Err(Error::InvalidInput(format!("weights sum to {total}, not 1")));
        }
        let unitaries: Vec<Operator> = unitaries.iter().map(Operator::canonical_phase).collect();
        for j in 0..unitaries.len() {
            for k in 0..j {
                if phase_equivalent(&unitaries[j], &unitaries[k]) {
                    return Err(Error::InvalidInput(format!(
                        "elements {k} and {j} are phase-equivalent"
                    )));
                }
            }
        }
        Ok(Self {
            dim,
            unitaries,
            weights,
        })
    }

    /// Uniform weights `1/n`.
    pub fn uniform(unitaries: Vec<Operator>) -> Result<Self> {
        let n = unitaries.len();
        Self::new(unitaries, alloc::vec![1.0 / n as f64; n])
    }

    /// Like [`new`](Self::new), but phase-equivalent elements are merged by
    /// summing their weights, non-positive weights are dropped and the
    /// result is renormalised.
    pub fn merged(unitaries: Vec<Operator>, weights: Vec<f64>) -> Result<Self> {
        Self::check_shapes(&unitaries, &weights)?;
        let mut keep: Vec<Operator> = Vec::new();
        let mut kept_w: Vec<f64> = Vec::new();
        for (u, w) in unitaries.into_iter().zip(weights) {
            if !(w > 0.0) {
                continue;
            }
            let u = u.canonical_phase();
            match keep.iter().position(|v| phase_equivalent(v, &u)) {
                Some(k) => kept_w[k] += w,
                None => {
                    keep.push(u);
                    kept_w.push(w);
                }
            }
        }
        let total: f64 = kept_w.iter().sum();
        if keep.is_empty() || !(total > 0.0) {
            return Err(Error::InvalidInput("no element with positive weight".into()));
        }
        kept_w.iter_mut().for_each(|w| *w /= total);
        Self::new(keep, kept_w)
    }

    fn check_shapes(unitaries: &[Operator], weights: &[f64]) -> Result<usize> {
        let first = unitaries
            .first()
            .ok_or_else(|| Error::InvalidInput("empty weighted set".into()))?;
        if unitaries.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} unitaries but {} weights",
                unitaries.len(),
                weights.len()
            )));
        }
        let dim = first.rows();
        if dim == 0 {
            return Err(Error::InvalidDimension {
                dim,
                reason: "unitaries must be at least 1x1",
            });
        }
        for u in unitaries {
            if u.rows() != dim || u.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.rows(),
                });
            }
            u.ensure_unitary(ATOL_ALG)?;
        }
        Ok(dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }

    pub fn unitaries(&self) -> &[Operator] {
        &self.unitaries
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Operator, f64)> {
        self.unitaries.iter().zip(self.weights.iter().copied())
    }

    /// Every element right-multiplied by `exp(i·scale·H)` with `H` drawn
    /// from the Gaussian unitary ensemble. Weights are kept.
    pub fn perturbed(&self, scale: f64, rng: &mut Stream) -> Result<Self> {
        let d = self.dim;
        let moved = self
            .unitaries
            .iter()
            .map(|u| {
                let g = Operator::from_fn(d, d, |_, _| rng.complex_normal());
                let h = (&g + &g.adjoint()).scale_real(0.5 * scale);
                Ok(u.matmul(&expi_hermitian(&h)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::merged(moved, self.weights.clone())
    }

    /// Same elements left-multiplied by `v` (a symmetry of every
    /// frame potential).
    pub fn left_translate(&self, v: &Operator) -> Result<Self> {
        let moved = self.unitaries.iter().map(|u| v.matmul(u)).collect();
        Self::new(moved, self.weights.clone())
    }

    /// Gram matrix `c_xy = tr(U_x† U_y)`.
    pub fn gram(&self) -> Vec<Vec<C64>> {
        self.unitaries
            .iter()
            .map(|u| self.unitaries.iter().map(|v| u.hs_inner(v)).collect())
            .collect()
    }
}
