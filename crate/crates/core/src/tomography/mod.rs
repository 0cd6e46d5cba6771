// SPDX-License-Identifier: Apache-2.0

//! Monte Carlo ancilla-assisted process tomography.
//!
//! The channel acts on half of `|I⟩⟨I|`; the output `σ` is measured `N`
//! times with a POVM on `C^d ⊗ C^d`, and `σ` is estimated linearly from the
//! outcome frequencies with the canonical dual frame.

mod channels;

use alloc::vec::Vec;

pub use channels::{channel_gallery, ChannelSpec};

use crate::designs::WeightedUnitarySet;
use crate::eigen::eigvalsh;
use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::math;
use crate::povm::{canonical_dual, povm_from_design, DiscretePovm, Reconstruction, ATOL_TIGHT};
use crate::qops::{jamiolkowski, linear_inverse_jamiolkowski, split_dim, ChannelClass, QuantumChannel, SuperOperator};
use crate::rng::Stream;

/// `c(d)` in `e = (c(d) − tr σ²)/N` for the optimal POVM of each class:
/// `d⁴ + d² − 1` (full), `d⁴ − d² + 1/d²` (gc), `d⁴ − 3d² + 3` (uc).
pub fn class_constant(class: ChannelClass, d: usize) -> f64 {
    let d2 = (d * d) as f64;
    let d4 = d2 * d2;
    match class {
        ChannelClass::Full => d4 + d2 - 1.0,
        ChannelClass::General => d4 - d2 + 1.0 / d2,
        ChannelClass::Unital => d4 - 3.0 * d2 + 3.0,
    }
}

/// Mean squared Hilbert–Schmidt error `(c(d) − purity)/N` of the optimal
/// linear estimate from `N` shots.
pub fn predicted_error(d: usize, purity: f64, shots: u64, class: ChannelClass) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "predicted error needs d >= 2",
        });
    }
    if shots == 0 {
        return Err(Error::InvalidParameter {
            name: "shots",
            reason: "at least one shot is needed".into(),
        });
    }
    let d2 = (d * d) as f64;
    // σ lives on C^d ⊗ C^d, so its purity is at least 1/d²
    if !(purity >= 1.0 / d2 - 1e-9 && purity <= 1.0 + 1e-9) {
        return Err(Error::InvalidParameter {
            name: "purity",
            reason: alloc::format!("purity {purity} outside [1/d^2, 1]"),
        });
    }
    Ok((class_constant(class, d) - purity) / shots as f64)
}

/// Summary of a batch of tomography trials.
#[derive(Debug, Clone, PartialEq)]
pub struct TomographyReport {
    pub class: ChannelClass,
    pub d: usize,
    pub shots: u64,
    pub trials: usize,
    /// Mean of `‖σ − ρ̂‖²` over trials.
    pub empirical_mean: f64,
    pub std_err: f64,
    pub predicted: f64,
    pub purity: f64,
    pub seed: u64,
    /// Smallest eigenvalue over all trial estimates `ρ̂`; negative values
    /// flag unphysical linear estimates.
    pub min_estimate_eigenvalue: f64,
}

impl TomographyReport {
    /// `(empirical − predicted)/std_err`.
    pub fn z_score(&self) -> f64 {
        if self.std_err > 0.0 {
            (self.empirical_mean - self.predicted) / self.std_err
        } else if self.empirical_mean == self.predicted {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub index: usize,
    pub counts: Vec<u64>,
    pub error_sqr: f64,
    pub min_eigenvalue: f64,
}

/// Precomputed state for repeated trials against one channel output.
#[derive(Debug, Clone)]
pub struct Experiment {
    povm: DiscretePovm,
    recon: Reconstruction,
    sigma: Operator,
    probs: Vec<f64>,
    cdf: Vec<f64>,
    purity: f64,
    d: usize,
}

impl Experiment {
    /// Checks that `σ` lies in the support of the POVM's frame.
    pub fn new(povm: DiscretePovm, recon: Reconstruction, sigma: Operator) -> Result<Self> {
        let d = split_dim(povm.dim())?;
        let residual = recon.support_residual(&sigma);
        if residual > ATOL_TIGHT {
            return Err(Error::NotInformationallyComplete {
                class: recon.class.as_str(),
                support_rank: recon.support_rank,
                span_dim: recon.class.span_dim(d),
            });
        }
        let probs = povm.probabilities(&sigma)?;
        let mut cdf = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for p in &probs {
            acc += p;
            cdf.push(acc);
        }
        let purity = sigma.frobenius_norm_sqr();
        Ok(Self {
            povm,
            recon,
            sigma,
            probs,
            cdf,
            purity,
            d,
        })
    }

    /// POVM from a design, dual for `class`, and `σ` from `channel`.
    pub fn from_design(set: &WeightedUnitarySet, channel: &QuantumChannel, class: ChannelClass) -> Result<Self> {
        if channel.dim() != set.dim() {
            return Err(Error::DimensionMismatch {
                expected: set.dim(),
                found: channel.dim(),
            });
        }
        let povm = povm_from_design(set)?;
        let recon = canonical_dual(&povm, class)?;
        Self::new(povm, recon, jamiolkowski(channel))
    }

    pub fn povm(&self) -> &DiscretePovm {
        &self.povm
    }

    pub fn reconstruction(&self) -> &Reconstruction {
        &self.recon
    }

    pub fn sigma(&self) -> &Operator {
        &self.sigma
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn purity(&self) -> f64 {
        self.purity
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn predicted_error(&self, shots: u64) -> Result<f64> {
        predicted_error(self.d, self.purity, shots, self.recon.class)
    }

    /// `(Σ p(x) tr R(x)² − tr σ²)/N`, the exact mean error of this POVM.
    pub fn exact_error(&self, shots: u64) -> f64 {
        (self.recon.delta(&self.probs) - self.purity) / shots as f64
    }

    /// `N` outcomes drawn by walking the cumulative distribution.
    pub fn sample_counts(&self, shots: u64, rng: &mut Stream) -> Vec<u64> {
        let mut counts = alloc::vec![0u64; self.probs.len()];
        let last = self.probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        for _ in 0..shots {
            let u = rng.uniform();
            let x = self.cdf.iter().position(|&c| u < c).unwrap_or(last);
            counts[x] += 1;
        }
        counts
    }

    /// `ρ̂ = Σ (n_x/N) R(x)`.
    pub fn estimate(&self, counts: &[u64]) -> Operator {
        let total: u64 = counts.iter().sum();
        let freq: Vec<f64> = counts.iter().map(|&c| c as f64 / total as f64).collect();
        self.recon.estimate(&freq)
    }

    /// Trial `index` drawn from `Stream::child(seed, index)`.
    pub fn run_trial(&self, shots: u64, seed: u64, index: usize) -> Result<TrialOutcome> {
        let mut rng = Stream::child(seed, index as u64);
        let counts = self.sample_counts(shots, &mut rng);
        let rho_hat = self.estimate(&counts);
        let dist = self.sigma.distance(&rho_hat);
        let min_eigenvalue = eigvalsh(&rho_hat)?[0];
        Ok(TrialOutcome {
            index,
            counts,
            error_sqr: dist * dist,
            min_eigenvalue,
        })
    }

    /// Aggregates trial outcomes given in index order.
    pub fn report(&self, shots: u64, seed: u64, trials: &[TrialOutcome]) -> Result<TomographyReport> {
        if trials.is_empty() {
            return Err(Error::InvalidParameter {
                name: "trials",
                reason: "at least one trial is needed".into(),
            });
        }
        let n = trials.len() as f64;
        let errors: Vec<f64> = trials.iter().map(|t| t.error_sqr).collect();
        let mean = math::pairwise_sum(&errors) / n;
        let dev: Vec<f64> = errors.iter().map(|e| (e - mean) * (e - mean)).collect();
        let var = if trials.len() > 1 {
            math::pairwise_sum(&dev) / (n - 1.0)
        } else {
            0.0
        };
        Ok(TomographyReport {
            class: self.recon.class,
            d: self.d,
            shots,
            trials: trials.len(),
            empirical_mean: mean,
            std_err: math::sqrt(var / n),
            predicted: self.predicted_error(shots)?,
            purity: self.purity,
            seed,
            min_estimate_eigenvalue: trials.iter().map(|t| t.min_eigenvalue).fold(f64::INFINITY, f64::min),
        })
    }

    /// Runs `trials` trials sequentially.
    pub fn simulate(&self, shots: u64, trials: usize, seed: u64) -> Result<TomographyReport> {
        if shots == 0 {
            return Err(Error::InvalidParameter {
                name: "shots",
                reason: "at least one shot is needed".into(),
            });
        }
        let outcomes = (0..trials)
            .map(|i| self.run_trial(shots, seed, i))
            .collect::<Result<Vec<_>>>()?;
        self.report(shots, seed, &outcomes)
    }
}

/// Tomography of `channel` with the POVM of `set`, reconstructing on the
/// span of `class`.
pub fn simulate(
    set: &WeightedUnitarySet,
    channel: &QuantumChannel,
    class: ChannelClass,
    shots: u64,
    trials: usize,
    seed: u64,
) -> Result<TomographyReport> {
    Experiment::from_design(set, channel, class)?.simulate(shots, trials, seed)
}

/// Linear channel estimate with positivity deliberately not enforced.
#[derive(Debug, Clone)]
pub struct LinearChannelEstimate {
    /// `ρ̂`, the estimated Jamiołkowski state.
    pub state: Operator,
    /// Process matrix `d·ρ̂`.
    pub process: SuperOperator,
    /// Smallest eigenvalue of `ρ̂`.
    pub min_eigenvalue: f64,
    pub linear_estimate: bool,
}

impl LinearChannelEstimate {
    /// `ℰ̂(A)` by the ordinary superoperator action.
    pub fn apply(&self, a: &Operator) -> Operator {
        self.process.apply_ordinary(a)
    }
}

/// Channel estimate from outcome counts (or exact probabilities scaled to
/// any total).
pub fn estimate_channel(recon: &Reconstruction, counts: &[f64]) -> Result<LinearChannelEstimate> {
    if counts.len() != recon.duals.len() {
        return Err(Error::DimensionMismatch {
            expected: recon.duals.len(),
            found: counts.len(),
        });
    }
    let total: f64 = counts.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidInput("counts sum to zero".into()));
    }
    let freq: Vec<f64> = counts.iter().map(|c| c / total).collect();
    let state = recon.estimate(&freq);
    let process = linear_inverse_jamiolkowski(&state)?;
    let min_eigenvalue = eigvalsh(&state)?[0];
    Ok(LinearChannelEstimate {
        state,
        process,
        min_eigenvalue,
        linear_estimate: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::pu2_11pt;

    #[test]
    fn predicted_rows() {
        let uc = predicted_error(2, 1.0, 1, ChannelClass::Unital).unwrap();
        let full = predicted_error(2, 1.0, 1, ChannelClass::Full).unwrap();
        let gc = predicted_error(2, 1.0, 1, ChannelClass::General).unwrap();
        assert!((uc - 6.0).abs() < 1e-12);
        assert!((full - 18.0).abs() < 1e-12);
        assert!((gc - 11.25).abs() < 1e-12);
        assert!(predicted_error(2, 0.1, 1, ChannelClass::Unital).is_err());
        assert!(predicted_error(2, 1.0, 0, ChannelClass::Unital).is_err());
    }

    #[test]
    fn exact_probabilities_reconstruct_identity() {
        let ex =
            Experiment::from_design(&pu2_11pt().unwrap(), &QuantumChannel::identity(2), ChannelClass::Unital).unwrap();
        let rho = ex.reconstruction().estimate(ex.probabilities());
        assert!(rho.distance(ex.sigma()) < 1e-9);
        let est = estimate_channel(ex.reconstruction(), ex.probabilities()).unwrap();
        let a = Operator::from_fn(2, 2, |r, c| crate::C64::new(r as f64 + 1.0, c as f64));
        assert!(est.apply(&a).distance(&a) < 1e-9);
        assert!((ex.exact_error(1) - 6.0).abs() < 1e-9);
    }

    #[test]
    fn trials_are_reproducible() {
        let ex =
            Experiment::from_design(&pu2_11pt().unwrap(), &QuantumChannel::identity(2), ChannelClass::Unital).unwrap();
        let a = ex.run_trial(1000, 9, 3).unwrap();
        let b = ex.run_trial(1000, 9, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 1000);
    }
}
