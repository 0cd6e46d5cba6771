// SPDX-License-Identifier: Apache-2.0

//! Numerical design search: minimise the frame-potential gap over
//! parametrised weighted sets.
//!
//! Restart `i` draws its starting point from [`Stream::child`]`(seed, i)`,
//! so restarts can be run in any order or in parallel. [`search`] runs them
//! in index order and stops at the first restart that reaches the target
//! gap; [`select`] applies the same rule to restarts computed elsewhere.

mod lbfgs;
mod objective;
mod param;

use alloc::vec::Vec;

pub use objective::Objective;
pub use param::{parametrize, Parametrization, WeightMode};

use crate::designs::{frame_potential, gamma, WeightedUnitarySet};
use crate::error::{Error, Result};
use crate::rng::Stream;

/// Scale of the Gaussian generator coefficients at a restart.
pub const INIT_SCALE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub dim: usize,
    pub size: usize,
    pub t: u32,
    pub max_iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    pub target_gap: f64,
    pub weight_mode: WeightMode,
}

impl SearchConfig {
    pub fn new(dim: usize, size: usize, t: u32) -> Self {
        Self {
            dim,
            size,
            t,
            max_iterations: 2000,
            restarts: 50,
            seed: 0,
            target_gap: crate::designs::ATOL_CERT,
            weight_mode: WeightMode::Free,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidDimension {
                dim: self.dim,
                reason: "design search needs d >= 2",
            });
        }
        if self.size == 0 {
            return Err(Error::InvalidParameter {
                name: "size",
                reason: "size must be at least 1".into(),
            });
        }
        if self.t == 0 {
            return Err(Error::InvalidParameter {
                name: "t",
                reason: "t must be at least 1".into(),
            });
        }
        if !(self.target_gap > 0.0) {
            return Err(Error::InvalidParameter {
                name: "target_gap",
                reason: "target gap must be positive".into(),
            });
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter {
                name: "restarts",
                reason: "at least one restart is needed".into(),
            });
        }
        gamma(self.t as usize, self.dim)?;
        Parametrization::new(self.dim, self.size, self.weight_mode)?;
        Ok(())
    }

    fn objective(&self) -> Result<Objective> {
        Objective::new(Parametrization::new(self.dim, self.size, self.weight_mode)?, self.t)
    }
}

/// One local optimisation.
#[derive(Debug, Clone)]
pub struct RestartResult {
    pub index: usize,
    pub set: WeightedUnitarySet,
    /// Gap of `set` after merging phase-equivalent elements.
    pub gap: f64,
    pub converged: bool,
    /// Objective after every accepted optimiser step.
    pub history: Vec<f64>,
}

/// Result of [`search`] or [`refine`].
#[derive(Debug, Clone)]
pub struct SearchTrace {
    /// Running best gap over all optimiser steps, restarts in index order.
    pub best_gaps: Vec<f64>,
    pub set: WeightedUnitarySet,
    pub gap: f64,
    pub converged: bool,
    /// Restart the result came from (`None` for [`refine`]).
    pub restart: Option<usize>,
    pub restarts_run: usize,
    /// Filled in by callers that have a clock.
    pub wall_clock_seconds: Option<f64>,
}

fn gap_of(set: &WeightedUnitarySet, t: u32) -> Result<f64> {
    Ok(frame_potential(set, t)? - gamma(t as usize, set.dim())? as f64)
}

/// Runs restart `index` of `config`.
pub fn run_restart(config: &SearchConfig, index: usize) -> Result<RestartResult> {
    config.validate()?;
    let obj = config.objective()?;
    let p = obj.parametrization();
    let mut rng = Stream::child(config.seed, index as u64);
    let gens = p.size() * p.dim() * p.dim();
    let mut theta0: Vec<f64> = (0..gens).map(|_| INIT_SCALE * rng.normal()).collect();
    theta0.extend(core::iter::repeat(0.0).take(p.size()));
    let out = lbfgs::minimize(theta0, config.max_iterations, config.target_gap, |x, g| {
        obj.value_and_gradient(x, g)
    })?;
    let set = p.to_set(&out.x)?;
    let gap = gap_of(&set, config.t)?;
    Ok(RestartResult {
        index,
        set,
        gap,
        converged: gap <= config.target_gap,
        history: out.history,
    })
}

/// Combines restarts given in index order: the first converged restart
/// wins and later ones are discarded; without convergence the smallest gap
/// wins, ties going to the lower index.
pub fn select(config: &SearchConfig, results: Vec<RestartResult>) -> Result<SearchTrace> {
    let cut = results
        .iter()
        .position(|r| r.converged)
        .map_or(results.len(), |k| k + 1);
    let mut results = results;
    results.truncate(cut);
    let restarts_run = results.len();
    let mut best_gaps = Vec::new();
    let mut running = f64::INFINITY;
    for r in &results {
        for &f in &r.history {
            running = running.min(f);
            best_gaps.push(running);
        }
    }
    let best = results
        .into_iter()
        .reduce(|a, b| if b.gap < a.gap { b } else { a })
        .ok_or_else(|| Error::InvalidInput("no restarts to select from".into()))?;
    Ok(SearchTrace {
        best_gaps,
        converged: best.gap <= config.target_gap,
        gap: best.gap,
        set: best.set,
        restart: Some(best.index),
        restarts_run,
        wall_clock_seconds: None,
    })
}

/// Multi-restart search. Deterministic given `config.seed`.
pub fn search(config: &SearchConfig) -> Result<SearchTrace> {
    config.validate()?;
    let mut results = Vec::new();
    for i in 0..config.restarts {
        let r = run_restart(config, i)?;
        let done = r.converged;
        results.push(r);
        if done {
            break;
        }
    }
    select(config, results)
}

/// Local optimisation started from `set`. The returned gap is never larger
/// than the input's: if optimisation does not improve on it, `set` itself
/// is returned.
pub fn refine(set: &WeightedUnitarySet, config: &SearchConfig) -> Result<SearchTrace> {
    if set.dim() != config.dim {
        return Err(Error::DimensionMismatch {
            expected: config.dim,
            found: set.dim(),
        });
    }
    let config = SearchConfig {
        size: set.len(),
        ..config.clone()
    };
    config.validate()?;
    let obj = config.objective()?;
    let p = obj.parametrization();
    let input_gap = gap_of(set, config.t)?;
    let theta0 = p.from_set(set)?;
    let out = lbfgs::minimize(
        theta0,
        config.max_iterations,
        config.target_gap.min(input_gap),
        |x, g| obj.value_and_gradient(x, g),
    )?;
    let candidate = p.to_set(&out.x)?;
    let candidate_gap = gap_of(&candidate, config.t)?;
    let (set, gap) = if candidate_gap <= input_gap {
        (candidate, candidate_gap)
    } else {
        (set.clone(), input_gap)
    };
    let mut best_gaps = alloc::vec![input_gap];
    let mut running = input_gap;
    for &f in &out.history[1..] {
        running = running.min(f);
        best_gaps.push(running);
    }
    running = running.min(gap);
    if let Some(last) = best_gaps.last_mut() {
        *last = running;
    }
    Ok(SearchTrace {
        best_gaps,
        converged: gap <= config.target_gap,
        gap,
        set,
        restart: None,
        restarts_run: 1,
        wall_clock_seconds: None,
    })
}
