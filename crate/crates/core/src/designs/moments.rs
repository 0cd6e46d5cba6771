// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use super::potential::{frame_potential, gamma};
use super::set::WeightedUnitarySet;
use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::math;
use crate::qops::{permutation_operator, Permutation};

/// Default certification tolerance on the frame-potential gap.
pub const ATOL_CERT: f64 = 1e-8;

fn perm_op(one_line: &[usize], d: usize) -> Result<Operator> {
    permutation_operator(&Permutation::from_one_line(one_line)?, d)
}

/// Exact Haar moment `∫ U^{⊗t} ⊗ (U^{⊗t})† dU` for `t ∈ {1, 2}`:
///
/// - `t = 1`: `T/d`
/// - `t = 2`: `(P₃₄₁₂ + P₄₃₂₁)/(d²−1) − (P₄₃₁₂ + P₃₄₂₁)/(d(d²−1))`
pub fn haar_moment(t: u32, d: usize) -> Result<Operator> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "Haar moments need d >= 2",
        });
    }
    let df = d as f64;
    match t {
        1 => Ok(perm_op(&[2, 1], d)?.scale_real(1.0 / df)),
        2 => {
            let a = 1.0 / (df * df - 1.0);
            let b = -1.0 / (df * (df * df - 1.0));
            let mut m = perm_op(&[3, 4, 1, 2], d)?.scale_real(a);
            m.add_scaled_real(a, &perm_op(&[4, 3, 2, 1], d)?);
            m.add_scaled_real(b, &perm_op(&[4, 3, 1, 2], d)?);
            m.add_scaled_real(b, &perm_op(&[3, 4, 2, 1], d)?);
            Ok(m)
        }
        _ => Err(Error::Unsupported(alloc::format!(
            "exact Haar moments are implemented for t = 1, 2 only (got t = {t})"
        ))),
    }
}

/// `Σ w(x) U(x)^{⊗t} ⊗ (U(x)^{⊗t})†` for `t ∈ {1, 2}`.
pub fn design_moment(set: &WeightedUnitarySet, t: u32) -> Result<Operator> {
    if !(1..=2).contains(&t) {
        return Err(Error::Unsupported(alloc::format!(
            "moment operators are implemented for t = 1, 2 only (got t = {t})"
        )));
    }
    let d = set.dim();
    let big = d.pow(2 * t);
    let mut m = Operator::zeros(big, big);
    for (u, w) in set.iter() {
        let ud = u.adjoint();
        let mut factors: Vec<&Operator> = Vec::with_capacity(2 * t as usize);
        factors.extend((0..t).map(|_| u));
        factors.extend((0..t).map(|_| &ud));
        m.add_scaled_real(w, &Operator::kron_all(factors));
    }
    Ok(m)
}

/// Outcome of [`certify`].
#[derive(Debug, Clone, PartialEq)]
pub struct DesignCertificate {
    pub t: u32,
    pub potential: f64,
    pub gamma: f64,
    /// `potential − gamma`; never below `−atol_cert` by the Welch bound.
    pub gap: f64,
    /// `‖Σ w U^{⊗t}⊗(U^{⊗t})† − ∫ U^{⊗t}⊗(U^{⊗t})† dU‖` for `t ≤ 2`.
    pub moment_residual: Option<f64>,
    pub atol_cert: f64,
    pub pass: bool,
}

impl DesignCertificate {
    /// Threshold on the moment residual matched to `atol_cert` on the gap.
    /// The squared residual equals the gap, so the two tests coincide.
    pub fn moment_threshold(&self) -> f64 {
        math::sqrt(self.atol_cert)
    }

    /// Whether the moment-operator test agrees with the gap test.
    pub fn criteria_agree(&self) -> bool {
        match self.moment_residual {
            Some(r) => (r <= self.moment_threshold()) == self.pass,
            None => true,
        }
    }
}

/// Frame-potential certificate for a weighted `t`-design, plus the
/// moment-operator residual when `t ≤ 2`.
pub fn certify(set: &WeightedUnitarySet, t: u32, atol_cert: f64) -> Result<DesignCertificate> {
    let potential = frame_potential(set, t)?;
    let g = gamma(t as usize, set.dim())? as f64;
    let gap = potential - g;
    let moment_residual = if t <= 2 && set.dim() >= 2 {
        let diff = &design_moment(set, t)? - &haar_moment(t, set.dim())?;
        Some(diff.frobenius_norm())
    } else {
        None
    };
    Ok(DesignCertificate {
        t,
        potential,
        gamma: g,
        gap,
        moment_residual,
        atol_cert,
        pass: gap <= atol_cert,
    })
}

/// Diagnostics tied to the `(d²−1)²+1` cardinality bound for 2-designs.
#[derive(Debug, Clone, PartialEq)]
pub struct CardinalityDiagnostic {
    pub size: usize,
    pub bound: usize,
    pub meets_bound: bool,
    pub at_bound: bool,
    pub uniform: bool,
    /// `max_{x≠y} | |tr(U(x)†U(y))|² − (1 − 1/(d²−1)) |`; zero for a tight design.
    pub equiangular_defect: f64,
}

pub fn cardinality_diagnostic(set: &WeightedUnitarySet) -> CardinalityDiagnostic {
    let d2 = (set.dim() * set.dim()) as f64;
    let bound = (set.dim() * set.dim() - 1).pow(2) + 1;
    let target = 1.0 - 1.0 / (d2 - 1.0);
    let us = set.unitaries();
    let mut defect: f64 = 0.0;
    for x in 0..us.len() {
        for y in 0..x {
            defect = defect.max((us[x].hs_inner(&us[y]).norm_sqr() - target).abs());
        }
    }
    let n = set.len() as f64;
    CardinalityDiagnostic {
        size: set.len(),
        bound,
        meets_bound: set.len() >= bound,
        at_bound: set.len() == bound,
        uniform: set.weights().iter().all(|w| (w - 1.0 / n).abs() < 1e-12),
        equiangular_defect: defect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::{haar_unitary, partial_trace};
    use crate::rng::Stream;

    #[test]
    fn first_moment_is_half_swap() {
        let m = haar_moment(1, 2).unwrap();
        let e = crate::eigen::eigvalsh(&m).unwrap();
        assert!((e[0] + 0.5).abs() < 1e-12 && (e[3] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn second_moment_reduces_to_first() {
        // tr over factors 2,3 of M2 (I ⊗ T ⊗ I) gives d·M1 = T
        for d in [2, 3] {
            let m2 = haar_moment(2, d).unwrap();
            let t = perm_op(&[2, 1], d).unwrap();
            let id = Operator::identity(d);
            let inserted = m2.matmul(&Operator::kron_all([&id, &t, &id]));
            let reduced = partial_trace(&inserted, &[d; 4], &[false, true, true, false]).unwrap();
            assert!(reduced.distance(&t) < 1e-12, "d = {d}");
            assert!(m2.is_hermitian(1e-12));
        }
    }

    #[test]
    fn second_moment_matches_monte_carlo_entries() {
        let d = 2;
        let mut rng = Stream::from_seed(17);
        let n = 20_000;
        let exact = haar_moment(2, d).unwrap();
        let mut sum = Operator::zeros(16, 16);
        for _ in 0..n {
            let u = haar_unitary(d, &mut rng);
            let ud = u.adjoint();
            sum.add_scaled_real(1.0, &Operator::kron_all([&u, &u, &ud, &ud]));
        }
        let mean = sum.scale_real(1.0 / n as f64);
        // entries are bounded by 1, so the standard error is at most 1/√n
        let tol = 5.0 / (n as f64).sqrt();
        for (a, b) in mean.as_slice().iter().zip(exact.as_slice()) {
            assert!((a - b).norm() < tol, "{a} vs {b}");
        }
    }

    #[test]
    fn unsupported_orders() {
        assert!(matches!(haar_moment(3, 2), Err(Error::Unsupported(_))));
    }
}
