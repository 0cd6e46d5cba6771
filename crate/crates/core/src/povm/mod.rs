// SPDX-License-Identifier: Apache-2.0

//! Discrete POVMs, frame superoperators, tightness and canonical duals.
//!
//! A POVM on `C^D` with elements `F(x)` is stored together with its trace
//! measure `τ(x) = tr F(x)` and density `P(x) = F(x)/τ(x)`. Its frame
//! superoperator `𝓕 = Σ τ(x)|P(x)⟩⟩⟨⟨P(x)|` acts by the left-right action.

use alloc::format;
use alloc::vec::Vec;

use crate::designs::WeightedUnitarySet;
use crate::eigen::{eigh, Eigh};
use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::qops::{max_entangled_ket, split_dim, ChannelClass, SuperOperator};
use crate::ATOL_ALG;

/// Tolerance for tightness and support checks.
pub const ATOL_TIGHT: f64 = 1e-8;

/// Probabilities below `−NEGATIVE_CLAMP` are an error; those above are
/// clamped to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

/// A POVM with finitely many outcomes.
#[derive(Debug, Clone)]
pub struct DiscretePovm {
    dim: usize,
    elements: Vec<Operator>,
    taus: Vec<f64>,
    povds: Vec<Operator>,
}

impl DiscretePovm {
    /// Validates positivity and `Σ F(x) = I`.
    pub fn from_elements(elements: Vec<Operator>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidInput("POVM without outcomes".into()))?;
        let dim = first.rows();
        let mut total = Operator::zeros(dim, dim);
        let mut taus = Vec::with_capacity(elements.len());
        let mut povds = Vec::with_capacity(elements.len());
        for (x, f) in elements.iter().enumerate() {
            if f.rows() != dim || f.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.rows(),
                });
            }
            if !f.is_hermitian(ATOL_ALG) {
                return Err(Error::InvalidInput(format!("POVM element {x} is not Hermitian")));
            }
            let min = eigh(f)?.values[0];
            if min < -ATOL_ALG {
                return Err(Error::InvalidInput(format!(
                    "POVM element {x} is not positive (eigenvalue {min:.3e})"
                )));
            }
            let tau = f.trace().re;
            if !(tau > 0.0) {
                return Err(Error::InvalidInput(format!("POVM element {x} has zero trace")));
            }
            total = &total + f;
            taus.push(tau);
            povds.push(f.scale_real(1.0 / tau));
        }
        let residual = total.distance(&Operator::identity(dim));
        if residual > ATOL_ALG {
            return Err(Error::NotAPovm { residual });
        }
        Ok(Self {
            dim,
            elements,
            taus,
            povds,
        })
    }

    /// System dimension `D`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Operator] {
        &self.elements
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn povds(&self) -> &[Operator] {
        &self.povds
    }

    /// Every `P(x)` has rank one.
    pub fn is_rank_one(&self) -> bool {
        self.povds.iter().all(|p| {
            let e = eigh(p).map(|e| e.rank()).unwrap_or(0);
            e == 1
        })
    }

    /// `p(x) = tr[F(x) ρ]` with small negatives clamped and the result
    /// renormalised.
    pub fn probabilities(&self, rho: &Operator) -> Result<Vec<f64>> {
        if rho.rows() != self.dim || rho.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.rows(),
            });
        }
        let mut p: Vec<f64> = self.elements.iter().map(|f| f.hs_inner(rho).re).collect();
        for (x, v) in p.iter_mut().enumerate() {
            if *v < -NEGATIVE_CLAMP {
                return Err(Error::NotAState(format!("outcome {x} has probability {v:.3e}")));
            }
            *v = v.max(0.0);
        }
        let total: f64 = p.iter().sum();
        let defect = (total - 1.0).abs();
        if defect > ATOL_ALG {
            return Err(Error::InconsistentPovm { defect });
        }
        p.iter_mut().for_each(|v| *v /= total);
        Ok(p)
    }
}

/// `τ(x) = d² w(x)`, `P(x) = |U(x)⟩⟨U(x)|` on `C^d ⊗ C^d`.
pub fn povm_from_design(set: &WeightedUnitarySet) -> Result<DiscretePovm> {
    let d = set.dim();
    let big = d * d;
    let mut elements = Vec::with_capacity(set.len());
    let mut total = Operator::zeros(big, big);
    for (u, w) in set.iter() {
        let k = max_entangled_ket(u)?;
        let f = Operator::outer(&k, &k).scale_real(big as f64 * w);
        total = &total + &f;
        elements.push(f);
    }
    let residual = total.distance(&Operator::identity(big));
    if residual > ATOL_ALG {
        return Err(Error::NotAPovm { residual });
    }
    DiscretePovm::from_elements(elements)
}

/// `𝓕 = Σ τ(x) |P(x)⟩⟩⟨⟨P(x)|`.
pub fn frame_superop(povm: &DiscretePovm) -> SuperOperator {
    let mut f = SuperOperator::zeros(povm.dim());
    for (p, &tau) in povm.povds().iter().zip(povm.taus()) {
        f.add_ket_bra(tau, p, p);
    }
    f
}

/// Span dimension `δ` of a class on `C^d ⊗ C^d` and the projector onto it,
/// for a POVM on `C^D`, `D = d²`.
fn class_geometry(class: ChannelClass, big: usize) -> Result<(usize, SuperOperator)> {
    let d = split_dim(big)?;
    Ok((class.span_dim(d), class.projector(d)?))
}

/// Result of [`tight_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessReport {
    pub class: ChannelClass,
    /// `‖𝓕 − [aΠ + ((δ−D)/((δ−1)D))|I⟩⟩⟨⟨I|]‖`, `a = (D−1)/(δ−1)`.
    pub residual: f64,
    pub rank_one: bool,
    pub is_tight_rank_one: bool,
    pub trace_f: f64,
    /// `Tr(𝓕²)`; at least 2 for POVMs from unitary sets.
    pub trace_f_sqr: f64,
}

/// Compares `𝓕` with the frame superoperator of a tight rank-one POVM whose
/// support is the span of `class`.
pub fn tight_check(povm: &DiscretePovm, class: ChannelClass) -> Result<TightnessReport> {
    let big = povm.dim();
    let (delta, pi) = class_geometry(class, big)?;
    let (df, bf) = (delta as f64, big as f64);
    let a = (bf - 1.0) / (df - 1.0);
    let b = (df - bf) / ((df - 1.0) * bf);
    let mut target = pi.scale(a);
    let id = Operator::identity(big);
    target.add_ket_bra(b, &id, &id);
    let f = frame_superop(povm);
    let residual = f.distance(&target);
    let rank_one = povm.is_rank_one();
    let fm = f.matrix();
    Ok(TightnessReport {
        class,
        residual,
        rank_one,
        is_tight_rank_one: rank_one && residual <= ATOL_TIGHT,
        trace_f: f.trace().re,
        trace_f_sqr: fm.hs_inner(fm).re,
    })
}

/// Canonical dual frame of a POVM restricted to its support.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub class: ChannelClass,
    /// `𝓕̃`, the inverse of `𝓕` on its support.
    pub ftilde: SuperOperator,
    /// `R(x) = 𝓕̃|P(x)⟩⟩`.
    pub duals: Vec<Operator>,
    /// Projector `Π_𝓕` onto the support of `𝓕`.
    pub support: SuperOperator,
    pub support_rank: usize,
}

impl Reconstruction {
    /// `ρ̂ = Σ p(x) R(x)`.
    pub fn estimate(&self, p: &[f64]) -> Operator {
        let n = self.duals[0].rows();
        let mut out = Operator::zeros(n, n);
        for (r, &px) in self.duals.iter().zip(p) {
            if px != 0.0 {
                out.add_scaled_real(px, r);
            }
        }
        out
    }

    /// `Σ_x p(x) tr R(x)²`.
    pub fn delta(&self, p: &[f64]) -> f64 {
        self.duals
            .iter()
            .zip(p)
            .map(|(r, &px)| px * r.frobenius_norm_sqr())
            .sum()
    }

    /// Whether `ρ` lies in the support of `𝓕`.
    pub fn support_residual(&self, rho: &Operator) -> f64 {
        self.support.apply(rho).distance(rho)
    }
}

/// `Δ_τ(R) = Σ τ(x) tr R(x)²`; equals `Tr(𝓕̃)` for the canonical dual.
pub fn delta_tau(povm: &DiscretePovm, recon: &Reconstruction) -> f64 {
    recon.delta(povm.taus())
}

/// Canonical dual `R(x) = 𝓕̃(P(x))`, after checking that the support of
/// `𝓕` contains the span of `class`.
pub fn canonical_dual(povm: &DiscretePovm, class: ChannelClass) -> Result<Reconstruction> {
    let big = povm.dim();
    let (delta, pi) = class_geometry(class, big)?;
    let f = frame_superop(povm);
    let e: Eigh = f.eigh()?;
    let support_rank = e.rank();
    let support = SuperOperator::from_matrix(big, e.support_projector())?;
    let contained = support.compose(&pi).distance(&pi);
    if contained > ATOL_TIGHT {
        return Err(Error::NotInformationallyComplete {
            class: class.as_str(),
            support_rank,
            span_dim: delta,
        });
    }
    let ftilde = SuperOperator::from_matrix(big, e.pseudo_inverse())?;
    let duals = povm.povds().iter().map(|p| ftilde.apply(p)).collect();
    Ok(Reconstruction {
        class,
        ftilde,
        duals,
        support,
        support_rank,
    })
}

/// `(δ−1)²/(D−1) + 1`, the minimum of `Δ_τ(R)` over POVMs whose frame
/// support is the span of `class`.
pub fn delta_tau_bound(class: ChannelClass, d: usize) -> f64 {
    let delta = class.span_dim(d) as f64;
    let big = (d * d) as f64;
    (delta - 1.0) * (delta - 1.0) / (big - 1.0) + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{pu2_11pt, pu2_clifford12};
    use crate::linalg::C64;

    #[test]
    fn eleven_point_povm() {
        let povm = povm_from_design(&pu2_11pt().unwrap()).unwrap();
        assert_eq!(povm.len(), 11);
        assert!((povm.taus()[0] - 0.25).abs() < 1e-15);
        assert!(povm.taus()[1..].iter().all(|t| (t - 0.375).abs() < 1e-15));
        assert!((povm.taus().iter().sum::<f64>() - 4.0).abs() < 1e-12);
        let r = tight_check(&povm, ChannelClass::Unital).unwrap();
        assert!(r.is_tight_rank_one, "{r:?}");
        assert!(!tight_check(&povm, ChannelClass::General).unwrap().is_tight_rank_one);
    }

    #[test]
    fn clifford_taus() {
        let povm = povm_from_design(&pu2_clifford12().unwrap()).unwrap();
        assert!(povm.taus().iter().all(|t| (t - 1.0 / 3.0).abs() < 1e-12));
    }

    #[test]
    fn dual_closed_form() {
        let povm = povm_from_design(&pu2_11pt().unwrap()).unwrap();
        let rec = canonical_dual(&povm, ChannelClass::Unital).unwrap();
        let half = Operator::identity(4).scale_real(0.5);
        for (r, p) in rec.duals.iter().zip(povm.povds()) {
            assert!(r.distance(&(&p.scale_real(3.0) - &half)) < 1e-9);
        }
        assert!((delta_tau(&povm, &rec) - 28.0).abs() < 1e-8);
        assert!((rec.ftilde.trace().re - 28.0).abs() < 1e-8);
        assert!(matches!(
            canonical_dual(&povm, ChannelClass::General),
            Err(Error::NotInformationallyComplete { .. })
        ));
    }

    #[test]
    fn product_basis_measurement() {
        let elements = (0..4)
            .map(|k| {
                let mut f = Operator::zeros(4, 4);
                f[(k, k)] = C64::new(1.0, 0.0);
                f
            })
            .collect();
        let povm = DiscretePovm::from_elements(elements).unwrap();
        let f = frame_superop(&povm);
        assert!((f.trace().re - 4.0).abs() < 1e-12);
        assert_eq!(f.rank().unwrap(), 4);
    }

    #[test]
    fn trivial_povm() {
        let m = 3;
        let elements = (0..m)
            .map(|_| Operator::identity(4).scale_real(1.0 / m as f64))
            .collect();
        let povm = DiscretePovm::from_elements(elements).unwrap();
        let f = frame_superop(&povm);
        let id = Operator::identity(4);
        assert!(f.apply(&id).distance(&id) < 1e-12);
        assert_eq!(f.rank().unwrap(), 1);
    }

    #[test]
    fn non_design_is_not_a_povm() {
        let [i, x, _, _] = crate::linalg::paulis();
        let set = WeightedUnitarySet::uniform(alloc::vec![i, x]).unwrap();
        assert!(matches!(povm_from_design(&set), Err(Error::NotAPovm { .. })));
    }
}
