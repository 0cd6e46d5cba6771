// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use udesign_core::designs::{clifford12_muub_split, pauli_basis, pu2_11pt, pu2_clifford12, WeightedUnitarySet};
use udesign_core::eigen::inv_sqrt;
use udesign_core::povm::{
    canonical_dual, delta_tau, delta_tau_bound, frame_superop, povm_from_design, tight_check, DiscretePovm,
};
use udesign_core::qops::{haar_unitary, jamiolkowski, ChannelClass};
use udesign_core::rng::Stream;
use udesign_core::tomography::{channel_gallery, ChannelSpec};
use udesign_core::{Error, Operator};

/// Mixture of `m` randomly rotated Pauli bases `{V σ_k W}` with random
/// per-basis weights: a 1-design, so its POVM is complete.
fn rotated_pauli_mixture(m: usize, rng: &mut Stream) -> WeightedUnitarySet {
    let raw: Vec<f64> = (0..m).map(|_| rng.exponential() + 1e-2).collect();
    let total: f64 = raw.iter().sum();
    let mut us = Vec::new();
    let mut ws = Vec::new();
    for r in &raw {
        let v = haar_unitary(2, rng);
        let w = haar_unitary(2, rng);
        for p in pauli_basis() {
            us.push(v.matmul(&p).matmul(&w));
            ws.push(r / total / 4.0);
        }
    }
    WeightedUnitarySet::merged(us, ws).unwrap()
}

/// Random full-rank POVM `F(x) = S^{-1/2} G(x) S^{-1/2}` on `C^n`.
fn random_povm(n: usize, outcomes: usize, rng: &mut Stream) -> DiscretePovm {
    let gs: Vec<Operator> = (0..outcomes)
        .map(|_| {
            let a = Operator::from_fn(n, n, |_, _| rng.complex_normal());
            a.matmul(&a.adjoint())
        })
        .collect();
    let mut s = Operator::zeros(n, n);
    for g in &gs {
        s.add_scaled_real(1.0, g);
    }
    let k = inv_sqrt(&s).unwrap();
    DiscretePovm::from_elements(gs.iter().map(|g| k.matmul(g).matmul(&k)).collect()).unwrap()
}

fn identity_sum(povm: &DiscretePovm) -> f64 {
    let n = povm.dim();
    let mut total = Operator::zeros(n, n);
    for f in povm.elements() {
        total.add_scaled_real(1.0, f);
    }
    total.distance(&Operator::identity(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn design_povms_are_complete(seed in any::<u64>(), m in 1usize..5) {
        let mut rng = Stream::from_seed(seed);
        let povm = povm_from_design(&rotated_pauli_mixture(m, &mut rng)).unwrap();
        prop_assert!(identity_sum(&povm) <= 1e-9);
        prop_assert!(povm.is_rank_one());
    }

    #[test]
    fn maximally_entangled_povms_have_frame_purity_at_least_two(seed in any::<u64>(), m in 1usize..6) {
        let mut rng = Stream::from_seed(seed);
        let povm = povm_from_design(&rotated_pauli_mixture(m, &mut rng)).unwrap();
        let report = tight_check(&povm, ChannelClass::Unital).unwrap();
        prop_assert!(report.trace_f_sqr >= 2.0 - 1e-9, "Tr F^2 = {}", report.trace_f_sqr);
    }

    #[test]
    fn random_povm_duals_resolve_the_identity(seed in any::<u64>()) {
        let mut rng = Stream::from_seed(seed);
        let povm = random_povm(4, 16, &mut rng);
        prop_assert!(identity_sum(&povm) <= 1e-9);
        // the dual's accuracy degrades like 1/λ_min(𝓕)
        prop_assume!(frame_superop(&povm).eigenvalues().unwrap()[0] > 1e-5);
        let recon = canonical_dual(&povm, ChannelClass::Full).unwrap();
        let mut sum = Operator::zeros(4, 4);
        for (r, &tau) in recon.duals.iter().zip(povm.taus()) {
            sum.add_scaled_real(tau, r);
        }
        prop_assert!(sum.distance(&Operator::identity(4)) <= 1e-8);
    }

    #[test]
    fn exact_probabilities_reconstruct_general_states(seed in any::<u64>(), k in 1usize..4) {
        let mut rng = Stream::from_seed(seed);
        let povm = random_povm(4, 20, &mut rng);
        let recon = canonical_dual(&povm, ChannelClass::General).unwrap();
        let ch = channel_gallery(&ChannelSpec::RandomGeneral(k), 2, &mut rng).unwrap();
        let sigma = jamiolkowski(&ch);
        let rho = recon.estimate(&povm.probabilities(&sigma).unwrap());
        prop_assert!(rho.distance(&sigma) <= 1e-8);
    }
}

#[test]
fn fifty_unital_states_reconstruct_exactly() {
    let povm = povm_from_design(&pu2_11pt().unwrap()).unwrap();
    let recon = canonical_dual(&povm, ChannelClass::Unital).unwrap();
    let mut rng = Stream::from_seed(2024);
    for i in 0..50 {
        let spec = ChannelSpec::RandomUnitalMix(1 + i % 4);
        let sigma = jamiolkowski(&channel_gallery(&spec, 2, &mut rng).unwrap());
        let rho = recon.estimate(&povm.probabilities(&sigma).unwrap());
        assert!(rho.distance(&sigma) <= 1e-8, "state {i}: {}", rho.distance(&sigma));
    }
}

#[test]
fn eleven_point_frame_spectrum() {
    let povm = povm_from_design(&pu2_11pt().unwrap()).unwrap();
    let mut ev = frame_superop(&povm).eigenvalues().unwrap();
    ev.reverse();
    let mut expect = vec![1.0];
    expect.extend([1.0 / 3.0; 9]);
    expect.extend([0.0; 6]);
    for (a, b) in ev.iter().zip(&expect) {
        assert!((a - b).abs() <= 1e-8, "{ev:?}");
    }
    let uc = tight_check(&povm, ChannelClass::Unital).unwrap();
    assert!(uc.is_tight_rank_one && uc.residual <= 1e-8);
    assert!(!tight_check(&povm, ChannelClass::General).unwrap().is_tight_rank_one);
}

#[test]
fn tight_dual_meets_the_bound() {
    let bound = delta_tau_bound(ChannelClass::Unital, 2);
    assert!((bound - 28.0).abs() < 1e-12);
    for set in [pu2_11pt().unwrap(), pu2_clifford12().unwrap()] {
        let povm = povm_from_design(&set).unwrap();
        let recon = canonical_dual(&povm, ChannelClass::Unital).unwrap();
        let dt = delta_tau(&povm, &recon);
        assert!((dt - bound).abs() <= 1e-8, "{dt}");
        assert!((recon.ftilde.trace().re - bound).abs() <= 1e-8);
    }
}

#[test]
fn unevenly_weighted_bases_exceed_the_bound() {
    let bases = clifford12_muub_split().unwrap();
    let mut us = Vec::new();
    let mut ws = Vec::new();
    for (basis, p) in bases.iter().zip([0.5, 0.3, 0.2]) {
        for u in basis {
            us.push(u.clone());
            ws.push(p / 4.0);
        }
    }
    let set = WeightedUnitarySet::new(us, ws).unwrap();
    let povm = povm_from_design(&set).unwrap();
    assert!(!tight_check(&povm, ChannelClass::Unital).unwrap().is_tight_rank_one);
    let recon = canonical_dual(&povm, ChannelClass::Unital).unwrap();
    assert_eq!(recon.support_rank, 10);
    let dt = delta_tau(&povm, &recon);
    assert!(dt > delta_tau_bound(ChannelClass::Unital, 2) + 1e-6, "{dt}");
}

#[test]
fn maximally_entangled_povms_cannot_see_general_channels() {
    let povm = povm_from_design(&pu2_clifford12().unwrap()).unwrap();
    let err = canonical_dual(&povm, ChannelClass::General).unwrap_err();
    assert!(matches!(
        err,
        Error::NotInformationallyComplete {
            support_rank: 10,
            span_dim: 13,
            ..
        }
    ));
}
