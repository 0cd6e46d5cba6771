// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use udesign_core::designs::{
    certify, design_moment, frame_potential, gallery, gamma, haar_moment, pu2_11pt, WeightedUnitarySet, ATOL_CERT,
    GALLERY_NAMES,
};
use udesign_core::qops::{haar_unitary, partial_trace};
use udesign_core::rng::Stream;
use udesign_core::search::{Objective, Parametrization, WeightMode};
use udesign_core::{Operator, C64};

fn random_set(d: usize, n: usize, seed: u64) -> WeightedUnitarySet {
    let mut rng = Stream::from_seed(seed);
    let us: Vec<Operator> = (0..n).map(|_| haar_unitary(d, &mut rng)).collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.exponential() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    WeightedUnitarySet::merged(us, raw.iter().map(|w| w / total).collect()).unwrap()
}

fn gallery_sets() -> Vec<(&'static str, WeightedUnitarySet, u32)> {
    GALLERY_NAMES
        .iter()
        .map(|&name| {
            let dim = (name == "utof").then_some(2);
            let set = gallery(name, None, dim).unwrap();
            let t = match name {
                "utof" => 1,
                "pu2_11pt" | "pu2_clifford12" => 2,
                "pu2_clifford24" => 3,
                _ => 5,
            };
            (name, set, t)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn potential_is_bounded_below(seed in any::<u64>(), n in 1usize..9) {
        for d in [2usize, 3] {
            let set = random_set(d, n, seed);
            for t in 1u32..=3 {
                let g = gamma(t as usize, d).unwrap() as f64;
                let f = frame_potential(&set, t).unwrap();
                prop_assert!(f >= g - 1e-9, "t={t} d={d}: potential {f} < gamma {g}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn objective_is_invariant_under_phase_and_left_translation(seed in any::<u64>()) {
        let p = Parametrization::new(2, 5, WeightMode::Free).unwrap();
        let obj = Objective::new(p.clone(), 2).unwrap();
        let mut rng = Stream::from_seed(seed);
        let theta: Vec<f64> = (0..p.theta_len()).map(|_| rng.normal()).collect();
        let set = p.to_set(&theta).unwrap();
        let f = obj.value(&theta).unwrap();
        let v = haar_unitary(2, &mut rng).scale(C64::from_polar(1.0, 0.7));
        let moved = set.left_translate(&v).unwrap();
        let g = frame_potential(&moved, 2).unwrap() - 2.0;
        prop_assert!((f - g).abs() < 1e-9, "{f} vs {g}");
    }

    #[test]
    fn partial_trace_is_linear(seed in any::<u64>(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let mut rng = Stream::from_seed(seed);
        let x = Operator::from_fn(6, 6, |_, _| rng.complex_normal());
        let y = Operator::from_fn(6, 6, |_, _| rng.complex_normal());
        let mut combo = x.scale_real(a);
        combo.add_scaled_real(b, &y);
        for traced in [[true, false], [false, true]] {
            let lhs = partial_trace(&combo, &[2, 3], &traced).unwrap();
            let mut rhs = partial_trace(&x, &[2, 3], &traced).unwrap().scale_real(a);
            rhs.add_scaled_real(b, &partial_trace(&y, &[2, 3], &traced).unwrap());
            prop_assert!(lhs.distance(&rhs) < 1e-10);
        }
    }
}

#[test]
fn certified_designs_are_lower_designs() {
    for (name, set, t) in gallery_sets() {
        for s in 1..=t {
            let c = certify(&set, s, ATOL_CERT).unwrap();
            assert!(c.pass, "{name} fails at t={s}: gap {}", c.gap);
        }
    }
}

#[test]
fn generator_noise_increases_the_gap() {
    let mut rng = Stream::from_seed(11);
    for (name, set, t) in gallery_sets() {
        let base = certify(&set, t, ATOL_CERT).unwrap().gap;
        for _ in 0..3 {
            let noisy = set.perturbed(1e-2, &mut rng).unwrap();
            let gap = certify(&noisy, t, ATOL_CERT).unwrap().gap;
            assert!(gap > base, "{name}: perturbed gap {gap} not above {base}");
        }
    }
}

#[test]
fn haar_trace_moments() {
    let mut rng = Stream::from_seed(3);
    let n = 20_000;
    let (mut m2, mut m4) = (0.0, 0.0);
    for _ in 0..n {
        let u = haar_unitary(3, &mut rng);
        let s = u.trace().norm_sqr();
        m2 += s;
        m4 += s * s;
    }
    m2 /= n as f64;
    m4 /= n as f64;
    assert!((m2 - 1.0).abs() < 0.05, "E|tr U|^2 = {m2}");
    assert!((m4 - 2.0).abs() < 0.15, "E|tr U|^4 = {m4}");
}

#[test]
fn gallery_two_designs_match_the_haar_moment() {
    let exact = haar_moment(2, 2).unwrap();
    for (name, set, t) in gallery_sets() {
        if t >= 2 {
            let m = design_moment(&set, 2).unwrap();
            assert!(m.distance(&exact) <= 1e-8, "{name}: {}", m.distance(&exact));
        }
    }
}

#[test]
fn eleven_point_design_survives_phase_changes() {
    let set = pu2_11pt().unwrap();
    let phased: Vec<Operator> = set
        .unitaries()
        .iter()
        .enumerate()
        .map(|(k, u)| u.scale(C64::from_polar(1.0, 0.37 * k as f64)))
        .collect();
    let again = WeightedUnitarySet::new(phased, set.weights().to_vec()).unwrap();
    assert!((frame_potential(&again, 2).unwrap() - 2.0).abs() < 1e-9);
}
