// SPDX-License-Identifier: Apache-2.0

use udesign_core::designs::{certify, pu2_11pt, pu2_clifford12, ATOL_CERT};
use udesign_core::rng::Stream;
use udesign_core::search::{refine, run_restart, search, select, SearchConfig, WeightMode};

#[test]
fn refine_repairs_small_noise() {
    let mut rng = Stream::from_seed(13);
    for set in [pu2_11pt().unwrap(), pu2_clifford12().unwrap()] {
        let noisy = set.perturbed(1e-3, &mut rng).unwrap();
        let before = certify(&noisy, 2, ATOL_CERT).unwrap().gap;
        let tr = refine(&noisy, &SearchConfig::new(2, noisy.len(), 2)).unwrap();
        assert!(tr.gap <= before);
        assert!(tr.gap <= 1e-7, "refined gap {} from {before}", tr.gap);
        assert!(certify(&tr.set, 2, ATOL_CERT).unwrap().pass);
    }
}

#[test]
fn eleven_weighted_points_are_found() {
    let mut c = SearchConfig::new(2, 11, 2);
    c.seed = 7;
    let tr = search(&c).unwrap();
    assert!(tr.converged, "gap {}", tr.gap);
    assert!(certify(&tr.set, 2, ATOL_CERT).unwrap().pass);
}

#[test]
fn per_basis_weights_find_twelve_points() {
    let mut c = SearchConfig::new(2, 12, 2);
    c.seed = 7;
    c.weight_mode = WeightMode::PerBasis;
    assert!(search(&c).unwrap().converged);
}

#[test]
fn search_is_deterministic_and_order_free() {
    let mut c = SearchConfig::new(2, 6, 1);
    c.seed = 3;
    c.restarts = 3;
    c.max_iterations = 50;
    let a = search(&c).unwrap();
    let b = search(&c).unwrap();
    assert_eq!(a.gap, b.gap);
    assert_eq!(a.best_gaps, b.best_gaps);
    // restarts computed out of order select the same result
    let mut rs: Vec<_> = (0..a.restarts_run).rev().map(|i| run_restart(&c, i).unwrap()).collect();
    rs.reverse();
    let s = select(&c, rs).unwrap();
    assert_eq!(s.gap, a.gap);
    assert_eq!(s.restart, a.restart);
}

#[test]
fn invalid_configs_are_rejected() {
    assert!(search(&SearchConfig::new(1, 4, 2)).is_err());
    assert!(search(&SearchConfig::new(2, 0, 2)).is_err());
    assert!(search(&SearchConfig::new(2, 4, 10)).is_err());
    let mut c = SearchConfig::new(2, 6, 2);
    c.weight_mode = WeightMode::PerBasis;
    assert!(search(&c).is_err());
}
