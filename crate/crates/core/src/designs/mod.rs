// SPDX-License-Identifier: Apache-2.0

//! Weighted unitary designs.
//!
//! A weighted set `(𝒟, w)` in `PU(d)` is a `t`-design when its frame
//! potential reaches `γ(t, d)`; [`certify`] reports the gap and, for
//! `t ≤ 2`, the distance between the design's moment operator and the exact
//! Haar moment.

mod gallery;
mod moments;
mod muub;
mod potential;
mod quat;
mod set;

pub use gallery::{
    gallery, group_closure, hadamard, phase_gate, pu2_11pt, pu2_600cell, pu2_clifford12, pu2_clifford24,
    six_hundred_cell, utof, GalleryEntry, DEFAULT_MAX_ORDER, GALLERY_NAMES,
};
pub use moments::{
    cardinality_diagnostic, certify, design_moment, haar_moment, CardinalityDiagnostic, DesignCertificate, ATOL_CERT,
};
pub use muub::{clifford12_muub_split, muub_check, muub_union, pauli_basis, MuubReport, UnitaryBasis};
pub use potential::{frame_potential, gamma, MAX_GAMMA_T};
pub use quat::{quat_to_unitary, unitary_to_quat};
pub use set::{overlap_sqr, phase_equivalent, WeightedUnitarySet, DEDUP_TOL};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_certificates() {
        for (set, t) in [
            (pu2_11pt().unwrap(), 2),
            (pu2_clifford12().unwrap(), 2),
            (pu2_clifford24().unwrap(), 3),
            (pu2_600cell().unwrap(), 5),
            (utof(4, 2).unwrap(), 1),
            (utof(9, 3).unwrap(), 1),
            (utof(10, 3).unwrap(), 1),
        ] {
            let c = certify(&set, t, ATOL_CERT).unwrap();
            assert!(c.pass, "{c:?}");
            assert!(c.gap.abs() < 1e-9, "{c:?}");
            assert!(c.criteria_agree());
        }
    }

    #[test]
    fn eleven_points_fail_at_three() {
        let c = certify(&pu2_11pt().unwrap(), 3, ATOL_CERT).unwrap();
        assert!(!c.pass && c.gap > 0.1);
    }

    #[test]
    fn utof_potential_is_one() {
        let p = frame_potential(&utof(4, 2).unwrap(), 1).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }
}
