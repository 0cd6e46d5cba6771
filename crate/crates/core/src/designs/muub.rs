// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use super::moments::{certify, ATOL_CERT};
use super::quat::quat_to_unitary;
use super::set::WeightedUnitarySet;
use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::{math, ATOL_ALG};

/// Result of [`muub_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct MuubReport {
    pub dim: usize,
    /// Number of bases `m`.
    pub m: usize,
    /// `d² − 1`, the largest possible number of MUUBs.
    pub bound: usize,
    /// `max_{a, j≠k} |tr(U_j†U_k)|` and `max_{a,j} |tr(U_j†U_j) − d|` within each basis.
    pub orthogonality_residual: f64,
    /// `max_{a≠b, j, k} | |tr(U_j^a† U_k^b)|² − 1 |`.
    pub unbiasedness_residual: f64,
    pub orthogonal: bool,
    pub mutually_unbiased: bool,
    /// `Σ_{a,b} w_a w_b Σ_{j,k} |tr(U_j^a† U_k^b)|⁴` with `w_a = 1/(m d²)`.
    pub union_potential: f64,
    /// Union with weights `w_a` certifies as a 2-design.
    pub union_is_two_design: bool,
}

impl MuubReport {
    pub fn is_complete(&self) -> bool {
        self.orthogonal && self.mutually_unbiased && self.m == self.bound
    }
}

/// Checks that every set in `bases` is an orthogonal unitary operator basis,
/// that distinct bases are mutually unbiased, and evaluates the 2-design
/// condition on their union with equal per-basis weights.
pub fn muub_check(bases: &[UnitaryBasis]) -> Result<MuubReport> {
    let first = bases
        .first()
        .ok_or_else(|| Error::InvalidInput("no bases given".into()))?;
    let d = first
        .first()
        .ok_or_else(|| Error::InvalidInput("empty basis".into()))?
        .rows();
    let d2 = d * d;
    for (a, basis) in bases.iter().enumerate() {
        if basis.len() != d2 {
            return Err(Error::InvalidInput(alloc::format!(
                "basis {a} has {} elements, expected d^2 = {d2}",
                basis.len()
            )));
        }
        for u in basis {
            if u.rows() != d || u.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: u.rows(),
                });
            }
            u.ensure_unitary(ATOL_ALG)?;
        }
    }
    let m = bases.len();
    let w = 1.0 / (m * d2) as f64;
    let df = d as f64;
    let mut ortho: f64 = 0.0;
    let mut unbiased: f64 = 0.0;
    let mut terms = Vec::with_capacity(m * m);
    for (a, ba) in bases.iter().enumerate() {
        for (b, bb) in bases.iter().enumerate() {
            let mut block = 0.0;
            for (j, u) in ba.iter().enumerate() {
                for (k, v) in bb.iter().enumerate() {
                    let c = u.hs_inner(v);
                    let c2 = c.norm_sqr();
                    block += c2 * c2;
                    if a == b {
                        let expect = if j == k { df } else { 0.0 };
                        ortho = ortho.max((c - expect).norm());
                    } else {
                        unbiased = unbiased.max((c2 - 1.0).abs());
                    }
                }
            }
            terms.push(w * w * block);
        }
    }
    let union_potential = math::pairwise_sum(&terms);
    let union_is_two_design = match muub_union(bases) {
        Ok(set) => certify(&set, 2, ATOL_CERT)?.pass,
        Err(_) => false,
    };
    Ok(MuubReport {
        dim: d,
        m,
        bound: d2 - 1,
        orthogonality_residual: ortho,
        unbiasedness_residual: unbiased,
        orthogonal: ortho <= ATOL_ALG,
        mutually_unbiased: unbiased <= ATOL_ALG,
        union_potential,
        union_is_two_design,
    })
}

/// A unitary operator basis: `d²` unitaries on `C^d`.
pub type UnitaryBasis = Vec<Operator>;

/// Union of the bases with weight `1/(m d²)` per element.
pub fn muub_union(bases: &[UnitaryBasis]) -> Result<WeightedUnitarySet> {
    let n: usize = bases.iter().map(Vec::len).sum();
    let us: Vec<Operator> = bases.iter().flatten().cloned().collect();
    WeightedUnitarySet::new(us, alloc::vec![1.0 / n as f64; n])
}

/// The 12 elements of `pu2_clifford12` split into three mutually unbiased
/// unitary bases, read off the 24-cell: the Pauli basis, and the points
/// `½(1, ±1, ±1, ±1)` with an even or odd number of minus signs.
pub fn clifford12_muub_split() -> Result<Vec<UnitaryBasis>> {
    let pauli: [[f64; 4]; 4] = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for signs in 0..8u32 {
        let mut q = [0.5; 4];
        for k in 0..3 {
            if signs >> k & 1 == 1 {
                q[k + 1] = -0.5;
            }
        }
        if signs.count_ones() % 2 == 0 {
            even.push(q);
        } else {
            odd.push(q);
        }
    }
    [pauli.to_vec(), even, odd]
        .into_iter()
        .map(|qs| qs.into_iter().map(quat_to_unitary).collect())
        .collect()
}

/// `{I, X, Y, Z}` as a single unitary basis.
pub fn pauli_basis() -> UnitaryBasis {
    crate::linalg::paulis().to_vec()
}
