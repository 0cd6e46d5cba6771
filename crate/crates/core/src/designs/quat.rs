// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::linalg::{paulis, Operator, C64};
use crate::{math, ATOL_ALG};

/// `r ↦ r₀I + i(r₁X + r₂Y + r₃Z)`, mapping unit quaternions onto `SU(2)`.
///
/// Antipodal points give the same element of `PU(2)`, and
/// `|tr(U†V)|² = 4⟨r, s⟩²`.
pub fn quat_to_unitary(r: [f64; 4]) -> Result<Operator> {
    let norm = math::sqrt(r.iter().map(|x| x * x).sum());
    if (norm - 1.0).abs() > ATOL_ALG {
        return Err(Error::InvalidInput(alloc::format!(
            "quaternion must have unit norm, got {norm}"
        )));
    }
    let [id, x, y, z] = paulis();
    let mut u = id.scale_real(r[0]);
    let i = C64::new(0.0, 1.0);
    u.add_scaled(i * r[1], &x);
    u.add_scaled(i * r[2], &y);
    u.add_scaled(i * r[3], &z);
    Ok(u)
}

/// Inverse of [`quat_to_unitary`] on `PU(2)`: the global phase is removed
/// and the sign is fixed so that the first nonzero component is positive.
pub fn unitary_to_quat(u: &Operator) -> Result<[f64; 4]> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: u.rows(),
        });
    }
    u.ensure_unitary(ATOL_ALG)?;
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let phase = C64::from_polar(1.0, det.arg() / 2.0);
    let v = u.scale(phase.conj());
    let [_, x, y, z] = paulis();
    let minus_half_i = C64::new(0.0, -0.5);
    let mut q = [
        (v.trace() * 0.5).re,
        (x.matmul(&v).trace() * minus_half_i).re,
        (y.matmul(&v).trace() * minus_half_i).re,
        (z.matmul(&v).trace() * minus_half_i).re,
    ];
    if let Some(&lead) = q.iter().find(|c| c.abs() > 1e-12) {
        if lead < 0.0 {
            q.iter_mut().for_each(|c| *c = -*c);
        }
    }
    Ok(q)
}
