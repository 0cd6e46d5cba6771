// SPDX-License-Identifier: Apache-2.0

//! Hermitian eigendecomposition and the matrix functions built on it.
//!
//! The solver is a cyclic complex Jacobi iteration. It is slower than a
//! tridiagonal QL for large matrices but accurate to a few ulps in the
//! eigenvectors, which matters for the rank decisions made downstream
//! (support projectors, restricted inverses). All matrices here are at most
//! `81 × 81`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Operator, C64, ONE, ZERO};
use crate::math;
use crate::RANK_CUTOFF;

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending. Column `k` of
/// `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: Operator,
}

impl Eigh {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Number of eigenvalues above `RANK_CUTOFF` times the largest magnitude.
    pub fn rank(&self) -> usize {
        let cut = RANK_CUTOFF * self.max_abs_value();
        self.values.iter().filter(|v| v.abs() > cut).count()
    }

    /// `V f(Λ) V†`.
    pub fn map(&self, mut f: impl FnMut(f64) -> C64) -> Operator {
        let n = self.dim();
        let fv: Vec<C64> = self.values.iter().map(|&v| f(v)).collect();
        let v = &self.vectors;
        Operator::from_fn(n, n, |r, c| (0..n).map(|k| v[(r, k)] * fv[k] * v[(c, k)].conj()).sum())
    }

    /// Inverse on the support, zero on the kernel.
    pub fn pseudo_inverse(&self) -> Operator {
        let cut = RANK_CUTOFF * self.max_abs_value();
        self.map(|v| if v.abs() > cut { C64::new(1.0 / v, 0.0) } else { ZERO })
    }

    /// Orthogonal projector onto the support.
    pub fn support_projector(&self) -> Operator {
        let cut = RANK_CUTOFF * self.max_abs_value();
        self.map(|v| if v.abs() > cut { ONE } else { ZERO })
    }

    pub fn column(&self, k: usize) -> Operator {
        let n = self.dim();
        Operator::column((0..n).map(|r| self.vectors[(r, k)]).collect())
    }
}

/// Diagonalises a Hermitian matrix. The input is symmetrised first, so
/// round-off asymmetry is harmless; genuinely non-Hermitian input is not
/// detected here.
pub fn eigh(h: &Operator) -> Result<Eigh> {
    if !h.is_square() {
        return Err(Error::InvalidInput("eigh requires a square matrix".into()));
    }
    let n = h.rows();
    let mut a = Operator::from_fn(n, n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
    let mut v = Operator::identity(n);

    let scale = a.frobenius_norm();
    if scale == 0.0 || n == 1 {
        return Ok(sorted(a, v));
    }
    let threshold = scale * 1e-16;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            return Ok(sorted(a, v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if off_diagonal_norm(&a) <= scale * 1e-12 {
        return Ok(sorted(a, v));
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn off_diagonal_norm(a: &Operator) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    math::sqrt(acc)
}

fn rotate(a: &mut Operator, v: &mut Operator, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + math::sqrt(1.0 + theta * theta))
    } else {
        -1.0 / (-theta + math::sqrt(1.0 + theta * theta))
    };
    let c = 1.0 / math::sqrt(1.0 + t * t);
    let s = t * c;

    // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    let n = a.rows();
    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    // A <- J† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

fn sorted(a: Operator, v: Operator) -> Eigh {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = Operator::from_fn(n, n, |r, c| v[(r, order[c])]);
    Eigh { values, vectors }
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(h: &Operator) -> Result<Vec<f64>> {
    Ok(eigh(h)?.values)
}

/// Left-right rank of a Hermitian matrix with the crate-wide relative cutoff.
pub fn hermitian_rank(h: &Operator) -> Result<usize> {
    Ok(eigh(h)?.rank())
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(h: &Operator) -> Result<Operator> {
    let e = eigh(h)?;
    Ok(e.map(|v| C64::new(math::sqrt(v.max(0.0)), 0.0)))
}

/// `H^{-1/2}` for a positive definite matrix.
pub fn inv_sqrt(h: &Operator) -> Result<Operator> {
    let e = eigh(h)?;
    let cut = RANK_CUTOFF * e.max_abs_value();
    if e.values[0] <= cut {
        return Err(Error::InvalidInput("inverse square root of a singular matrix".into()));
    }
    Ok(e.map(|v| C64::new(1.0 / math::sqrt(v), 0.0)))
}

/// `exp(iH)` for Hermitian `H`.
pub fn expi_hermitian(h: &Operator) -> Result<Operator> {
    let e = eigh(h)?;
    Ok(e.map(|v| C64::from_polar(1.0, v)))
}

/// Hermitian `H` with `exp(iH) = U` and spectrum in `(-π, π]`.
///
/// `U` is normal, so `(U + U†)/2` and `(U − U†)/2i` commute and share
/// eigenvectors; a generic real combination of the two separates distinct
/// eigenvalues. A few combinations are tried in case of an accidental
/// collision, and the result is checked by reconstruction.
pub fn unitary_log(u: &Operator) -> Result<Operator> {
    u.ensure_unitary(crate::ATOL_ALG)?;
    let n = u.dim();
    let ud = u.adjoint();
    let re = (u + &ud).scale_real(0.5);
    let im = (u - &ud).scale(C64::new(0.0, -0.5));
    for mix in [
        0.618_033_988_749_895,
        -core::f64::consts::SQRT_2,
        core::f64::consts::E,
        0.1,
    ] {
        let mut k = re.clone();
        k.add_scaled_real(mix, &im);
        let e = eigh(&k)?;
        let phases: Vec<f64> = (0..n)
            .map(|j| {
                let col = e.column(j);
                let z = col.adjoint_matmul(&u.matmul(&col))[(0, 0)];
                math::atan2(z.im, z.re)
            })
            .collect();
        let h = e.map_with_index(|j| C64::new(phases[j], 0.0));
        if expi_hermitian(&h)?.distance(u) <= 1e-10 {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

impl Eigh {
    fn map_with_index(&self, mut f: impl FnMut(usize) -> C64) -> Operator {
        let n = self.dim();
        let fv: Vec<C64> = (0..n).map(&mut f).collect();
        let v = &self.vectors;
        Operator::from_fn(n, n, |r, c| (0..n).map(|k| v[(r, k)] * fv[k] * v[(c, k)].conj()).sum())
    }
}

/// Thin QR of a square matrix by twice-iterated modified Gram–Schmidt.
///
/// Returns `(Q, r_diag)` where `r_diag` holds the diagonal of `R`. The
/// diagonal comes out real and positive by construction.
pub fn qr_square(m: &Operator) -> Result<(Operator, Vec<C64>)> {
    if !m.is_square() {
        return Err(Error::InvalidInput("qr_square requires a square matrix".into()));
    }
    let n = m.rows();
    let mut q = m.clone();
    let mut r_diag = Vec::with_capacity(n);
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: C64 = (0..n).map(|r| q[(r, k)].conj() * q[(r, j)]).sum();
                for r in 0..n {
                    let qk = q[(r, k)];
                    q[(r, j)] -= proj * qk;
                }
            }
        }
        let norm = math::sqrt((0..n).map(|r| q[(r, j)].norm_sqr()).sum());
        if norm < 1e-300 {
            return Err(Error::InvalidInput("rank-deficient matrix in QR".into()));
        }
        for r in 0..n {
            q[(r, j)] /= norm;
        }
        r_diag.push(C64::new(norm, 0.0));
    }
    Ok((q, r_diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::paulis;

    fn random_hermitian(n: usize, seed: u64) -> Operator {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let m = Operator::from_fn(n, n, |_, _| C64::new(next(), next()));
        (&m + &m.adjoint()).scale_real(0.5)
    }

    #[test]
    fn reconstructs_random_hermitian_matrices() {
        for (n, seed) in [(2, 1), (4, 2), (9, 3), (16, 4), (30, 5)] {
            let h = random_hermitian(n, seed);
            let e = eigh(&h).unwrap();
            let back = e.map(|v| C64::new(v, 0.0));
            assert!(back.distance(&h) < 1e-12 * (n as f64), "n={n}");
            assert!(e.vectors.unitarity_residual() < 1e-12);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn pauli_spectra() {
        for p in paulis().iter().skip(1) {
            let vals = eigvalsh(p).unwrap();
            assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_spectrum_rank() {
        let p = Operator::diagonal(&[ONE, ONE, ZERO, C64::new(1e-13, 0.0)]);
        let e = eigh(&p).unwrap();
        assert_eq!(e.rank(), 2);
        assert!(
            e.support_projector()
                .distance(&Operator::diagonal(&[ONE, ONE, ZERO, ZERO]))
                < 1e-14
        );
        assert!(
            e.pseudo_inverse()
                .distance(&Operator::diagonal(&[ONE, ONE, ZERO, ZERO]))
                < 1e-14
        );
    }

    #[test]
    fn unitary_log_inverts_exponential() {
        for seed in 0..10 {
            let h = random_hermitian(3, 100 + seed).scale_real(2.0);
            let u = expi_hermitian(&h).unwrap();
            let g = unitary_log(&u).unwrap();
            assert!(expi_hermitian(&g).unwrap().distance(&u) < 1e-10);
        }
        // degenerate eigenvalues
        let [id, _, _, z] = paulis();
        let g = unitary_log(&id).unwrap();
        assert!(g.frobenius_norm() < 1e-12);
        let g = unitary_log(&z).unwrap();
        assert!(expi_hermitian(&g).unwrap().distance(&z) < 1e-10);
    }

    #[test]
    fn qr_gives_unitary_factor() {
        let m = random_hermitian(5, 9);
        let m = &m + &Operator::identity(5).scale(C64::new(0.0, 3.0));
        let (q, r) = qr_square(&m).unwrap();
        assert!(q.unitarity_residual() < 1e-13);
        assert!(r.iter().all(|z| z.re > 0.0 && z.im == 0.0));
    }
}
