// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices.
//!
//! [`Operator`] stores entries row-major. Column vectors are `n × 1`
//! operators, and the operator-ket `|A⟩⟩` of a square operator is its
//! row-major flattening, so `⟨⟨A|B⟩⟩ = tr(A†B)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::math;

pub type C64 = num_complex::Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct Operator {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Operator {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds an operator from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        Self::from_fn(N, N, |r, c| rows[r][c])
    }

    pub fn column(entries: Vec<C64>) -> Self {
        let n = entries.len();
        Self {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (k, &e) in entries.iter().enumerate() {
            m.data[k * n + k] = e;
        }
        m
    }

    /// Ket-bra `|a⟩⟨b|` of two column vectors.
    pub fn outer(a: &Operator, b: &Operator) -> Self {
        debug_assert!(a.cols == 1 && b.cols == 1);
        Self::from_fn(a.rows, b.rows, |r, c| a.data[r] * b.data[c].conj())
    }

    /// Matrix unit `|j⟩⟨k|` in dimension `n`.
    pub fn unit(n: usize, j: usize, k: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[j * n + k] = ONE;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square operator.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.data[c * self.cols + r].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.data[c * self.cols + r])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Operator) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `A† B` without materialising the adjoint.
    pub fn adjoint_matmul(&self, rhs: &Operator) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zeros(self.cols, rhs.cols);
        for k in 0..self.rows {
            for r in 0..self.cols {
                let a = self.data[k * self.cols + r].conj();
                if a == ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs.data[k * rhs.cols + c];
                }
            }
        }
        out
    }

    pub fn kron(&self, rhs: &Operator) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self.data[ar * self.cols + ac];
                if a == ZERO {
                    continue;
                }
                for br in 0..rhs.rows {
                    let row = ar * rhs.rows + br;
                    for bc in 0..rhs.cols {
                        out.data[row * cols + ac * rhs.cols + bc] = a * rhs.data[br * rhs.cols + bc];
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a sequence of operators.
    pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Operator>) -> Self {
        factors.into_iter().fold(Self::identity(1), |acc, f| acc.kron(f))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: C64, other: &Operator) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn add_scaled_real(&mut self, s: f64, other: &Operator) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols))
            .map(|k| self.data[k * self.cols + k])
            .sum()
    }

    /// Hilbert–Schmidt inner product `tr(A†B)`.
    pub fn hs_inner(&self, rhs: &Operator) -> C64 {
        assert_eq!(self.data.len(), rhs.data.len());
        self.data.iter().zip(&rhs.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.frobenius_norm_sqr())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn distance(&self, rhs: &Operator) -> f64 {
        assert_eq!(self.data.len(), rhs.data.len());
        math::sqrt(self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm_sqr()).sum())
    }

    /// `‖A − A†‖`, or infinity for non-square input.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                acc += (self.data[r * n + c] - self.data[c * n + r].conj()).norm_sqr();
            }
        }
        math::sqrt(acc)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `‖U†U − I‖`, or infinity for non-square input.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.adjoint_matmul(self).distance(&Self::identity(self.rows))
    }

    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let residual = self.unitarity_residual();
        if residual <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitary { residual })
        }
    }

    /// Row-major flattening as a `n² × 1` column, i.e. the operator-ket `|A⟩⟩`.
    pub fn vectorize(&self) -> Operator {
        Operator::column(self.data.clone())
    }

    /// Inverse of [`Operator::vectorize`] for a square `n × n` result.
    pub fn unvectorize(v: &Operator, n: usize) -> Result<Operator> {
        if v.cols != 1 || v.rows != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: v.rows * v.cols,
            });
        }
        Operator::from_vec(n, n, v.data.clone())
    }

    /// Rescales by a phase so that the first entry with the largest modulus
    /// is real and positive. Ties are broken row-major with a relative slack of 1e-9.
    pub fn canonical_phase(&self) -> Operator {
        let max = self.max_abs();
        if max == 0.0 {
            return self.clone();
        }
        let k = self
            .data
            .iter()
            .position(|z| z.norm() >= max * (1.0 - 1e-9))
            .unwrap_or(0);
        let pivot = self.data[k];
        let phase = pivot.conj() / pivot.norm();
        let mut out = self.scale(phase);
        // exact zero imaginary part and no negative zeros keep the map
        // idempotent bit for bit
        out.data[k] = C64::new(pivot.norm(), 0.0);
        for z in &mut out.data {
            *z = C64::new(z.re + 0.0, z.im + 0.0);
        }
        out
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Operator {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul<&Operator> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.matmul(rhs)
    }
}

impl Add<&Operator> for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Operator {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Operator> for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Operator {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.data[r * self.cols + c];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices `(I, X, Y, Z)`.
pub fn paulis() -> [Operator; 4] {
    let o = ZERO;
    let l = ONE;
    [
        Operator::from_rows([[l, o], [o, l]]),
        Operator::from_rows([[o, l], [l, o]]),
        Operator::from_rows([[o, -I], [I, o]]),
        Operator::from_rows([[l, o], [o, -l]]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_of_paulis_matches_hand_expansion() {
        let [_, x, _, z] = paulis();
        let xz = x.kron(&z);
        let expected = Operator::from_rows([
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ZERO, ZERO, -ONE],
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, -ONE, ZERO, ZERO],
        ]);
        assert_eq!(xz, expected);
    }

    #[test]
    fn adjoint_matmul_agrees_with_explicit_adjoint() {
        let a = Operator::from_fn(3, 2, |r, k| c(r as f64 + 0.5, k as f64 - 1.0));
        let b = Operator::from_fn(3, 4, |r, k| c((r * k) as f64, 1.0 - r as f64));
        assert!(a.adjoint_matmul(&b).distance(&a.adjoint().matmul(&b)) < 1e-14);
    }

    #[test]
    fn vectorize_gives_hilbert_schmidt_inner_product() {
        let [_, x, y, _] = paulis();
        let vx = x.vectorize();
        let vy = y.vectorize();
        let ip = vx.adjoint_matmul(&vy)[(0, 0)];
        assert!((ip - x.hs_inner(&y)).norm() < 1e-15);
        assert_eq!(Operator::unvectorize(&vx, 2).unwrap(), x);
    }

    #[test]
    fn canonical_phase_is_phase_invariant() {
        let [_, _, y, _] = paulis();
        let phased = y.scale(C64::from_polar(1.0, 0.7));
        assert!(y.canonical_phase().distance(&phased.canonical_phase()) < 1e-14);
        let canon = y.canonical_phase();
        let pivot = canon.as_slice().iter().find(|z| z.norm() > 0.5).unwrap();
        assert!(pivot.im.abs() < 1e-15 && pivot.re > 0.0);
    }

    #[test]
    fn non_square_unitarity_is_rejected() {
        let m = Operator::zeros(2, 3);
        assert!(matches!(m.ensure_unitary(1e-9), Err(Error::NotUnitary { .. })));
    }
}
