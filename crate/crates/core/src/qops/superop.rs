// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use crate::eigen::{eigh, Eigh};
use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};

/// Operator basis in which a [`SuperOperator`]'s matrix is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisConvention {
    /// `E_{k₁k₂} = |k₁⟩⟨k₂|`, flattened row-major. The matrix of a channel in
    /// this basis is its process matrix.
    MatrixUnits,
}

/// Linear map on `End(C^n)` written as `Σ s_jk |E_j⟩⟩⟨⟨E_k|`.
///
/// The same coefficient matrix `s` defines two actions: the left-right action
/// `S|A⟩⟩ = Σ s_jk E_j tr(E_k† A)` (plain matrix-vector product on the
/// flattening) and the ordinary action `S(A) = Σ s_jk E_j A E_k†`. Frame
/// superoperators and projectors use the former, channels the latter.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    dim: usize,
    matrix: Operator,
    basis: BasisConvention,
}

impl SuperOperator {
    pub fn from_matrix(dim: usize, matrix: Operator) -> Result<Self> {
        let n2 = dim * dim;
        if matrix.rows() != n2 || matrix.cols() != n2 {
            return Err(Error::DimensionMismatch {
                expected: n2,
                found: matrix.rows(),
            });
        }
        Ok(Self {
            dim,
            matrix,
            basis: BasisConvention::MatrixUnits,
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            matrix: Operator::zeros(dim * dim, dim * dim),
            basis: BasisConvention::MatrixUnits,
        }
    }

    /// Left-right identity `𝐈 = Σ_k |E_k⟩⟩⟨⟨E_k|`.
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            matrix: Operator::identity(dim * dim),
            basis: BasisConvention::MatrixUnits,
        }
    }

    /// `|A⟩⟩⟨⟨B|`.
    pub fn ket_bra(a: &Operator, b: &Operator) -> Self {
        let dim = a.rows();
        Self {
            dim,
            matrix: Operator::outer(&a.vectorize(), &b.vectorize()),
            basis: BasisConvention::MatrixUnits,
        }
    }

    /// `Σ_k B_k ⊙ B_k† = Σ_k |B_k⟩⟩⟨⟨B_k|`.
    pub fn from_kraus(kraus: &[Operator]) -> Result<Self> {
        let dim = kraus
            .first()
            .ok_or_else(|| Error::InvalidInput("empty Kraus list".into()))?
            .rows();
        let mut s = Self::zeros(dim);
        for b in kraus {
            s.add_ket_bra(1.0, b, b);
        }
        Ok(s)
    }

    /// `self += weight · |A⟩⟩⟨⟨B|`.
    pub fn add_ket_bra(&mut self, weight: f64, a: &Operator, b: &Operator) {
        let va = a.as_slice();
        let vb = b.as_slice();
        let n2 = self.dim * self.dim;
        debug_assert_eq!(va.len(), n2);
        let m = self.matrix.as_mut_slice();
        for (r, &x) in va.iter().enumerate() {
            let x = x * weight;
            let row = &mut m[r * n2..(r + 1) * n2];
            for (o, &y) in row.iter_mut().zip(vb) {
                *o += x * y.conj();
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> BasisConvention {
        self.basis
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn into_matrix(self) -> Operator {
        self.matrix
    }

    /// Left-right action `S|A⟩⟩`.
    pub fn apply(&self, a: &Operator) -> Operator {
        let v = self.matrix.matmul(&a.vectorize());
        Operator::from_vec(self.dim, self.dim, v.into_vec()).expect("square by construction")
    }

    /// Ordinary action `S(A) = Σ s_jk E_j A E_k†`:
    /// `S(A)_{ab} = Σ_{j₂k₂} s_{(a,j₂),(b,k₂)} A_{j₂k₂}`.
    pub fn apply_ordinary(&self, a: &Operator) -> Operator {
        let n = self.dim;
        let s = &self.matrix;
        Operator::from_fn(n, n, |r, c| {
            let mut acc = C64::new(0.0, 0.0);
            for j2 in 0..n {
                for k2 in 0..n {
                    acc += s[(r * n + j2, c * n + k2)] * a[(j2, k2)];
                }
            }
            acc
        })
    }

    /// Left-right composition `(self · other)|A⟩⟩ = self(other|A⟩⟩)`.
    pub fn compose(&self, other: &SuperOperator) -> SuperOperator {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            matrix: self.matrix.matmul(&other.matrix),
            basis: self.basis,
        }
    }

    pub fn adjoint(&self) -> SuperOperator {
        Self {
            dim: self.dim,
            matrix: self.matrix.adjoint(),
            basis: self.basis,
        }
    }

    pub fn scale(&self, s: f64) -> SuperOperator {
        Self {
            dim: self.dim,
            matrix: self.matrix.scale_real(s),
            basis: self.basis,
        }
    }

    pub fn add_scaled(&mut self, s: f64, other: &SuperOperator) {
        self.matrix.add_scaled_real(s, &other.matrix);
    }

    /// `Tr(S) = Σ_k ⟨⟨E_k|S|E_k⟩⟩`.
    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// `‖S‖ = √Tr(S†S)`.
    pub fn norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn distance(&self, other: &SuperOperator) -> f64 {
        self.matrix.distance(&other.matrix)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.matrix.hermiticity_residual()
    }

    pub fn is_left_right_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn eigh(&self) -> Result<Eigh> {
        eigh(&self.matrix)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigh()?.values)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.eigh()?.rank())
    }
}
