// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Operator, ONE};

/// Largest total dimension `d^n` a permutation operator may act on.
pub const MAX_PERMUTATION_SPACE: usize = 10_000;

/// A permutation of `{0, …, n−1}`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// From the one-line notation `σ(1)σ(2)…σ(n)` with 1-based images, so
    /// that `from_one_line(&[2, 1])` is the swap `P₂₁`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        Self::from_images(images.iter().map(|&k| k.wrapping_sub(1)).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &k in &images {
            if k >= n || seen[k] {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
            seen[k] = true;
        }
        Ok(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &s) in self.0.iter().enumerate() {
            inv[s] = k;
        }
        Permutation(inv)
    }
}

fn checked_power(d: usize, n: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..n {
        total = total
            .checked_mul(d)
            .filter(|&t| t <= MAX_PERMUTATION_SPACE)
            .ok_or_else(|| {
                Error::ResourceLimit(alloc::format!(
                    "permutation operator on ({d})^{n} exceeds {MAX_PERMUTATION_SPACE} dimensions"
                ))
            })?;
    }
    Ok(total)
}

fn digits(mut index: usize, d: usize, n: usize, out: &mut [usize]) {
    for slot in (0..n).rev() {
        out[slot] = index % d;
        index /= d;
    }
}

fn undigits(ds: impl Iterator<Item = usize>, d: usize) -> usize {
    ds.fold(0, |acc, x| acc * d + x)
}

/// `P(σ) = Σ |j₁⟩⟨j_{σ(1)}| ⊗ … ⊗ |j_n⟩⟨j_{σ(n)}|` on `(C^d)^{⊗n}`.
///
/// Row multi-index `i` has its single nonzero entry in column `k` with
/// `k_m = i_{σ(m)}`, which gives `P(σ)P(τ) = P(σ∘τ)`.
pub fn permutation_operator(sigma: &Permutation, d: usize) -> Result<Operator> {
    let n = sigma.len();
    if d == 0 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "local dimension must be positive",
        });
    }
    let total = checked_power(d, n)?;
    let mut p = Operator::zeros(total, total);
    let mut row = vec![0; n];
    for r in 0..total {
        digits(r, d, n, &mut row);
        let col = undigits(sigma.images().iter().map(|&s| row[s]), d);
        p[(r, col)] = ONE;
    }
    Ok(p)
}

/// Traces out the subsystems flagged in `traced` from an operator on
/// `⊗_k C^{dims[k]}`.
pub fn partial_trace(op: &Operator, dims: &[usize], traced: &[bool]) -> Result<Operator> {
    if dims.len() != traced.len() {
        return Err(Error::InvalidInput("dims and traced flags differ in length".into()));
    }
    let total: usize = dims.iter().product();
    if !op.is_square() || op.rows() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: op.rows(),
        });
    }
    let kept_dims: Vec<usize> = dims.iter().zip(traced).filter(|(_, &t)| !t).map(|(&d, _)| d).collect();
    let kept_total: usize = kept_dims.iter().product();
    let mut out = Operator::zeros(kept_total, kept_total);

    let n = dims.len();
    let mut ri = vec![0; n];
    let mut ci = vec![0; n];
    for r in 0..total {
        mixed_digits(r, dims, &mut ri);
        for c in 0..total {
            mixed_digits(c, dims, &mut ci);
            if (0..n).any(|k| traced[k] && ri[k] != ci[k]) {
                continue;
            }
            let z = op[(r, c)];
            let kr = mixed_undigits(&ri, dims, traced);
            let kc = mixed_undigits(&ci, dims, traced);
            out[(kr, kc)] += z;
        }
    }
    Ok(out)
}

fn mixed_digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

fn mixed_undigits(idx: &[usize], dims: &[usize], traced: &[bool]) -> usize {
    idx.iter()
        .zip(dims)
        .zip(traced)
        .filter(|(_, &t)| !t)
        .fold(0, |acc, ((&i, &d), _)| acc * d + i)
}

/// `tr_s`: trace out the first (system) factor of `C^d ⊗ C^d`.
pub fn trace_system(op: &Operator, d: usize) -> Result<Operator> {
    partial_trace(op, &[d, d], &[true, false])
}

/// `tr_a`: trace out the second (ancilla) factor of `C^d ⊗ C^d`.
pub fn trace_ancilla(op: &Operator, d: usize) -> Result<Operator> {
    partial_trace(op, &[d, d], &[false, true])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    fn perm(one_line: &[usize]) -> Permutation {
        Permutation::from_one_line(one_line).unwrap()
    }

    fn pseudo_random(n: usize, seed: u64) -> Operator {
        let mut s = seed;
        Operator::from_fn(n, n, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            let a = (s >> 33) as f64 / (1u64 << 31) as f64 - 0.5;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            let b = (s >> 33) as f64 / (1u64 << 31) as f64 - 0.5;
            C64::new(a, b)
        })
    }

    #[test]
    fn swap_satisfies_trace_identity() {
        let t = permutation_operator(&perm(&[2, 1]), 3).unwrap();
        let a = pseudo_random(3, 1);
        let b = pseudo_random(3, 2);
        let lhs = a.kron(&b).matmul(&t).trace();
        let rhs = a.matmul(&b).trace();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn identity_permutation_is_identity() {
        let p = permutation_operator(&Permutation::identity(3), 2).unwrap();
        assert_eq!(p, Operator::identity(8));
    }

    #[test]
    fn composition_law() {
        let s = perm(&[2, 3, 1, 4]);
        let t = perm(&[4, 1, 3, 2]);
        let ps = permutation_operator(&s, 2).unwrap();
        let pt = permutation_operator(&t, 2).unwrap();
        let pst = permutation_operator(&s.compose(&t), 2).unwrap();
        assert_eq!(ps.matmul(&pt), pst);
        let inv = permutation_operator(&s.inverse(), 2).unwrap();
        assert_eq!(ps.adjoint(), inv);
    }

    #[test]
    fn double_transposition_squares_to_identity() {
        let p = permutation_operator(&perm(&[3, 4, 1, 2]), 2).unwrap();
        assert_eq!(p.matmul(&p), Operator::identity(16));
    }

    #[test]
    fn relabels_tensor_factors() {
        // P_{k1 k2 k3} (A_{k1} ⊗ A_{k2} ⊗ A_{k3}) P† = A_1 ⊗ A_2 ⊗ A_3
        let ks = [2usize, 3, 1];
        let a: Vec<Operator> = (0..3).map(|j| pseudo_random(2, 10 + j as u64)).collect();
        let p = permutation_operator(&perm(&ks), 2).unwrap();
        let permuted = Operator::kron_all(ks.iter().map(|&k| &a[k - 1]));
        let lhs = p.matmul(&permuted).matmul(&p.adjoint());
        let rhs = Operator::kron_all(a.iter());
        assert!(lhs.distance(&rhs) < 1e-13);
    }

    #[test]
    fn guard_trips_on_large_spaces() {
        let big = Permutation::identity(14);
        assert!(matches!(permutation_operator(&big, 2), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = pseudo_random(2, 3);
        let b = pseudo_random(3, 4);
        let ab = a.kron(&b);
        let ta = partial_trace(&ab, &[2, 3], &[false, true]).unwrap();
        assert!(ta.distance(&a.scale(b.trace())) < 1e-13);
        let tb = partial_trace(&ab, &[2, 3], &[true, false]).unwrap();
        assert!(tb.distance(&b.scale(a.trace())) < 1e-13);
    }

    #[test]
    fn partial_trace_is_linear() {
        let x = pseudo_random(6, 5);
        let y = pseudo_random(6, 6);
        let s = C64::new(0.3, -1.2);
        let mut comb = x.clone();
        comb.add_scaled(s, &y);
        let lhs = partial_trace(&comb, &[2, 3], &[true, false]).unwrap();
        let mut rhs = partial_trace(&x, &[2, 3], &[true, false]).unwrap();
        rhs.add_scaled(s, &partial_trace(&y, &[2, 3], &[true, false]).unwrap());
        assert!(lhs.distance(&rhs) < 1e-13);
    }
}
