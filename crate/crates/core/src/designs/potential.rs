// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use super::set::WeightedUnitarySet;
use crate::error::{Error, Result};
use crate::math;

/// Largest `t` for which [`gamma`] enumerates `S_t`.
pub const MAX_GAMMA_T: usize = 9;

/// Weighted frame potential `Σ_{x,y} w(x)w(y)|tr(U(x)†U(y))|^{2t}`.
///
/// Diagonal terms are added once and off-diagonal pairs twice; the per-row
/// partial sums are combined by pairwise summation.
pub fn frame_potential(set: &WeightedUnitarySet, t: u32) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "t must be at least 1".into(),
        });
    }
    let us = set.unitaries();
    let ws = set.weights();
    let rows: Vec<f64> = (0..us.len())
        .map(|x| {
            let mut acc = ws[x] * ws[x] * math::powi(us[x].hs_inner(&us[x]).norm_sqr(), t);
            for y in 0..x {
                acc += 2.0 * ws[x] * ws[y] * math::powi(us[x].hs_inner(&us[y]).norm_sqr(), t);
            }
            acc
        })
        .collect();
    Ok(math::pairwise_sum(&rows))
}

/// `γ(t, d)`: number of permutations in `S_t` whose longest increasing
/// subsequence has length at most `d`. Equals the Haar average of
/// `|tr U|^{2t}` over `U(d)`.
pub fn gamma(t: usize, d: usize) -> Result<u64> {
    if t == 0 {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "t must be at least 1".into(),
        });
    }
    if d == 0 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "dimension must be positive",
        });
    }
    if t > MAX_GAMMA_T {
        return Err(Error::ResourceLimit(alloc::format!(
            "gamma enumerates S_t and is limited to t <= {MAX_GAMMA_T}, got t = {t}"
        )));
    }
    let mut perm: Vec<usize> = (0..t).collect();
    let mut count = 0u64;
    let mut piles = Vec::with_capacity(t);
    let mut visit = |p: &[usize]| {
        if longest_increasing(p, &mut piles) <= d {
            count += 1;
        }
    };
    // Heap's algorithm, iterative form
    let mut c = alloc::vec![0usize; t];
    visit(&perm);
    let mut i = 1;
    while i < t {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(count)
}

/// Patience sorting: the number of piles equals the LIS length.
fn longest_increasing(p: &[usize], piles: &mut Vec<usize>) -> usize {
    piles.clear();
    for &x in p {
        match piles.binary_search(&x) {
            Ok(_) => unreachable!("permutation entries are distinct"),
            Err(k) if k == piles.len() => piles.push(x),
            Err(k) => piles[k] = x,
        }
    }
    piles.len()
}
