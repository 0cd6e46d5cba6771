// SPDX-License-Identifier: Apache-2.0

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use super::quat::quat_to_unitary;
use super::set::{phase_equivalent, WeightedUnitarySet};
use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};
use crate::{math, ATOL_ALG};

/// Default limit on the size of a generated group.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

/// Names accepted by [`gallery`].
pub const GALLERY_NAMES: [&str; 5] = ["utof", "pu2_11pt", "pu2_clifford12", "pu2_clifford24", "pu2_600cell"];

/// A known design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GalleryEntry {
    /// `n` unitaries on `C^d` forming a tight unitary frame (1-design).
    Utof { n: usize, d: usize },
    /// Weighted 11-point `PU(2)` 2-design.
    Pu2ElevenPoint,
    /// `⟨HR, R²⟩` modulo phases, 12 elements.
    Pu2Clifford12,
    /// Projective Clifford group `⟨H, R⟩`, 24 elements.
    Pu2Clifford24,
    /// 600-cell vertices modulo `±1`, 60 elements.
    Pu2SixHundredCell,
}

impl GalleryEntry {
    /// `n` and `d` are only read for `utof`.
    pub fn parse(name: &str, n: Option<usize>, d: Option<usize>) -> Result<Self> {
        match name {
            "utof" => {
                let d = d.ok_or_else(|| Error::InvalidParameter {
                    name: "dim",
                    reason: "utof needs a dimension".into(),
                })?;
                let n = n.unwrap_or(d * d);
                Ok(GalleryEntry::Utof { n, d })
            }
            "pu2_11pt" => Ok(GalleryEntry::Pu2ElevenPoint),
            "pu2_clifford12" => Ok(GalleryEntry::Pu2Clifford12),
            "pu2_clifford24" => Ok(GalleryEntry::Pu2Clifford24),
            "pu2_600cell" => Ok(GalleryEntry::Pu2SixHundredCell),
            other => Err(Error::UnknownName(other.into())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GalleryEntry::Utof { .. } => "utof",
            GalleryEntry::Pu2ElevenPoint => "pu2_11pt",
            GalleryEntry::Pu2Clifford12 => "pu2_clifford12",
            GalleryEntry::Pu2Clifford24 => "pu2_clifford24",
            GalleryEntry::Pu2SixHundredCell => "pu2_600cell",
        }
    }

    /// Strength the entry is known to have.
    pub fn design_strength(self) -> u32 {
        match self {
            GalleryEntry::Utof { .. } => 1,
            GalleryEntry::Pu2ElevenPoint | GalleryEntry::Pu2Clifford12 => 2,
            GalleryEntry::Pu2Clifford24 => 3,
            GalleryEntry::Pu2SixHundredCell => 5,
        }
    }

    pub fn build(self) -> Result<WeightedUnitarySet> {
        match self {
            GalleryEntry::Utof { n, d } => utof(n, d),
            GalleryEntry::Pu2ElevenPoint => pu2_11pt(),
            GalleryEntry::Pu2Clifford12 => pu2_clifford12(),
            GalleryEntry::Pu2Clifford24 => pu2_clifford24(),
            GalleryEntry::Pu2SixHundredCell => pu2_600cell(),
        }
    }
}

/// Builds a gallery design by name.
pub fn gallery(name: &str, n: Option<usize>, d: Option<usize>) -> Result<WeightedUnitarySet> {
    GalleryEntry::parse(name, n, d)?.build()
}

/// `⟨j|U_m|k⟩ = d^{-1/2} exp[2πi jk/d + 2πi (j + kd) m/n]`, `m = 0..n`.
pub fn utof(n: usize, d: usize) -> Result<WeightedUnitarySet> {
    if d < 1 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "dimension must be positive",
        });
    }
    if n < d * d {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("a unitary 1-design on C^{d} needs at least {} elements, got {n}", d * d),
        });
    }
    let (df, nf) = (d as f64, n as f64);
    let s = 1.0 / math::sqrt(df);
    let us = (0..n)
        .map(|m| {
            Operator::from_fn(d, d, |j, k| {
                let jk = ((j * k) % d) as f64 / df;
                let shift = (((j + k * d) * m) % n) as f64 / nf;
                C64::from_polar(s, 2.0 * PI * (jk + shift))
            })
        })
        .collect();
    WeightedUnitarySet::uniform(us)
}

/// Weighted 11-point 2-design on `PU(2)`; weight 1/16 on the identity and
/// 3/32 on the other ten points.
pub fn pu2_11pt() -> Result<WeightedUnitarySet> {
    let a = 1.0 / math::sqrt(3.0);
    let b = math::sqrt(2.0 / 3.0);
    let cols: [[f64; 4]; 11] = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, a, a, a],
        [0.0, -a, a, a],
        [0.0, a, -a, a],
        [0.0, a, a, -a],
        [a, b, 0.0, 0.0],
        [a, -b, 0.0, 0.0],
        [a, 0.0, b, 0.0],
        [a, 0.0, -b, 0.0],
        [a, 0.0, 0.0, b],
        [a, 0.0, 0.0, -b],
    ];
    let us = cols.iter().map(|&r| quat_to_unitary(r)).collect::<Result<Vec<_>>>()?;
    let mut ws = alloc::vec![3.0 / 32.0; 11];
    ws[0] = 1.0 / 16.0;
    WeightedUnitarySet::new(us, ws)
}

/// `H = (X + Z)/√2`.
pub fn hadamard() -> Operator {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    Operator::from_rows([[h, h], [h, -h]])
}

/// `R = diag(1, i)`.
pub fn phase_gate() -> Operator {
    Operator::diagonal(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)])
}

pub fn pu2_clifford12() -> Result<WeightedUnitarySet> {
    let r = phase_gate();
    group_closure(&[hadamard().matmul(&r), r.matmul(&r)], DEFAULT_MAX_ORDER)
}

pub fn pu2_clifford24() -> Result<WeightedUnitarySet> {
    group_closure(&[hadamard(), phase_gate()], DEFAULT_MAX_ORDER)
}

/// 600-cell vertices in quaternion coordinates: the 8 permutations of
/// `(±1, 0, 0, 0)`, the 16 points `(±½, ±½, ±½, ±½)` and the 96 even
/// permutations of `(±φ/2, ±½, ±1/(2φ), 0)`.
pub fn six_hundred_cell() -> Vec<[f64; 4]> {
    let mut out = Vec::with_capacity(120);
    for k in 0..4 {
        for s in [1.0, -1.0] {
            let mut v = [0.0; 4];
            v[k] = s;
            out.push(v);
        }
    }
    for signs in 0..16u32 {
        let mut v = [0.5; 4];
        for (k, c) in v.iter_mut().enumerate() {
            if signs >> k & 1 == 1 {
                *c = -0.5;
            }
        }
        out.push(v);
    }
    let phi = (1.0 + math::sqrt(5.0)) / 2.0;
    let base = [phi / 2.0, 0.5, 1.0 / (2.0 * phi), 0.0];
    for p in even_permutations_of_four() {
        for signs in 0..8u32 {
            let mut v = [0.0; 4];
            for (slot, &src) in p.iter().enumerate() {
                let mut c = base[src];
                if src < 3 && signs >> src & 1 == 1 {
                    c = -c;
                }
                v[slot] = c;
            }
            out.push(v);
        }
    }
    out
}

fn even_permutations_of_four() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(12);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    if distinct && inversions(&p) % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
        .sum()
}

/// Antipodal pairs of 600-cell vertices as 60 elements of `PU(2)` with
/// uniform weights.
pub fn pu2_600cell() -> Result<WeightedUnitarySet> {
    let us = six_hundred_cell()
        .into_iter()
        .map(quat_to_unitary)
        .collect::<Result<Vec<_>>>()?;
    let n = us.len();
    WeightedUnitarySet::merged(us, alloc::vec![1.0 / n as f64; n])
}

/// Breadth-first closure of `generators` under multiplication, modulo
/// global phases, with uniform weights.
pub fn group_closure(generators: &[Operator], max_order: usize) -> Result<WeightedUnitarySet> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let d = first.rows();
    for g in generators {
        if g.rows() != d || g.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.rows(),
            });
        }
        g.ensure_unitary(ATOL_ALG)?;
    }
    let mut elements = alloc::vec![Operator::identity(d)];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(k) = queue.pop_front() {
        for g in generators {
            let next = elements[k].matmul(g).canonical_phase();
            if elements.iter().any(|e| phase_equivalent(e, &next)) {
                continue;
            }
            if elements.len() == max_order {
                return Err(Error::ResourceLimit(format!(
                    "group closure exceeds {max_order} elements"
                )));
            }
            elements.push(next);
            queue.push_back(elements.len() - 1);
        }
    }
    WeightedUnitarySet::uniform(elements)
}
