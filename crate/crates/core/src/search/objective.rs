// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use super::param::{Parametrization, WeightMode};
use crate::designs::gamma;
use crate::error::Result;
use crate::linalg::{Operator, C64};
use crate::math;

/// Frame-potential gap `Σ w_x w_y |tr(U_x†U_y)|^{2t} − γ(t, d)` as a
/// function of `θ`, with its analytic gradient.
#[derive(Debug, Clone)]
pub struct Objective {
    param: Parametrization,
    t: u32,
    gamma: f64,
}

impl Objective {
    pub fn new(param: Parametrization, t: u32) -> Result<Self> {
        let gamma = gamma(t as usize, param.dim())? as f64;
        Ok(Self { param, t, gamma })
    }

    pub fn parametrization(&self) -> &Parametrization {
        &self.param
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn value(&self, theta: &[f64]) -> Result<f64> {
        let us = self.param.unitaries(theta)?;
        let ws = self.param.weights(theta);
        let gram = gram(&us);
        Ok(self.potential(&gram, &ws) - self.gamma)
    }

    fn potential(&self, gram: &[Vec<C64>], ws: &[f64]) -> f64 {
        let rows: Vec<f64> = (0..ws.len())
            .map(|x| {
                (0..ws.len())
                    .map(|y| ws[x] * ws[y] * math::powi(gram[x][y].norm_sqr(), self.t))
                    .sum()
            })
            .collect();
        math::pairwise_sum(&rows)
    }

    /// Value, with the gradient written into `grad`.
    ///
    /// For element `y`, `∂f/∂θ_{yk} = 2 w_y Re tr(M_y ∂_k U_y)` with
    /// `M_y = Σ_{x≠y} w_x 2t |c_xy|^{2t−2} c̄_xy U_x†`; the derivative of the
    /// exponential follows the Daleckii–Krein formula. Weight derivatives
    /// `2 Σ_z w_z |c_yz|^{2t}` are chained through the softmax.
    pub fn value_and_gradient(&self, theta: &[f64], grad: &mut [f64]) -> Result<f64> {
        let p = &self.param;
        let (eigs, us) = p.spectral(theta)?;
        let ws = p.weights(theta);
        let gram = gram(&us);
        let n = p.size();
        let d = p.dim();
        let d2 = d * d;
        let t = self.t;
        let tf = t as f64;
        grad.iter_mut().for_each(|g| *g = 0.0);

        let adjoints: Vec<Operator> = us.iter().map(Operator::adjoint).collect();
        for y in 0..n {
            let mut m = Operator::zeros(d, d);
            for x in 0..n {
                if x == y {
                    continue;
                }
                let c = gram[x][y];
                let coef = ws[x] * 2.0 * tf * math::powi(c.norm_sqr(), t - 1) * c.conj();
                m.add_scaled(coef, &adjoints[x]);
            }
            let e = &eigs[y];
            let v = &e.vectors;
            let k = v.adjoint_matmul(&m).matmul(v);
            let mu = &e.values;
            let kphi = Operator::from_fn(d, d, |a, b| k[(a, b)] * divided_difference(mu[a], mu[b]));
            let z = v.matmul(&kphi).matmul(&v.adjoint());
            for (kk, g) in p.generators().iter().enumerate() {
                grad[y * d2 + kk] = 2.0 * ws[y] * z.matmul(g).trace().re;
            }
        }

        let gw: Vec<f64> = (0..n)
            .map(|y| {
                2.0 * (0..n)
                    .map(|z| ws[z] * math::powi(gram[y][z].norm_sqr(), t))
                    .sum::<f64>()
            })
            .collect();
        let base = n * d2;
        match p.mode() {
            WeightMode::Uniform => {}
            WeightMode::Free => {
                let s: f64 = ws.iter().zip(&gw).map(|(w, g)| w * g).sum();
                for y in 0..n {
                    grad[base + y] = ws[y] * (gw[y] - s);
                }
            }
            WeightMode::PerBasis => {
                let blocks = n / d2;
                let wb: Vec<f64> = (0..blocks).map(|b| ws[b * d2] * d2 as f64).collect();
                let gb: Vec<f64> = (0..blocks)
                    .map(|b| gw[b * d2..(b + 1) * d2].iter().sum::<f64>() / d2 as f64)
                    .collect();
                let s: f64 = wb.iter().zip(&gb).map(|(w, g)| w * g).sum();
                for b in 0..blocks {
                    grad[base + b * d2] = wb[b] * (gb[b] - s);
                }
            }
        }
        Ok(self.potential(&gram, &ws) - self.gamma)
    }
}

fn gram(us: &[Operator]) -> Vec<Vec<C64>> {
    us.iter().map(|u| us.iter().map(|v| u.hs_inner(v)).collect()).collect()
}

/// `(e^{ia} − e^{ib})/(a − b) = i e^{i(a+b)/2} sinc((a − b)/2)`, which stays
/// accurate as `a → b`.
fn divided_difference(a: f64, b: f64) -> C64 {
    let half = 0.5 * (a - b);
    let sinc = if half.abs() < 1e-4 {
        1.0 - half * half / 6.0
    } else {
        math::sin(half) / half
    };
    C64::new(0.0, sinc) * C64::from_polar(1.0, 0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    fn check_gradient(mode: WeightMode, n: usize, d: usize, t: u32, seed: u64) {
        let p = Parametrization::new(d, n, mode).unwrap();
        let obj = Objective::new(p.clone(), t).unwrap();
        let mut rng = Stream::from_seed(seed);
        let theta: Vec<f64> = (0..p.theta_len()).map(|_| rng.normal()).collect();
        let mut grad = alloc::vec![0.0; theta.len()];
        obj.value_and_gradient(&theta, &mut grad).unwrap();
        let h = 1e-5;
        for k in 0..theta.len() {
            let mut tp = theta.clone();
            let mut tm = theta.clone();
            tp[k] += h;
            tm[k] -= h;
            let fd = (obj.value(&tp).unwrap() - obj.value(&tm).unwrap()) / (2.0 * h);
            let scale = fd.abs().max(grad[k].abs()).max(1e-3);
            assert!(
                (fd - grad[k]).abs() / scale < 1e-4,
                "{mode:?} k={k}: fd {fd} vs analytic {}",
                grad[k]
            );
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        check_gradient(WeightMode::Free, 5, 2, 2, 1);
        check_gradient(WeightMode::Free, 4, 3, 1, 2);
        check_gradient(WeightMode::Uniform, 4, 2, 3, 3);
        check_gradient(WeightMode::PerBasis, 8, 2, 2, 4);
    }

    #[test]
    fn divided_difference_is_continuous() {
        let a = 0.3;
        let near = divided_difference(a, a + 1e-7);
        let at = divided_difference(a, a);
        assert!((near - at).norm() < 1e-6);
    }
}
