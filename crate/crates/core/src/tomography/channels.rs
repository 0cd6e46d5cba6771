// SPDX-License-Identifier: Apache-2.0

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::designs::{hadamard, phase_gate};
use crate::eigen::inv_sqrt;
use crate::error::{Error, Result};
use crate::linalg::{paulis, Operator, C64};
use crate::math;
use crate::qops::{haar_unitary, QuantumChannel};
use crate::rng::Stream;

/// Channels used as tomography targets.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    Identity,
    FixedUnitary(Operator),
    RandomUnitary,
    RandomUnitalMix(usize),
    Depolarizing(f64),
    RandomGeneral(usize),
}

impl ChannelSpec {
    /// Parses `name` or `name:param`, e.g. `depolarizing:0.5`,
    /// `random_general:3`, `fixed_unitary:H`. Gate names for
    /// `fixed_unitary` are `I`, `X`, `Y`, `Z`, `H`, `S` (qubit only).
    pub fn parse(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let need = |what: &'static str| {
            param.ok_or_else(|| Error::InvalidParameter {
                name: what,
                reason: alloc::format!("`{name}` needs a parameter, e.g. `{name}:{}`", example(name)),
            })
        };
        let count = |p: &str| {
            p.parse::<usize>().map_err(|_| Error::InvalidParameter {
                name: "k",
                reason: alloc::format!("`{p}` is not a positive integer"),
            })
        };
        let spec = match name {
            "identity" => Self::Identity,
            "random_unitary" => Self::RandomUnitary,
            "fixed_unitary" => Self::FixedUnitary(gate(need("gate")?)?),
            "random_unital_mix" => Self::RandomUnitalMix(count(need("k")?)?),
            "random_general" => Self::RandomGeneral(count(need("k")?)?),
            "depolarizing" => {
                let p = need("p")?;
                Self::Depolarizing(p.parse::<f64>().map_err(|_| Error::InvalidParameter {
                    name: "p",
                    reason: alloc::format!("`{p}` is not a number"),
                })?)
            }
            other => return Err(Error::UnknownName(other.to_string())),
        };
        if param.is_some() && matches!(spec, Self::Identity | Self::RandomUnitary) {
            return Err(Error::InvalidParameter {
                name: "channel",
                reason: alloc::format!("`{name}` takes no parameter"),
            });
        }
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::FixedUnitary(_) => "fixed_unitary",
            Self::RandomUnitary => "random_unitary",
            Self::RandomUnitalMix(_) => "random_unital_mix",
            Self::Depolarizing(_) => "depolarizing",
            Self::RandomGeneral(_) => "random_general",
        }
    }
}

fn example(name: &str) -> &'static str {
    match name {
        "fixed_unitary" => "H",
        "depolarizing" => "0.5",
        _ => "3",
    }
}

fn gate(name: &str) -> Result<Operator> {
    let [i, x, y, z] = paulis();
    Ok(match name {
        "I" => i,
        "X" => x,
        "Y" => y,
        "Z" => z,
        "H" => hadamard(),
        "S" => phase_gate(),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Depolarizing(p) => write!(f, "depolarizing:{p}"),
            Self::RandomUnitalMix(k) => write!(f, "random_unital_mix:{k}"),
            Self::RandomGeneral(k) => write!(f, "random_general:{k}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Builds the channel described by `spec` on `C^d`, drawing from `rng` for
/// the random families.
pub fn channel_gallery(spec: &ChannelSpec, d: usize, rng: &mut Stream) -> Result<QuantumChannel> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "channels need d >= 2",
        });
    }
    match spec {
        ChannelSpec::Identity => Ok(QuantumChannel::identity(d)),
        ChannelSpec::FixedUnitary(u) => {
            if u.rows() != d || u.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: u.rows(),
                });
            }
            u.ensure_unitary(crate::ATOL_ALG)?;
            QuantumChannel::new(alloc::vec![u.clone()])
        }
        ChannelSpec::RandomUnitary => QuantumChannel::new(alloc::vec![haar_unitary(d, rng)]),
        ChannelSpec::RandomUnitalMix(k) => {
            positive_count(*k)?;
            // normalised exponentials are Dirichlet(1, …, 1)
            let e: Vec<f64> = (0..*k).map(|_| rng.exponential()).collect();
            let total: f64 = e.iter().sum();
            let kraus = e
                .iter()
                .map(|ei| haar_unitary(d, rng).scale_real(math::sqrt(ei / total)))
                .collect();
            QuantumChannel::new(kraus)
        }
        ChannelSpec::Depolarizing(p) => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::InvalidParameter {
                    name: "p",
                    reason: alloc::format!("depolarizing strength {p} outside [0, 1]"),
                });
            }
            QuantumChannel::new(depolarizing_kraus(*p, d))
        }
        ChannelSpec::RandomGeneral(k) => {
            positive_count(*k)?;
            let g: Vec<Operator> = (0..*k)
                .map(|_| Operator::from_fn(d, d, |_, _| rng.complex_normal()))
                .collect();
            let mut s = Operator::zeros(d, d);
            for gi in &g {
                s.add_scaled_real(1.0, &gi.adjoint_matmul(gi));
            }
            let s_inv = inv_sqrt(&s)?;
            QuantumChannel::new(g.iter().map(|gi| gi.matmul(&s_inv)).collect())
        }
    }
}

fn positive_count(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: String::from("at least one Kraus operator is needed"),
        });
    }
    Ok(())
}

/// `ℰ(A) = pA + (1−p) tr(A) I/d` through the Weyl operators `X^a Z^b`,
/// which average any operator to its trace part.
fn depolarizing_kraus(p: f64, d: usize) -> Vec<Operator> {
    let d2 = (d * d) as f64;
    let shift = Operator::from_fn(d, d, |r, c| {
        if r == (c + 1) % d {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let omega = 2.0 * core::f64::consts::PI / d as f64;
    let clock = Operator::diagonal(
        &(0..d)
            .map(|k| C64::from_polar(1.0, omega * k as f64))
            .collect::<Vec<_>>(),
    );
    let mut kraus = Vec::with_capacity(d * d);
    let mut xa = Operator::identity(d);
    for a in 0..d {
        let mut w = xa.clone();
        for b in 0..d {
            let weight = if a == 0 && b == 0 {
                p + (1.0 - p) / d2
            } else {
                (1.0 - p) / d2
            };
            if weight > 0.0 {
                kraus.push(w.scale_real(math::sqrt(weight)));
            }
            w = w.matmul(&clock);
        }
        xa = xa.matmul(&shift);
    }
    kraus
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::{jamiolkowski, trace_ancilla, trace_system};

    #[test]
    fn parse_round_trip() {
        for s in [
            "identity",
            "random_unitary",
            "random_unital_mix:3",
            "depolarizing:0.5",
            "random_general:2",
        ] {
            assert_eq!(ChannelSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(matches!(
            ChannelSpec::parse("fixed_unitary:H").unwrap(),
            ChannelSpec::FixedUnitary(_)
        ));
        assert!(ChannelSpec::parse("depolarizing").is_err());
        assert!(ChannelSpec::parse("identity:2").is_err());
        assert!(matches!(ChannelSpec::parse("amplitude"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn depolarizing_half_purity() {
        let mut rng = Stream::from_seed(0);
        let ch = channel_gallery(&ChannelSpec::Depolarizing(0.5), 2, &mut rng).unwrap();
        let sigma = jamiolkowski(&ch);
        assert!((sigma.frobenius_norm_sqr() - 7.0 / 16.0).abs() < 1e-12);
        assert!(ch.is_unital());
    }

    #[test]
    fn depolarizing_action_d3() {
        let mut rng = Stream::from_seed(0);
        let ch = channel_gallery(&ChannelSpec::Depolarizing(0.3), 3, &mut rng).unwrap();
        let a = Operator::from_fn(3, 3, |r, c| C64::new((r + 2 * c) as f64, r as f64 - c as f64));
        let mut expect = a.scale_real(0.3);
        expect.add_scaled(a.trace() * (0.7 / 3.0), &Operator::identity(3));
        assert!(ch.apply(&a).distance(&expect) < 1e-12);
    }

    #[test]
    fn unital_mix_marginals() {
        let mut rng = Stream::from_seed(4);
        let ch = channel_gallery(&ChannelSpec::RandomUnitalMix(3), 2, &mut rng).unwrap();
        let sigma = jamiolkowski(&ch);
        let half = Operator::identity(2).scale_real(0.5);
        assert!(trace_system(&sigma, 2).unwrap().distance(&half) < 1e-9);
        assert!(trace_ancilla(&sigma, 2).unwrap().distance(&half) < 1e-9);
    }

    #[test]
    fn random_general_is_trace_preserving_not_unital() {
        let mut rng = Stream::from_seed(5);
        let ch = channel_gallery(&ChannelSpec::RandomGeneral(3), 2, &mut rng).unwrap();
        assert!(!ch.is_unital());
        assert!(channel_gallery(&ChannelSpec::RandomGeneral(0), 2, &mut rng).is_err());
        assert!(channel_gallery(&ChannelSpec::Depolarizing(1.5), 2, &mut rng).is_err());
    }
}
