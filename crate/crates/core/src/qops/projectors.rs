// SPDX-License-Identifier: Apache-2.0

use core::fmt;
use core::str::FromStr;

use super::{herm_basis, SuperOperator};
use crate::error::{Error, Result};
use crate::linalg::Operator;

/// Class of Jamiołkowski states a measurement must reconstruct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelClass {
    /// Every state of `C^d ⊗ C^d`.
    Full,
    /// Outputs of general channels: `tr_s(ρ) = I/d`.
    General,
    /// Outputs of unital channels: both marginals `I/d`.
    Unital,
}

impl ChannelClass {
    pub const ALL: [ChannelClass; 3] = [ChannelClass::Full, ChannelClass::General, ChannelClass::Unital];

    pub fn as_str(self) -> &'static str {
        match self {
            ChannelClass::Full => "full",
            ChannelClass::General => "gc",
            ChannelClass::Unital => "uc",
        }
    }

    /// Dimension `δ` of the real span of the class inside `H(C^d ⊗ C^d)`.
    pub fn span_dim(self, d: usize) -> usize {
        let d2 = d * d;
        match self {
            ChannelClass::Full => d2 * d2,
            ChannelClass::General => d2 * (d2 - 1) + 1,
            ChannelClass::Unital => (d2 - 1) * (d2 - 1) + 1,
        }
    }

    /// Projector onto the span of the class.
    pub fn projector(self, d: usize) -> Result<SuperOperator> {
        match self {
            ChannelClass::Full => Ok(SuperOperator::identity(d * d)),
            ChannelClass::General => Ok(subspace_projectors(d)?.gc),
            ChannelClass::Unital => Ok(subspace_projectors(d)?.uc),
        }
    }
}

impl fmt::Display for ChannelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ChannelClass::Full),
            "gc" => Ok(ChannelClass::General),
            "uc" => Ok(ChannelClass::Unital),
            other => Err(Error::UnknownName(other.into())),
        }
    }
}

/// `Π₀`, `Π_uc` and `Π_gc` on `End(C^d ⊗ C^d)`.
#[derive(Debug, Clone)]
pub struct SubspaceProjectors {
    pub pi0: SuperOperator,
    pub uc: SuperOperator,
    pub gc: SuperOperator,
}

/// Builds the three projectors from the Gell-Mann basis:
///
/// - `Π₀ = 𝐈 − |I⟩⟩⟨⟨I|/D`
/// - `Π_uc = |λ₀⊗λ₀⟩⟩⟨⟨λ₀⊗λ₀| + Σ_{j,k>0} |λ_j⊗λ_k⟩⟩⟨⟨λ_j⊗λ_k|`
/// - `Π_gc = |λ₀⊗λ₀⟩⟩⟨⟨λ₀⊗λ₀| + Σ_{j>0, k} |λ_j⊗λ_k⟩⟩⟨⟨λ_j⊗λ_k|`
pub fn subspace_projectors(d: usize) -> Result<SubspaceProjectors> {
    let basis = herm_basis(d)?;
    let big = d * d;
    let id = Operator::identity(big);

    let mut pi0 = SuperOperator::identity(big);
    pi0.add_ket_bra(-1.0 / big as f64, &id, &id);

    let mut uc = SuperOperator::zeros(big);
    let mut gc = SuperOperator::zeros(big);
    let l0 = basis.get(0);
    let l00 = l0.kron(l0);
    uc.add_ket_bra(1.0, &l00, &l00);
    gc.add_ket_bra(1.0, &l00, &l00);
    for lj in basis.operators().iter().skip(1) {
        for (k, lk) in basis.operators().iter().enumerate() {
            let op = lj.kron(lk);
            gc.add_ket_bra(1.0, &op, &op);
            if k > 0 {
                uc.add_ket_bra(1.0, &op, &op);
            }
        }
    }
    Ok(SubspaceProjectors { pi0, uc, gc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::{jamiolkowski, QuantumChannel};

    #[test]
    fn ranks_match_dimension_formulas() {
        for d in [2, 3] {
            let p = subspace_projectors(d).unwrap();
            assert_eq!(p.pi0.rank().unwrap(), d.pow(4) - 1);
            assert_eq!(p.uc.rank().unwrap(), ChannelClass::Unital.span_dim(d));
            assert_eq!(p.gc.rank().unwrap(), ChannelClass::General.span_dim(d));
        }
        let p = subspace_projectors(2).unwrap();
        assert_eq!(p.uc.rank().unwrap(), 10);
        assert_eq!(p.gc.rank().unwrap(), 13);
        assert_eq!(p.pi0.rank().unwrap(), 15);
    }

    #[test]
    fn idempotent_and_nested() {
        let p = subspace_projectors(2).unwrap();
        for pi in [&p.pi0, &p.uc, &p.gc] {
            assert!(pi.compose(pi).distance(pi) < 1e-10);
            assert!(pi.is_left_right_hermitian(1e-12));
        }
        assert!(p.uc.compose(&p.gc).distance(&p.uc) < 1e-10);
        assert!(p.gc.compose(&p.uc).distance(&p.uc) < 1e-10);
    }

    #[test]
    fn identity_channel_state_lies_in_unital_span() {
        let rho = jamiolkowski(&QuantumChannel::identity(2));
        let p = subspace_projectors(2).unwrap();
        assert!(p.uc.apply(&rho).distance(&rho) < 1e-12);
    }

    #[test]
    fn class_names_round_trip() {
        for c in ChannelClass::ALL {
            assert_eq!(c.as_str().parse::<ChannelClass>().unwrap(), c);
        }
        assert!("xyz".parse::<ChannelClass>().is_err());
    }
}
