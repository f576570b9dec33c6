//! Group rings R[G_K] over three coefficient rings, the Spiegel involution,
//! restriction, the ≈ relation and character evaluation.

mod element;
mod lattice;
mod ring;
mod spiegel;

pub use element::GroupRingElement;
pub use lattice::{alpha_k, lattice_contains, wt_equiv, wt_equiv_with, Relation};
pub use ring::{big_vp, exact_norm, ramanujan_sum, CoeffRing, CycloMod, IntMod, Integers, NormValuation, Rationals};
pub use spiegel::{spiegel, SpiegelContext};

use thiserror::Error;

use crate::fields::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements live over different groups")]
    GroupMismatch,
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("coefficient vector has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("{0} is not coprime to the modulus")]
    NotCoprime(u64),
    #[error("denominator not invertible in the coefficient ring")]
    NotIntegral,
    #[error("coefficient modulus incompatible with q p^n = {0}")]
    SpiegelModulus(u64),
    #[error("[{0}] does not generate the group")]
    NotAGenerator(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
}
