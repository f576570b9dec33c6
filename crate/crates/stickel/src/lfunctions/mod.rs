//! Cyclotomic numbers, Gauss sums, L_p(1, χ), Solomon elements, the analytic
//! valuation of #T_K and the character-side reconstruction of the annihilator.

mod analytic;
mod cyclotomic;
mod degeneracy;
mod gauss;
mod lvalue;
mod reconstruct;
mod solomon;

pub use analytic::{analytic_valuation, character_orbits, AnalyticValuation, OrbitValuation};
pub use cyclotomic::{cyclotomic_number, eta_norm_relation, EtaNormRelation};
pub use degeneracy::{degeneracy_check, degenerate_pairs, degenerate_quartic, DegeneracyInstance, DegeneracyReport};
pub use gauss::gauss_sum;
pub use lvalue::{lp_at_1, LpValue};
pub use reconstruct::{crosscheck, reconstruct_annihilator, CharacterCheck, CrosscheckReport, Reconstruction};
pub use solomon::{solomon_element, teichmuller, Normalization, SolomonElement};

use thiserror::Error;

use crate::fields::FieldError;
use crate::group_algebra::AlgebraError;
use crate::padic_cyclo::CycloError;
use crate::stickelberger::StickelError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LfError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("the trivial character is excluded")]
    TrivialCharacter,
    #[error("character is not primitive modulo {0}")]
    NotPrimitive(u64),
    #[error("p = {p} divides the conductor {f}")]
    Ramified { p: u64, f: u64 },
    #[error("division by {divisor} is inexact (valuation {valuation})")]
    InexactDivision { divisor: u64, valuation: u32 },
    #[error("precision underflow: {0}")]
    Precision(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Stickel(#[from] StickelError),
}

impl LfError {
    /// True for failures caused by the requested precision rather than the input.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            LfError::Precision(_)
                | LfError::InexactDivision { .. }
                | LfError::Cyclo(CycloError::Precision(_))
                | LfError::Cyclo(CycloError::Indeterminate)
                | LfError::Cyclo(CycloError::InexactDivision { .. })
                | LfError::Stickel(StickelError::Inexact(_))
                | LfError::Stickel(StickelError::Precision(_))
        )
    }
}
