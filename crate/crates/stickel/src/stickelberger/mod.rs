//! Stickelberger elements, λ-coefficients, the annihilators A_{K,n}(c) and
//! A'_{K,n}(c), the measure-style A_{L_n}(c), Euler factors and norm relations.

mod best_c;
mod fixed_point;
mod hotloop;
mod lambda;
mod measure;
mod raw;
mod recipe;
mod report;

pub use best_c::{best_c, c_score};
pub use fixed_point::{fixed_point_h, nu_exponent, FixedPoint, RamifiedPrime};
pub use hotloop::{lambda_sum, lambda_sum_naive, LambdaSum, LoopRange};
pub use lambda::{a_prime, lambda_coeff, stickelberger_c};
pub use measure::{annihilator_measure, phi_n};
pub use raw::{
    delta_c, euler_char_value, euler_factor, euler_factor_mod, norm_relation_check, stickelberger_raw,
    NormRelationReport,
};
pub use recipe::{composite_primes, setup, MAX_PM, Recipe, RecipeSetup};
pub use report::{
    annihilator_a, annihilator_from_setup, annihilator_stabilized, AnnihilatorReport, Certification,
    CharacterImage, Claim, TableStat,
};

use thiserror::Error;

use crate::fields::FieldError;
use crate::group_algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StickelError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("{0} is not coprime to the modulus")]
    NotCoprime(u64),
    #[error("multiplier c = {0} must be odd")]
    EvenMultiplier(u64),
    #[error("inexact division: {0}")]
    Inexact(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("no admissible c up to {0}")]
    EmptySearch(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
