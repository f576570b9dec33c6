//! Truncated p-adic arithmetic in Z[ζ_f]: the ring Z[x]/(Φ_f, p^M), its extension
//! by Φ_d(y), and the Iwasawa logarithm.

mod bicyclo;
mod log;
mod phi;
mod ring;

pub use bicyclo::{BiCycloElement, BiCycloRing};
pub use log::{iwasawa_log, iwasawa_log_by_exponent, log_series, GUARD};
pub use phi::cyclotomic_polynomial;
pub use ring::{ring_degree, CycloElement, CycloRing};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("precision: {0}")]
    Precision(String),
    #[error("element is not invertible modulo (Phi_f, p)")]
    NotInvertible,
    #[error("log argument is not congruent to 1 modulo p")]
    NotPrincipal,
    #[error("division by p^{needed} is inexact (valuation {valuation})")]
    InexactDivision { valuation: u32, needed: u32 },
    #[error("p = {p} divides the conductor {f}; this path is not supported")]
    RamifiedPrime { p: u64, f: u64 },
    #[error("valuation not determined at this precision")]
    Indeterminate,
    #[error("ring mismatch")]
    RingMismatch,
}

/// The ring Z/p^M (f = 1), convenient for scalar checks.
pub fn scalar_ring(p: u64, m: u32) -> Result<std::sync::Arc<CycloRing>, CycloError> {
    CycloRing::new(1, p, m)
}
