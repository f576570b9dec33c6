//! Abelian fields as subgroups of (Z/fZ)^×, Artin symbols, conductors and characters.

pub mod arith;
mod character;
mod field;
mod spec;
mod units;

pub use character::{characters_of, DirichletCharacter};
pub use field::{AbelianField, GaloisElement};
pub use spec::{build_field, FieldKind, FieldSpec};
pub use units::UnitGroupModF;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("{a} is not coprime to the modulus {f}")]
    NotCoprime { a: u64, f: u64 },
    #[error("H is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("{f} is not the conductor (the field is defined modulo {conductor})")]
    NotConductor { f: u64, conductor: u64 },
    #[error("field is not real: -1 is not in H")]
    NotReal,
    #[error("{small} is not contained in {big}")]
    NotContained { small: String, big: String },
    #[error("cannot parse field spec: {0}")]
    Parse(String),
}

/// q = p for odd p and q = 4 for p = 2.
pub fn q_of(p: u64) -> u64 {
    if p == 2 {
        4
    } else {
        p
    }
}

/// Conductor of L_n = K(μ_{q p^n}): lcm(f_K, q p^n).
pub fn conductor_ln(f_k: u64, p: u64, n: u32) -> u64 {
    arith::lcm(f_k, q_of(p) * p.pow(n))
}

/// Largest n₀ with the n₀-th layer of the cyclotomic Z_p-extension inside K.
pub fn cyclotomic_layer(k: &AbelianField, p: u64) -> u32 {
    let f = k.modulus();
    let q = q_of(p);
    let mut n0 = 0;
    loop {
        let n = n0 + 1;
        let m = q * p.pow(n);
        if !f.is_multiple_of(m) {
            return n0;
        }
        // layer Q_n: kernel of (Z/m)^× → 1 + qZ_p / 1 + q p^n, i.e. residues with a^{ord} ≡ ±1-type torsion
        let contained = k.subgroup_generators().iter().all(|&h| in_torsion_part(h % m, p, m));
        if !contained {
            return n0;
        }
        n0 = n;
    }
}

/// Whether `a` lies in the subgroup of (Z/mZ)^× fixing the n-th cyclotomic layer (m = q p^n).
fn in_torsion_part(a: u64, p: u64, m: u64) -> bool {
    if p == 2 {
        a == 1 || a == m - 1
    } else {
        arith::powmod(a, p - 1, m) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_conductors() {
        assert_eq!(conductor_ln(313, 7, 2), 313 * 343);
        assert_eq!(conductor_ln(1160, 2, 4), 9280);
        assert_eq!(conductor_ln(49, 7, 1), 49);
    }

    #[test]
    fn q_sqrt2_is_first_layer() {
        let k = build_field(&FieldSpec::quadratic(8)).unwrap();
        assert_eq!(cyclotomic_layer(&k, 2), 1);
        let k = build_field(&FieldSpec::quadratic(1201)).unwrap();
        assert_eq!(cyclotomic_layer(&k, 2), 0);
    }
}
