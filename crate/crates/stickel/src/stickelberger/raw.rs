use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::fields::arith::{gcd, invmod, prime_divisors};
use crate::fields::{AbelianField, DirichletCharacter};
use crate::group_algebra::{CoeffRing, CycloMod, GroupRingElement, IntMod, Rationals};

use super::StickelError;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// S_L = −Σ_{a ≤ f, (a,f)=1} (a/f − 1/2)·(L/a)^{-1}, or the half sum over a ≤ f/2.
pub fn stickelberger_raw(f: u64, target: &Arc<AbelianField>, half: bool) -> Result<GroupRingElement<Rationals>, StickelError> {
    let m = target.modulus();
    if f == 0 || !f.is_multiple_of(m) {
        return Err(StickelError::Params(format!("target modulus {m} does not divide {f}")));
    }
    let upper = if half { f / 2 } else { f };
    let mut out = GroupRingElement::zero(target, Rationals);
    let twof = 2 * f as i64;
    for a in 1..=upper.max(if f == 1 { 1 } else { 0 }) {
        if gcd(a, f) != 1 {
            continue;
        }
        let i = target.coset(a).expect("unit");
        // −(a/f − 1/2) = (f − 2a)/(2f)
        let c = rat(f as i64 - 2 * a as i64, twof);
        out.add_to_coeff(target.inv(i), &c);
    }
    Ok(out)
}

/// δ_c = 1 − c·σ_c^{-1}.
pub fn delta_c<R: CoeffRing>(field: &Arc<AbelianField>, ring: R, c: u64) -> Result<GroupRingElement<R>, StickelError> {
    let i = field.coset(c).ok_or(StickelError::NotCoprime(c))?;
    let mut x = GroupRingElement::one(field, ring.clone());
    let neg_c = ring.neg(&ring.from_i64(c as i64));
    x.add_to_coeff(field.inv(i), &neg_c);
    Ok(x)
}

/// Euler factor 1 − ℓ^{-1}·σ_ℓ over Q; the flag is false (and the factor 1) when ℓ | f_k.
pub fn euler_factor(k: &Arc<AbelianField>, l: u64) -> (GroupRingElement<Rationals>, bool) {
    let mut x = GroupRingElement::one(k, Rationals);
    match k.coset(l) {
        Some(i) if !k.modulus().is_multiple_of(l) => {
            x.add_to_coeff(i, &rat(-1, l as i64));
            (x, true)
        }
        _ => (x, false),
    }
}

/// The same factor with ℓ^{-1} taken in Z/p^M.
pub fn euler_factor_mod(k: &Arc<AbelianField>, l: u64, ring: IntMod) -> Result<(GroupRingElement<IntMod>, bool), StickelError> {
    let mut x = GroupRingElement::one(k, ring);
    match k.coset(l) {
        Some(i) if !k.modulus().is_multiple_of(l) => {
            let inv = invmod(l % ring.modulus(), ring.modulus()).ok_or(StickelError::NotCoprime(l))?;
            x.add_to_coeff(i, &ring.neg(&inv));
            Ok((x, true))
        }
        _ => Ok((x, false)),
    }
}

/// 1 − χ(ℓ)/ℓ in (Z/p^M)[y]/Φ_d; 1 when χ(ℓ) is undefined.
pub fn euler_char_value(chi: &DirichletCharacter, l: u64, ring: &CycloMod) -> Vec<u64> {
    let base = ring.base();
    match chi.exp_at(l) {
        Some(e) => {
            let inv = base.inv(l % base.modulus()).expect("l is prime to p");
            let term: Vec<u64> = ring.y_pow(e).iter().map(|&c| base.mul(&c, &inv)).collect();
            ring.sub(&ring.one(), &term)
        }
        None => ring.one(),
    }
}

/// Both sides of N_{Q^f/Q^m}(S_{Q^f}) = Π_{ℓ|f, ℓ∤m}(1 − σ_ℓ^{-1})·S_{Q^m}.
#[derive(Clone, Debug)]
pub struct NormRelationReport {
    pub f: u64,
    pub m: u64,
    pub c: Option<u64>,
    pub lhs: GroupRingElement<Rationals>,
    pub rhs: GroupRingElement<Rationals>,
    pub euler: GroupRingElement<Rationals>,
    pub holds: bool,
}

pub fn norm_relation_check(f: u64, m: u64, c: Option<u64>) -> Result<NormRelationReport, StickelError> {
    if m == 0 || !f.is_multiple_of(m) {
        return Err(StickelError::Params(format!("{m} does not divide {f}")));
    }
    let qf = Arc::new(AbelianField::cyclotomic(f)?);
    let qm = Arc::new(AbelianField::cyclotomic(m)?);
    let mut sf = stickelberger_raw(f, &qf, false)?;
    let mut sm = stickelberger_raw(m, &qm, false)?;
    if let Some(c) = c {
        sf = delta_c(&qf, Rationals, c)?.mul(&sf)?;
        sm = delta_c(&qm, Rationals, c)?.mul(&sm)?;
    }
    let lhs = sf.restrict(&qm)?;
    let mut euler = GroupRingElement::one(&qm, Rationals);
    for l in prime_divisors(f) {
        if m.is_multiple_of(l) {
            continue;
        }
        let i = qm.coset(l).expect("l prime to m");
        let mut factor = GroupRingElement::one(&qm, Rationals);
        factor.add_to_coeff(qm.inv(i), &rat(-1, 1));
        euler = euler.mul(&factor)?;
    }
    let rhs = euler.mul(&sm)?;
    let holds = lhs == rhs;
    Ok(NormRelationReport { f, m, c, lhs, rhs, euler, holds })
}
