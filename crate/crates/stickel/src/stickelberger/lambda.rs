use std::sync::Arc;

use num_bigint::BigInt;

use crate::fields::arith::{gcd, invmod};
use crate::fields::AbelianField;
use crate::group_algebra::{GroupRingElement, Integers};

use super::StickelError;

/// a'_c ∈ [1, f_n] with a'_c·c ≡ a (mod f_n).
pub fn a_prime(a: u64, c: u64, f_n: u64) -> Result<u64, StickelError> {
    let cinv = invmod(c % f_n, f_n).ok_or(StickelError::NotCoprime(c))?;
    let r = ((a as u128 * cinv as u128) % f_n as u128) as u64;
    Ok(if r == 0 { f_n } else { r })
}

/// λ^n_a(c) = (a'_c·c − a)/f_n.
pub fn lambda_coeff(a: u64, c: u64, f_n: u64) -> Result<u64, StickelError> {
    if gcd(a, f_n) != 1 {
        return Err(StickelError::NotCoprime(a));
    }
    if gcd(c, f_n) != 1 {
        return Err(StickelError::NotCoprime(c));
    }
    let ap = a_prime(a, c, f_n)?;
    let num = ap as u128 * c as u128 - a as u128;
    assert_eq!(num % f_n as u128, 0, "a'c - a not divisible by f_n");
    let l = (num / f_n as u128) as u64;
    debug_assert!(l < c.max(1));
    Ok(l)
}

/// S(c) = Σ_a [λ_a(c) + (1 − c)/2]·(L_n/a)^{-1}, with f_n the modulus of `ln`.
pub fn stickelberger_c(ln: &Arc<AbelianField>, c: u64, half: bool) -> Result<GroupRingElement<Integers>, StickelError> {
    if c.is_multiple_of(2) {
        return Err(StickelError::EvenMultiplier(c));
    }
    let f_n = ln.modulus();
    if gcd(c, f_n) != 1 {
        return Err(StickelError::NotCoprime(c));
    }
    let shift = (1 - c as i128) / 2;
    let upper = if half { f_n / 2 } else { f_n };
    let mut acc = vec![0i128; ln.degree()];
    for a in 1..=upper {
        if gcd(a, f_n) != 1 {
            continue;
        }
        let l = lambda_coeff(a, c, f_n)? as i128;
        let i = ln.inv(ln.coset(a).expect("unit"));
        acc[i] += l + shift;
    }
    let coeffs = acc.into_iter().map(BigInt::from).collect();
    Ok(GroupRingElement::from_coeffs(ln, Integers, coeffs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(lambda_coeff(1, 3, 20).unwrap(), 1);
        assert_eq!(lambda_coeff(19, 3, 20).unwrap(), 1);
        assert_eq!(lambda_coeff(7, 1, 20).unwrap(), 0);
        assert!(lambda_coeff(2, 3, 20).is_err());
    }

    #[test]
    fn c_one_gives_zero() {
        let q = Arc::new(AbelianField::cyclotomic(20).unwrap());
        assert!(stickelberger_c(&q, 1, false).unwrap().is_zero());
        assert!(stickelberger_c(&q, 2, false).is_err());
    }
}
