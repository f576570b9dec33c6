use std::sync::Arc;

use crate::fields::arith::{gcd, invmod, ipow};
use crate::fields::{q_of, AbelianField};
use crate::group_algebra::{GroupRingElement, IntMod};

use super::StickelError;

/// φ_n = φ(q p^n).
pub fn phi_n(p: u64, n: u32) -> u64 {
    if p == 2 {
        ipow(2, n + 1)
    } else {
        (p - 1) * ipow(p, n)
    }
}

fn powmod_u128(mut b: u128, mut e: u64, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u128(acc, b, m);
        }
        b = mulmod_u128(b, b, m);
        e >>= 1;
    }
    acc
}

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    if let Some(x) = a.checked_mul(b) {
        return x % m;
    }
    // double-and-add fallback for moduli above 2^64
    let (mut a, mut b, mut acc) = (a % m, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

/// A_{L_n}(c) = (1/(f_n φ_n))·Σ_a [(a'_c c)^{φ_n} − a^{φ_n}]·(L_n/a) mod p^{n+1}.
///
/// `ln` may be L_n itself or any field whose modulus is f_n (each term is
/// pushed to the coset of a).
pub fn annihilator_measure(ln: &Arc<AbelianField>, c: u64, p: u64, n: u32) -> Result<GroupRingElement<IntMod>, StickelError> {
    let f_n = ln.modulus();
    let qpn = q_of(p) * ipow(p, n);
    if !f_n.is_multiple_of(qpn) {
        return Err(StickelError::Params(format!("modulus {f_n} is not a multiple of q p^n = {qpn}")));
    }
    if gcd(c, f_n) != 1 {
        return Err(StickelError::NotCoprime(c));
    }
    let ring = IntMod::new(p, n + 1);
    let pm = ring.modulus() as u128;
    let phi = phi_n(p, n);
    // the p-part of f_n·φ_n divides every term exactly; the rest is inverted mod p^{n+1}
    let denom = f_n as u128 * phi as u128;
    let vd = crate::fields::arith::vp(denom, p).expect("nonzero");
    let denom_p = (p as u128).pow(vd);
    let unit = ((denom / denom_p) % pm) as u64;
    let unit_inv = invmod(unit, pm as u64).expect("prime to p") as u128;
    let big = denom_p * pm;
    let cinv = invmod(c % f_n, f_n).expect("checked");
    let mut acc = vec![0u128; ln.degree()];
    for a in 1..=f_n {
        if gcd(a, f_n) != 1 {
            continue;
        }
        let mut ap = (a as u128 * cinv as u128) % f_n as u128;
        if ap == 0 {
            ap = f_n as u128;
        }
        let lhs = powmod_u128(ap * c as u128, phi, big);
        let rhs = powmod_u128(a as u128, phi, big);
        let t = (lhs + big - rhs) % big;
        if !t.is_multiple_of(denom_p) {
            return Err(StickelError::Inexact(format!("term at a = {a} not divisible by {denom_p}")));
        }
        let i = ln.coset(a).expect("unit");
        acc[i] = (acc[i] + (t / denom_p) % pm * unit_inv) % pm;
    }
    let coeffs = acc.into_iter().map(|x| x as u64).collect::<Vec<_>>();
    Ok(GroupRingElement::from_u64s(ln, ring, &coeffs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_one_is_zero() {
        let l = Arc::new(AbelianField::cyclotomic(45).unwrap());
        assert!(annihilator_measure(&l, 1, 3, 1).unwrap().is_zero());
        assert!(annihilator_measure(&l, 7, 3, 1).is_ok());
    }
}
