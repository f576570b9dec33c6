use num_bigint::BigUint;

use crate::fields::arith::{gcd, invmod, ipow, mulmod, mult_order, vp};

use super::{CycloElement, CycloError};

/// Precision consumed by divisions and series tails; results are trusted to M − GUARD.
pub const GUARD: u32 = 5;

/// log(1 + z) for z ≡ 0 mod p, summed until k − ⌊log_p k⌋ ≥ M.
pub fn log_series(v: &CycloElement) -> Result<CycloElement, CycloError> {
    let ring = v.ring();
    let p = ring.p();
    let m = ring.precision();
    let modulus = ring.modulus();
    let z = v.sub(&CycloElement::one(ring));
    let w = z.div_p_pow(1).map_err(|_| CycloError::NotPrincipal)?;
    let mut acc = CycloElement::zero(ring);
    let mut wk = w.clone();
    let mut k: u64 = 1;
    while (k as i64 - floor_log(k, p) as i64) < m as i64 {
        let s = vp(k as u128, p).unwrap_or(0);
        let kp = k / ipow(p, s);
        let e = (k as u32) - s;
        // coefficient (−1)^{k+1} p^{k−s} / k'
        let pe = if e >= m { 0 } else { ipow(p, e) };
        let mut c = mulmod(pe, invmod(kp % modulus, modulus).expect("unit"), modulus);
        if k.is_multiple_of(2) {
            c = (modulus - c) % modulus;
        }
        if c != 0 {
            acc = acc.add(&wk.scale(c));
        }
        k += 1;
        wk = wk.mul(&w);
    }
    Ok(acc)
}

fn floor_log(k: u64, p: u64) -> u32 {
    let mut x = k;
    let mut l = 0;
    while x >= p {
        x /= p;
        l += 1;
    }
    l
}

fn check_precision(u: &CycloElement) -> Result<(), CycloError> {
    if u.ring().precision() <= GUARD {
        return Err(CycloError::Precision(format!(
            "precision {} leaves nothing above the guard {GUARD}",
            u.ring().precision()
        )));
    }
    Ok(())
}

/// Iwasawa logarithm of a unit, computed with the Frobenius σ_p (requires p ∤ f).
///
/// With v = u^p / σ_p(u) ≡ 1 (mod p) and W = log v = (p − σ_p)·log u, one has
/// log u = −Σ_{k ≥ 0} p^k σ_p^{−(k+1)}(W).
pub fn iwasawa_log(u: &CycloElement) -> Result<CycloElement, CycloError> {
    check_precision(u)?;
    let ring = u.ring();
    let p = ring.p();
    let f = ring.conductor();
    if f > 1 && f.is_multiple_of(p) {
        return Err(CycloError::RamifiedPrime { p, f });
    }
    let frob = u.galois(p % f.max(1));
    let v = u.pow(p).mul(&frob.inv()?);
    let w = log_series(&v)?;
    let pinv = if f <= 1 { 0 } else { invmod(p % f, f).expect("p is a unit mod f") };
    let modulus = ring.modulus();
    let mut acc = CycloElement::zero(ring);
    let mut term = w.galois(pinv);
    let mut pk = 1u64;
    for _ in 0..ring.precision() {
        acc = acc.add(&term.scale(pk));
        term = term.galois(pinv);
        pk = mulmod(pk, p, modulus);
        if pk == 0 {
            break;
        }
    }
    Ok(acc.neg())
}

/// Iwasawa logarithm via the residue-ring exponent: (1/E)·log(u^E), E = p^{ord_f(p)} − 1.
/// For p = 2 an extra squaring is applied, so one 2-adic digit is lost.
pub fn iwasawa_log_by_exponent(u: &CycloElement) -> Result<CycloElement, CycloError> {
    check_precision(u)?;
    let ring = u.ring();
    let p = ring.p();
    let f = ring.conductor();
    if f > 1 && gcd(p, f) != 1 {
        return Err(CycloError::RamifiedPrime { p, f });
    }
    let ord = if f <= 2 { 1 } else { mult_order(p % f, f).expect("unit") };
    let e = BigUint::from(p).pow(ord as u32) - 1u32;
    let bits: Vec<bool> = (0..e.bits()).map(|i| e.bit(i)).collect();
    let mut ue = u.pow_bits(bits.into_iter());
    if p == 2 {
        ue = ue.mul(&ue);
    }
    let l = log_series(&ue)?;
    let modulus = ring.modulus();
    let e_mod = (&e % BigUint::from(modulus)).iter_u64_digits().next().unwrap_or(0);
    let einv = invmod(e_mod, modulus).expect("E is prime to p");
    let mut out = l.scale(einv);
    if p == 2 {
        out = out.div_p_pow(1)?;
    }
    Ok(out)
}
