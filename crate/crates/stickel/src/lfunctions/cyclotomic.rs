use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::fields::arith::{gcd, invmod, prime_divisors};
use crate::fields::AbelianField;
use crate::padic_cyclo::{cyclotomic_polynomial, CycloElement, CycloRing};

use super::LfError;

/// η_K = Π_{a ∈ H} (1 − ζ_f^a) in Z[x]/(Φ_f, p^M), f the modulus of K.
pub fn cyclotomic_number(k: &AbelianField, ring: &Arc<CycloRing>) -> Result<CycloElement, LfError> {
    let f = k.modulus();
    if f == 1 {
        return Err(LfError::Params("the cyclotomic number needs f > 1".into()));
    }
    if ring.conductor() != f {
        return Err(LfError::Params(format!("ring conductor {} differs from f = {f}", ring.conductor())));
    }
    let m = ring.modulus();
    let id = k.identity();
    let fu = f as usize;
    let mut poly = vec![0u64; fu];
    poly[0] = 1;
    let mut next = vec![0u64; fu];
    for h in 1..f {
        if k.coset(h) != Some(id) {
            continue;
        }
        // multiply by 1 − x^h in Z/p^M[x]/(x^f − 1)
        let h = h as usize;
        next.copy_from_slice(&poly);
        for (i, &c) in poly.iter().enumerate() {
            if c != 0 {
                let j = (i + h) % fu;
                next[j] = (next[j] + m - c) % m;
            }
        }
        std::mem::swap(&mut poly, &mut next);
    }
    let eta = CycloElement::from_coeffs(ring, &poly);
    for &g in k.subgroup_generators() {
        assert!(eta.galois(g) == eta, "η is not fixed by H");
    }
    Ok(eta)
}

/// Both sides of N_{Q^f/Q^m}(1 − ζ_f) = (1 − ζ_m)^{Π_ℓ (1 − σ_ℓ⁻¹)} over ℓ | f, ℓ ∤ m,
/// cleared of denominators and reduced exactly in Z[x]/Φ_f with ζ_m = x^{f/m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaNormRelation {
    pub f: u64,
    pub m: u64,
    pub primes: Vec<u64>,
    /// N(1 − ζ_f)·Π_{|S| odd} σ_S⁻¹(1 − ζ_m)
    pub lhs: Vec<BigInt>,
    /// Π_{|S| even} σ_S⁻¹(1 − ζ_m)
    pub rhs: Vec<BigInt>,
    pub holds: bool,
}

struct ExactPoly {
    f: usize,
    c: Vec<BigInt>,
}

impl ExactPoly {
    fn one(f: usize) -> Self {
        let mut c = vec![BigInt::zero(); f];
        c[0] = BigInt::one();
        ExactPoly { f, c }
    }

    /// multiply by 1 − x^e modulo x^f − 1
    fn mul_one_minus(&mut self, e: u64) {
        let e = (e % self.f as u64) as usize;
        let old = self.c.clone();
        for (i, v) in old.iter().enumerate() {
            if !v.is_zero() {
                self.c[(i + e) % self.f] -= v;
            }
        }
    }

    fn reduce(&self, phi: &[i64]) -> Vec<BigInt> {
        let deg = phi.len() - 1;
        let mut r = self.c.clone();
        for k in (deg..r.len()).rev() {
            let t = r[k].clone();
            if t.is_zero() {
                continue;
            }
            for (i, &pc) in phi.iter().enumerate() {
                r[k - deg + i] -= &t * pc;
            }
        }
        r.truncate(deg);
        r
    }
}

pub fn eta_norm_relation(f: u64, m: u64) -> Result<EtaNormRelation, LfError> {
    if m <= 1 || !f.is_multiple_of(m) {
        return Err(LfError::Params(format!("need 1 < m | f, got f = {f}, m = {m}")));
    }
    let fu = f as usize;
    let mut lhs = ExactPoly::one(fu);
    for a in 1..f {
        if a % m == 1 % m && gcd(a, f) == 1 {
            lhs.mul_one_minus(a);
        }
    }
    let primes: Vec<u64> = prime_divisors(f).into_iter().filter(|l| !m.is_multiple_of(*l)).collect();
    let mut rhs = ExactPoly::one(fu);
    let step = f / m;
    for mask in 0u32..(1 << primes.len()) {
        let prod = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(1u64, |acc, (_, &l)| acc * (l % m) % m);
        let e = step * invmod(prod, m).expect("ℓ ∤ m");
        if mask.count_ones() % 2 == 1 {
            lhs.mul_one_minus(e);
        } else {
            rhs.mul_one_minus(e);
        }
    }
    let phi = cyclotomic_polynomial(f);
    let (lhs, rhs) = (lhs.reduce(&phi), rhs.reduce(&phi));
    let holds = lhs == rhs;
    Ok(EtaNormRelation { f, m, primes, lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_norms() {
        let ring = CycloRing::new(11, 5, 4).unwrap();
        let q = AbelianField::from_predicate(11, "Q", |_| true).unwrap();
        assert_eq!(cyclotomic_number(&q, &ring).unwrap(), CycloElement::scalar(&ring, 11));
        let ring = CycloRing::new(12, 5, 4).unwrap();
        let q = AbelianField::from_predicate(12, "Q", |_| true).unwrap();
        assert!(cyclotomic_number(&q, &ring).unwrap().is_one());
    }

    #[test]
    fn norm_relations() {
        for (f, m) in [(55, 5), (35, 5), (20, 5), (25, 5), (21, 7), (60, 12), (105, 15)] {
            assert!(eta_norm_relation(f, m).unwrap().holds, "f={f} m={m}");
        }
    }
}
