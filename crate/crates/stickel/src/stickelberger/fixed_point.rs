use crate::fields::arith::{prime_divisors, vp};
use crate::fields::{cyclotomic_layer, AbelianField};

use super::StickelError;

/// Data of one rational prime ℓ ∤ p ramified in K/k (shared by its g_k conjugates).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RamifiedPrime {
    pub l: u64,
    /// number of primes of k above ℓ
    pub primes_in_k: usize,
    pub nu: u32,
    pub phi: u32,
    pub gamma: u32,
    pub e: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FixedPoint {
    pub h: i64,
    pub r: u32,
    pub n0: u32,
    pub primes: Vec<RamifiedPrime>,
}

/// p-part exponent of q^{-1}·log_p(ℓ).
pub fn nu_exponent(l: u64, p: u64) -> u32 {
    let l = l as u128;
    if p == 2 {
        vp(l * l - 1, 2).expect("odd l") - 3
    } else {
        let mut x = 1u128;
        let m = (p as u128).pow(20);
        for _ in 0..(p - 1) {
            x = x * (l % m) % m;
        }
        vp((x + m - 1) % m, p).unwrap_or(20) - 1
    }
}

fn vp_usize(x: usize, p: u64) -> u32 {
    vp(x as u128, p).expect("nonzero")
}

/// h with #T_K^g = #T_k·p^h for a p-extension K/k.
pub fn fixed_point_h(big: &AbelianField, small: &AbelianField, p: u64) -> Result<FixedPoint, StickelError> {
    if !big.contains_field(small) {
        return Err(StickelError::Params(format!("{} is not a subfield of {}", small.label(), big.label())));
    }
    let rel = big.degree() / small.degree();
    let r = vp_usize(rel, p);
    if p.pow(r) as usize != rel {
        return Err(StickelError::Params(format!("[K:k] = {rel} is not a power of {p}")));
    }
    let n0 = cyclotomic_layer(big, p);
    let base = (n0 + r) as i64;
    let mut min = base;
    let mut sum_e = 0i64;
    let mut primes = Vec::new();
    for l in prime_divisors(big.modulus()) {
        if l == p {
            continue;
        }
        let (e_big, f_big, g_big) = big.splitting(l);
        let (e_small, _, g_small) = small.splitting(l);
        if e_big == e_small {
            continue;
        }
        let t = RamifiedPrime {
            l,
            primes_in_k: g_small,
            nu: nu_exponent(l, p),
            phi: vp_usize(f_big, p),
            gamma: vp_usize(g_big / g_small, p),
            e: vp_usize(e_big / e_small, p),
        };
        min = min.min((t.nu + t.phi + t.gamma) as i64);
        sum_e += t.e as i64 * g_small as i64;
        primes.push(t);
    }
    Ok(FixedPoint { h: min - base + sum_e, r, n0, primes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_values() {
        assert_eq!(nu_exponent(5, 2), 0);
        assert_eq!(nu_exponent(17, 2), 2);
        assert_eq!(nu_exponent(3, 7), 0);
        assert_eq!(nu_exponent(19, 7), 2);
    }
}
