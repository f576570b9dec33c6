//! Σ λ^n_a(c)·a^{-1}·(K/a) over a long range of a, by coset of K.

use rayon::prelude::*;

use crate::fields::arith::{gcd, invmod, ipow, prime_divisors};
use crate::fields::AbelianField;

use super::StickelError;

const CHUNK: u64 = 1 << 21;
const NONUNIT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopRange {
    /// a ∈ [1, f_n]
    Full,
    /// a ∈ [1, f_n/2]
    Half,
}

impl LoopRange {
    pub fn upper(self, f_n: u64) -> u64 {
        match self {
            LoopRange::Full => f_n,
            LoopRange::Half => f_n / 2,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            LoopRange::Full => "full",
            LoopRange::Half => "half",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LambdaSum {
    pub f_n: u64,
    pub c: u64,
    pub p: u64,
    pub m: u32,
    pub range: LoopRange,
}

impl LambdaSum {
    fn check(&self, k: &AbelianField) -> Result<(), StickelError> {
        let f_n = self.f_n;
        if !f_n.is_multiple_of(k.modulus()) || !f_n.is_multiple_of(self.p) {
            return Err(StickelError::Params(format!(
                "f_n = {f_n} must be divisible by p = {} and f_K = {}",
                self.p,
                k.modulus()
            )));
        }
        let fk = k.modulus();
        if prime_divisors(f_n).iter().any(|&l| l != self.p && !fk.is_multiple_of(l)) {
            return Err(StickelError::Params(format!("f_n = {f_n} has a prime outside p·f_K")));
        }
        if gcd(self.c, f_n) != 1 {
            return Err(StickelError::NotCoprime(self.c));
        }
        let pm = ipow(self.p, self.m) as u128;
        if (self.c as u128) * pm >= 1u128 << 62 {
            return Err(StickelError::Params("c·p^M too large for 64-bit accumulation".into()));
        }
        Ok(())
    }
}

/// λ-state at `a`: (a'_c ∈ [1, f_n], λ).
fn state_at(a: u64, c: u64, cinv: u64, f_n: u64) -> (u64, u64) {
    let mut ap = ((a as u128 * cinv as u128) % f_n as u128) as u64;
    if ap == 0 {
        ap = f_n;
    }
    let num = ap as u128 * c as u128 - a as u128;
    assert_eq!(num % f_n as u128, 0, "λ not integral at a = {a}");
    (ap, (num / f_n as u128) as u64)
}

/// Λ_σ = Σ_{(K/a) = σ} λ_a(c)·a^{-1} mod p^M, indexed by coset of K.
pub fn lambda_sum(k: &AbelianField, params: &LambdaSum) -> Result<Vec<u64>, StickelError> {
    params.check(k)?;
    let LambdaSum { f_n, c, p, m, range } = *params;
    let pm = ipow(p, m);
    let fk = k.modulus();
    let inv: Vec<u64> = (0..pm).map(|r| if r % p == 0 { 0 } else { invmod(r, pm).unwrap() }).collect();
    let cosets = k.coset_table();
    let cinv = invmod(c % f_n, f_n).expect("checked");
    let k0 = ((cinv as u128 * c as u128 - 1) / f_n as u128) as u64;
    let flush = ((u64::MAX / 2) / (c * pm).max(1)).max(1);
    let d = k.degree();
    let upper = range.upper(f_n);
    let n_chunks = upper.div_ceil(CHUNK);

    let acc = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * CHUNK + 1;
            let hi = ((ci + 1) * CHUNK).min(upper);
            let mut acc = vec![0u64; d];
            let (mut ap, mut lam) = state_at(lo, c, cinv, f_n);
            let mut r_pm = lo % pm;
            let mut r_fk = lo % fk;
            let mut count = 0u64;
            for _ in lo..=hi {
                let cos = cosets[r_fk as usize];
                let iv = inv[r_pm as usize];
                if cos != NONUNIT && iv != 0 {
                    acc[cos as usize] += lam * iv;
                    count += 1;
                    if count == flush {
                        acc.iter_mut().for_each(|x| *x %= pm);
                        count = 0;
                    }
                }
                ap += cinv;
                lam += k0;
                if ap > f_n {
                    ap -= f_n;
                    lam -= c;
                }
                r_pm += 1;
                if r_pm == pm {
                    r_pm = 0;
                }
                r_fk += 1;
                if r_fk == fk {
                    r_fk = 0;
                }
            }
            if hi < f_n {
                assert_eq!((ap, lam), state_at(hi + 1, c, cinv, f_n), "λ drift in chunk {ci}");
            }
            acc.iter_mut().for_each(|x| *x %= pm);
            acc
        })
        .reduce(
            || vec![0u64; d],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = (*x + y) % pm;
                }
                a
            },
        );
    Ok(acc)
}

/// Direct evaluation of the same sum, one modular inverse per term.
pub fn lambda_sum_naive(k: &AbelianField, params: &LambdaSum) -> Result<Vec<u64>, StickelError> {
    params.check(k)?;
    let LambdaSum { f_n, c, p, m, range } = *params;
    let pm = ipow(p, m);
    let mut acc = vec![0u64; k.degree()];
    for a in 1..=range.upper(f_n) {
        if gcd(a, f_n) != 1 {
            continue;
        }
        let lam = super::lambda_coeff(a, c, f_n)?;
        let iv = invmod(a % pm, pm).expect("unit");
        let i = k.coset(a).expect("unit");
        acc[i] = ((acc[i] as u128 + lam as u128 * iv as u128) % pm as u128) as u64;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::arith::powmod;

    #[test]
    fn incremental_matches_naive() {
        let k = AbelianField::from_predicate(313, "cubic", |a| powmod(a, 104, 313) == 1).unwrap();
        for (c, range) in [(11u64, LoopRange::Half), (57, LoopRange::Full)] {
            let params = LambdaSum { f_n: 313 * 49, c, p: 7, m: 2, range };
            assert_eq!(lambda_sum(&k, &params).unwrap(), lambda_sum_naive(&k, &params).unwrap());
        }
    }
}
