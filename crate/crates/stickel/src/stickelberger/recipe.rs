use std::fmt;
use std::str::FromStr;

use crate::fields::arith::{dlog_bsgs, factor, gcd, invmod, ipow, is_prime, kronecker, lcm, powmod, primitive_root};
use crate::fields::{conductor_ln, AbelianField};

use super::hotloop::LoopRange;
use super::StickelError;

/// Frozen per-table program presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Recipe {
    /// cyclic cubic of prime conductor, p ≡ 1 (mod 3)
    CubicOddP,
    /// cyclic cubic of prime conductor, p = 2
    CubicP2,
    QuadraticP2,
    /// real quadratic, p odd
    QuadraticOddP,
    /// cyclic quartic of prime conductor, p = 2
    QuarticPrimeP2,
    /// cyclic quartic of conductor q·q', p = 2
    QuarticCompositeP2,
    /// f_n = lcm(f_K, q p^n), modulus p^{n+1}, full loop
    Generic,
}

impl Recipe {
    pub const ALL: [Recipe; 7] = [
        Recipe::CubicOddP,
        Recipe::CubicP2,
        Recipe::QuadraticP2,
        Recipe::QuadraticOddP,
        Recipe::QuarticPrimeP2,
        Recipe::QuarticCompositeP2,
        Recipe::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::CubicOddP => "cubic-p1mod3",
            Recipe::CubicP2 => "cubic-p2",
            Recipe::QuadraticP2 => "quadratic-p2",
            Recipe::QuadraticOddP => "quadratic-odd",
            Recipe::QuarticPrimeP2 => "quartic-prime-p2",
            Recipe::QuarticCompositeP2 => "quartic-composite-p2",
            Recipe::Generic => "generic",
        }
    }

    /// The preset matching a field of this degree and conductor shape, if any.
    pub fn default_for(k: &AbelianField, p: u64) -> Recipe {
        let f = k.modulus();
        match (k.degree(), p) {
            (3, 2) if is_prime(f) => Recipe::CubicP2,
            (3, p) if is_prime(f) && p % 3 == 1 => Recipe::CubicOddP,
            (2, 2) => Recipe::QuadraticP2,
            (2, _) => Recipe::QuadraticOddP,
            (4, 2) if is_prime(f) && k.is_cyclic() => Recipe::QuarticPrimeP2,
            (4, 2) if composite_primes(f).is_ok() && k.is_cyclic() => Recipe::QuarticCompositeP2,
            _ => Recipe::Generic,
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = StickelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Recipe::ALL
            .into_iter()
            .find(|r| r.name() == s.trim())
            .ok_or_else(|| StickelError::Params(format!("unknown recipe '{s}'")))
    }
}

/// Largest p^M for which the inverse table is built.
pub const MAX_PM: u64 = 1 << 24;

/// Everything the hot loop and the table columns need.
#[derive(Clone, Debug)]
pub struct RecipeSetup {
    pub recipe: Recipe,
    pub p: u64,
    pub ex: u32,
    /// coefficients live in Z/p^m
    pub m: u32,
    pub f_n: u64,
    pub c: u64,
    pub range: LoopRange,
    /// coset index of σ for the printed ordering L0 + L1σ + ...
    pub generator: Option<usize>,
}

/// (q, q') with v₂(q − 1) = 2 and q' ≡ 1 (mod 8).
pub fn composite_primes(f: u64) -> Result<(u64, u64), StickelError> {
    let fac = factor(f);
    if fac.len() != 2 || fac.iter().any(|&(_, e)| e != 1) {
        return Err(StickelError::Params(format!("{f} is not a product of two primes")));
    }
    let (a, b) = (fac[0].0, fac[1].0);
    let kind = |q: u64| (q % 8 == 5, q % 8 == 1);
    match (kind(a), kind(b)) {
        ((true, _), (_, true)) => Ok((a, b)),
        ((_, true), (true, _)) => Ok((b, a)),
        _ => Err(StickelError::Params(format!("{f} = {a}·{b} is not of the form q·q' with q ≡ 5, q' ≡ 1 (mod 8)"))),
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), StickelError> {
    if cond {
        Ok(())
    } else {
        Err(StickelError::Params(msg()))
    }
}

/// c = z + t·f with t ≡ (1 − z)/f (mod modulus), z the least primitive root.
fn primroot_c(f: u64, modulus: u64) -> (u64, u64) {
    let z = primitive_root(f).expect("prime conductor");
    let finv = invmod(f % modulus, modulus).expect("f prime to the modulus");
    let one_minus_z = (modulus as i128 + 1 - (z % modulus) as i128).rem_euclid(modulus as i128) as u64;
    let t = one_minus_z * finv % modulus;
    (z, z + t * f)
}

fn least_nonresidue_c(f: u64, p: u64) -> Result<u64, StickelError> {
    (2..=100)
        .find(|&cc| gcd(cc, p * f) == 1 && kronecker(f as i64, cc) == -1)
        .ok_or_else(|| StickelError::Params(format!("no multiplier below 100 for f = {f}")))
}

/// Resolve a recipe against a field: modulus, level, loop range, multiplier and σ.
pub fn setup(
    recipe: Recipe,
    k: &AbelianField,
    p: u64,
    ex: u32,
    c_override: Option<u64>,
) -> Result<RecipeSetup, StickelError> {
    let f = k.modulus();
    let d = k.degree();
    require(is_prime(p), || format!("{p} is not prime"))?;
    require(k.is_real(), || "annihilators need a real field".into())?;
    // every recipe uses m ≤ ex + 2 and f_n | f·p^m·(small cofactor)
    let fits = p
        .checked_pow(ex + 2)
        .filter(|&pm| pm <= MAX_PM)
        .and_then(|pm| pm.checked_mul(f))
        .and_then(|x| x.checked_mul(4));
    if fits.is_none() {
        return Err(StickelError::Precision(format!("{p}^{} exceeds the supported level", ex + 2)));
    }
    let nontrivial = || (0..d).find(|&i| i != k.identity());
    let (m, f_n, range, c_rule, generator) = match recipe {
        Recipe::CubicOddP | Recipe::CubicP2 | Recipe::QuarticPrimeP2 => {
            let want_d = if recipe == Recipe::QuarticPrimeP2 { 4 } else { 3 };
            require(d == want_d && is_prime(f) && k.is_cyclic(), || {
                format!("{recipe} needs a cyclic field of degree {want_d} and prime conductor")
            })?;
            match recipe {
                Recipe::CubicOddP => require(p % 3 == 1, || format!("{recipe} needs p ≡ 1 (mod 3)"))?,
                _ => require(p == 2, || format!("{recipe} needs p = 2"))?,
            }
            let m = if p == 2 { 2 + ex } else { 1 + ex };
            let modulus = if recipe == Recipe::CubicOddP { 2 * p } else { p };
            let (z, c) = primroot_c(f, modulus);
            let zc = k.coset(z).expect("unit");
            let (range, gen) = match recipe {
                Recipe::QuarticPrimeP2 => (LoopRange::Full, k.inv(zc)),
                _ => (LoopRange::Half, zc),
            };
            (m, ipow(p, m) * f, range, c, Some(gen))
        }
        Recipe::QuadraticP2 | Recipe::QuadraticOddP => {
            require(d == 2, || format!("{recipe} needs a quadratic field"))?;
            require((p == 2) == (recipe == Recipe::QuadraticP2), || format!("{recipe} does not apply to p = {p}"))?;
            let m = if p == 2 { 2 + ex } else { 1 + ex };
            let pm = ipow(p, m);
            let f_n = if p == 2 { lcm(f, pm) } else { pm * f };
            (m, f_n, LoopRange::Half, least_nonresidue_c(f, p)?, nontrivial())
        }
        Recipe::QuarticCompositeP2 => {
            require(d == 4 && k.is_cyclic() && p == 2, || format!("{recipe} needs a cyclic quartic field and p = 2"))?;
            let (q, qq) = composite_primes(f)?;
            let z = primitive_root(q).expect("prime");
            let zz = primitive_root(qq).expect("prime");
            let c = (3..=f)
                .find(|&cc| {
                    gcd(cc, p * f) == 1
                        && powmod(cc * z % q, (q - 1) / 2, q) == 1
                        && powmod(cc * zz % qq, (qq - 1) / 4, qq) == 1
                })
                .ok_or_else(|| StickelError::Params("no admissible multiplier".into()))?;
            // σ: a ≡ z'^3 (mod q'), a ≡ 1 (mod q)
            let target = powmod(zz, 3, qq);
            let rep = (0..q).map(|t| target + t * qq).find(|a| a % q == 1).expect("CRT");
            let gen = k.coset(rep).expect("unit");
            let check = |a: u64| -> u64 {
                let iq = dlog_bsgs(z, a % q, q - 1, q).unwrap();
                let iqq = dlog_bsgs(zz, a % qq, qq - 1, qq).unwrap();
                (4 - (iqq + 2 * iq) % 4) % 4
            };
            if k.order_of(gen) != 4 || check(rep) != 1 {
                return Err(StickelError::Params(format!("field of conductor {f} is not the q·q' quartic family member")));
            }
            let m = 2 + ex;
            (m, ipow(2, m) * f, LoopRange::Half, c, Some(gen))
        }
        Recipe::Generic => {
            let m = ex + 1;
            let f_n = conductor_ln(f, p, ex);
            let c = match c_override {
                Some(c) => c,
                None => super::best_c(k, p, 200)?.0,
            };
            (m, f_n, LoopRange::Full, c, k.cyclic_generator())
        }
    };
    let c = c_override.unwrap_or(c_rule);
    if c.is_multiple_of(2) || gcd(c, p * f) != 1 || gcd(c, f_n) != 1 {
        return Err(StickelError::NotCoprime(c));
    }
    Ok(RecipeSetup { recipe, p, ex, m, f_n, c, range, generator })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for r in Recipe::ALL {
            assert_eq!(r.name().parse::<Recipe>().unwrap(), r);
        }
        assert!("cubic".parse::<Recipe>().is_err());
    }

    #[test]
    fn composite_order() {
        assert_eq!(composite_primes(5 * 73).unwrap(), (5, 73));
        assert_eq!(composite_primes(17 * 29).unwrap(), (29, 17));
        assert!(composite_primes(7 * 17).is_err());
    }

    #[test]
    fn primroot_rule() {
        let (z, c) = primroot_c(313, 14);
        assert_eq!(z, 10);
        assert_eq!(c % 313, 10);
        assert_eq!(c % 14, 1);
    }
}
