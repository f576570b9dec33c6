use crate::fields::arith::gcd;
use crate::fields::{characters_of, AbelianField};
use crate::group_algebra::CycloMod;

use std::sync::Arc;

use super::StickelError;

/// Score of c: max over ψ ≠ 1 of v_p(N(1 − ψ(c))); `None` when some 1 − ψ(c) vanishes.
pub fn c_score(k: &Arc<AbelianField>, p: u64, c: u64) -> Result<Option<u32>, StickelError> {
    let ci = k.coset(c).ok_or(StickelError::NotCoprime(c))?;
    let mut worst = Some(0);
    for chi in characters_of(k) {
        if chi.is_trivial() {
            continue;
        }
        let d = chi.order();
        let ring = CycloMod::new(p, 1, d);
        let mut poly = vec![0i64; d as usize];
        poly[0] += 1;
        poly[chi.exp_on_coset(ci) as usize] -= 1;
        let v = ring.integer_poly_norm_valuation(&poly);
        worst = match (worst, v) {
            (Some(w), Some(v)) => Some(w.max(v)),
            _ => None,
        };
    }
    Ok(worst)
}

/// Least c ≤ bound, coprime to 2p·f_K, minimizing the character score.
pub fn best_c(k: &AbelianField, p: u64, bound: u64) -> Result<(u64, Option<u32>), StickelError> {
    let k = Arc::new(k.clone());
    let f = k.modulus();
    let mut best: Option<(u64, Option<u32>)> = None;
    for c in 2..=bound {
        if gcd(c, 2 * p * f) != 1 {
            continue;
        }
        let s = c_score(&k, p, c)?;
        let better = match (&best, s) {
            (None, _) => true,
            (Some((_, None)), Some(_)) => true,
            (Some((_, Some(b))), Some(v)) => v < *b,
            _ => false,
        };
        if better {
            best = Some((c, s));
            if s == Some(0) {
                break;
            }
        }
    }
    best.ok_or(StickelError::EmptySearch(bound))
}
