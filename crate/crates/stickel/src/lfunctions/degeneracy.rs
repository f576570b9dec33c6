use std::sync::Arc;

use serde::Serialize;

use crate::fields::arith::{dlog_bsgs, is_prime, jacobi, primitive_root};
use crate::fields::AbelianField;
use crate::group_algebra::IntMod;
use crate::padic_cyclo::{CycloElement, CycloRing, GUARD};
use crate::stickelberger::{annihilator_a, euler_factor_mod, Recipe};

use super::{cyclotomic_number, solomon_element, LfError, Normalization};

/// K = kernel of χ_m^{(4)}·χ_ℓ^{(2)} (real cyclic quartic of conductor mℓ) over k = Q(√m).
#[derive(Clone, Debug)]
pub struct DegeneracyInstance {
    pub m: u64,
    pub l: u64,
    pub big: Arc<AbelianField>,
    /// k at the modulus of K
    pub small: Arc<AbelianField>,
    /// k at its conductor m
    pub small_conductor: Arc<AbelianField>,
}

/// m ≡ 5 (mod 8) and ℓ ≡ 3 (mod 4) primes with (m/ℓ) = 1, so ℓ splits in k and ramifies in K/k.
pub fn degenerate_quartic(m: u64, l: u64) -> Result<DegeneracyInstance, LfError> {
    if !is_prime(m) || m % 8 != 5 || !is_prime(l) || l % 4 != 3 || jacobi(m as i64, l) != 1 {
        return Err(LfError::Params(format!("(m, l) = ({m}, {l}) needs m ≡ 5 mod 8, l ≡ 3 mod 4 primes, (m/l) = 1")));
    }
    let f = m * l;
    let (gm, gl) = (primitive_root(m).expect("prime"), primitive_root(l).expect("prime"));
    let ind = |g: u64, a: u64, q: u64| dlog_bsgs(g, a % q, q - 1, q).expect("unit");
    let big = AbelianField::from_predicate(f, format!("K({m}*{l})"), |a| (ind(gm, a, m) + 2 * ind(gl, a, l)) % 4 == 0)?;
    let small = AbelianField::from_predicate(f, format!("Q(sqrt {m})"), |a| ind(gm, a, m) % 2 == 0)?;
    let small_conductor = AbelianField::from_predicate(m, format!("Q(sqrt {m})"), |a| ind(gm, a, m) % 2 == 0)?;
    Ok(DegeneracyInstance { m, l, big: Arc::new(big), small: Arc::new(small), small_conductor: Arc::new(small_conductor) })
}

/// All admissible (m, ℓ) with mℓ ≤ bound.
pub fn degenerate_pairs(bound: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for m in (5..=bound / 3).step_by(8).filter(|&m| is_prime(m)) {
        for l in (3..=bound / m).step_by(4).filter(|&l| is_prime(l)) {
            if jacobi(m as i64, l) == 1 {
                out.push((m, l));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyReport {
    pub m: u64,
    pub l: u64,
    pub p: u64,
    /// N_{K/k}(η_K) = 1 at the working precision
    pub eta_norm_is_one: bool,
    pub psi_nonzero: bool,
    /// the image of Ψ_K in Z_p[ζ_f][G_k] vanishes modulo p^target
    pub psi_norm_zero: bool,
    /// euler_factor(k, ℓ) = 1 − ℓ⁻¹ (σ_ℓ trivial on k) is a p-adic unit
    pub euler_unit: bool,
    /// v_p of ψ(A_k(c)) at the nontrivial character, if nonzero mod p^{n+1}
    pub a_k_valuation: Option<u32>,
}

impl DegeneracyReport {
    pub fn degenerate(&self) -> bool {
        self.eta_norm_is_one && self.psi_nonzero && self.psi_norm_zero && self.euler_unit && self.a_k_valuation.is_some()
    }
}

pub fn degeneracy_check(inst: &DegeneracyInstance, p: u64, target: u32, n: u32) -> Result<DegeneracyReport, LfError> {
    let (k_big, k_small) = (&inst.big, &inst.small);
    let f = k_big.modulus();
    if f % p == 0 || p == 2 {
        return Err(LfError::Params(format!("p = {p} must be odd and prime to {f}")));
    }
    let ring = CycloRing::new(f, p, target + GUARD + 1)?;
    let eta = cyclotomic_number(k_big, &ring)?;
    let map = k_big.restriction_map(k_small)?;
    let rel = (0..k_big.degree()).find(|&i| i != k_big.identity() && map[i] == k_small.identity()).expect("[K:k] = 2");
    let norm = eta.mul(&eta.galois(k_big.rep(rel)));
    let eta_norm_is_one = norm == CycloElement::one(&ring);

    let psi = solomon_element(k_big, p, target, Normalization::Original)?;
    let pt = p.pow(target);
    let psi_norm_zero = psi.norm_to(k_small)?.iter().all(|c| c.coeffs().iter().all(|x| x % pt == 0));

    let int = IntMod::new(p, n + 1);
    let (euler, _) = euler_factor_mod(&inst.small_conductor, inst.l, int)?;
    let id = inst.small_conductor.identity();
    let euler_unit = euler.coeffs().iter().enumerate().all(|(i, c)| (i == id) == (*c != 0))
        && int.valuation(*euler.coeff(id)) == 0;

    let a_k = annihilator_a(&inst.small_conductor, p, None, n, Recipe::Generic)?;
    let a_k_valuation = a_k.per_character.first().and_then(|c| {
        let v = c.image.iter().map(|&x| int.valuation(x % int.modulus())).min().unwrap_or(n + 1);
        (v <= n).then_some(v)
    });
    Ok(DegeneracyReport {
        m: inst.m,
        l: inst.l,
        p,
        eta_norm_is_one,
        psi_nonzero: !psi.is_zero(),
        psi_norm_zero,
        euler_unit,
        a_k_valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_eleven() {
        let inst = degenerate_quartic(5, 11).unwrap();
        assert_eq!(inst.big.degree(), 4);
        assert!(inst.big.is_real() && inst.big.is_cyclic());
        assert_eq!(inst.big.conductor(), 55);
        let r = degeneracy_check(&inst, 13, 3, 1).unwrap();
        assert!(r.degenerate(), "{r:?}");
    }

    #[test]
    fn pairs_are_admissible() {
        let pairs = degenerate_pairs(400);
        assert!(pairs.contains(&(5, 11)) && pairs.contains(&(13, 3)));
        assert!(!pairs.contains(&(5, 3)));
    }
}
