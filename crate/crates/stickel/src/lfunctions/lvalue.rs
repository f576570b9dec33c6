use serde_json::{json, Value};

use crate::fields::arith::invmod;
use crate::fields::DirichletCharacter;
use crate::group_algebra::{CycloMod, NormValuation};
use crate::padic_cyclo::{iwasawa_log, BiCycloElement, BiCycloRing, CycloElement, CycloRing, GUARD};

use super::{cyclotomic_number, gauss_sum, LfError};

/// L_p(1, χ) = −(1 − χ(p)/p)·(τ(χ)/f_χ)·Σ_a χ⁻¹(a)·log(1 − ζ_{f_χ}^a), stored with its factors.
#[derive(Clone, Debug)]
pub struct LpValue {
    pub chi: DirichletCharacter,
    pub p: u64,
    /// the value is known modulo p^precision
    pub precision: u32,
    /// coefficients on 1, y, ..., y^{φ(d)−1}
    pub value: Vec<u64>,
    /// −(p − χ(p))
    pub euler: BiCycloElement,
    /// τ(χ)/f_χ
    pub gauss_over_f: BiCycloElement,
    /// (1/p)·Σ_{τ ∈ G_{k_χ}} χ⁻¹(τ)·log(η_{k_χ}^τ)
    pub log_sum_over_p: BiCycloElement,
    pub valuation: NormValuation,
}

impl LpValue {
    pub fn ring(&self) -> CycloMod {
        CycloMod::new(self.p, self.precision, self.chi.order())
    }

    /// Product of the three stored factors, reduced to the stored precision.
    pub fn recombine(&self) -> Result<Vec<u64>, LfError> {
        let prod = self.euler.mul(&self.gauss_over_f).mul(&self.log_sum_over_p);
        let pt = self.p.pow(self.precision);
        Ok(prod.x_constant(self.precision)?.iter().map(|c| c % pt).collect())
    }

    /// The first `digits` base-p digits of each y-coefficient.
    pub fn digits(&self, digits: u32) -> Vec<Vec<u64>> {
        let p = self.p;
        self.value
            .iter()
            .map(|&c| {
                let mut x = c;
                (0..digits.min(self.precision))
                    .map(|_| {
                        let d = x % p;
                        x /= p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "index": self.chi.index(),
            "f_chi": self.chi.conductor(),
            "d": self.chi.order(),
            "p": self.p,
            "precision": self.precision,
            "valuation": self.valuation.to_string(),
            "value": self.value,
            "value_digits_truncated": self.digits(self.precision),
        })
    }
}

/// L_p(1, χ) mod p^target for a nontrivial primitive χ with p ∤ f_χ.
pub fn lp_at_1(chi: &DirichletCharacter, p: u64, target: u32) -> Result<LpValue, LfError> {
    if chi.is_trivial() {
        return Err(LfError::TrivialCharacter);
    }
    let fc = chi.conductor();
    if fc.is_multiple_of(p) {
        return Err(LfError::Ramified { p, f: fc });
    }
    if target == 0 {
        return Err(LfError::Precision("target precision must be positive".into()));
    }
    let m = target + GUARD + 1;
    let base = CycloRing::new(fc, p, m)?;
    let d = chi.order();
    let bi = BiCycloRing::new(&base, d);

    let kchi = chi.kernel_field();
    let eta = cyclotomic_number(&kchi, &base)?;
    let log_eta = iwasawa_log(&eta)?;
    let mut comps = vec![CycloElement::zero(&base); d as usize];
    for &r in kchi.reps() {
        let e = chi.exp_at(r).expect("unit");
        let slot = ((d - e) % d) as usize;
        comps[slot] = comps[slot].add(&log_eta.galois(r));
    }
    let log_sum = BiCycloElement::from_y_poly(&bi, comps);
    let log_sum_over_p = log_sum.div_p_pow(1).map_err(|_| LfError::InexactDivision {
        divisor: p,
        valuation: log_sum.components().iter().map(|c| c.valuation()).min().unwrap_or(0),
    })?;

    let finv = invmod(fc % base.modulus(), base.modulus()).expect("p ∤ f_chi");
    let gauss_over_f = gauss_sum(chi, &base)?.scale(finv);

    let ep = chi.exp_at(p).expect("p ∤ f_chi");
    let one = CycloElement::one(&base);
    let euler = BiCycloElement::monomial(&bi, ep, &one).sub(&BiCycloElement::constant(&bi, &one.scale(p)));

    let prod = euler.mul(&gauss_over_f).mul(&log_sum_over_p);
    let pt = p.pow(target);
    let value: Vec<u64> = prod.x_constant(target)?.iter().map(|c| c % pt).collect();
    let valuation = CycloMod::new(p, target, d).norm_valuation(&value);
    Ok(LpValue { chi: chi.clone(), p, precision: target, value, euler, gauss_over_f, log_sum_over_p, valuation })
}

/// Shared by the tests of this module and of the reconstruction.
#[cfg(test)]
pub(crate) fn cubic(f: u64) -> std::sync::Arc<crate::fields::AbelianField> {
    use crate::fields::{build_field, FieldSpec};
    std::sync::Arc::new(build_field(&FieldSpec::cyclic_prime(f, 3)).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::characters_of;

    #[test]
    fn cubic_313_product_valuation() {
        let k = cubic(313);
        let chars = characters_of(&k);
        let l = lp_at_1(&chars[1], 7, 6).unwrap();
        assert_eq!(l.recombine().unwrap(), l.value);
        // the norm from Q(y) covers both nontrivial characters
        assert_eq!(l.valuation.finite(), Some(2));
        let lbar = lp_at_1(&chars[chars[1].conjugate_index()], 7, 6).unwrap();
        assert_eq!(l.ring().conjugate(&l.value, 2), lbar.value);
    }

    #[test]
    fn trivial_rejected() {
        let k = cubic(313);
        assert_eq!(lp_at_1(&characters_of(&k)[0], 7, 4).unwrap_err(), LfError::TrivialCharacter);
    }
}
