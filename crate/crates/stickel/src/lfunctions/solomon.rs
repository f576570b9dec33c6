use std::sync::Arc;

use crate::fields::arith::{invmod, ipow, mulmod};
use crate::fields::{AbelianField, DirichletCharacter};
use crate::padic_cyclo::{iwasawa_log, BiCycloElement, BiCycloRing, CycloElement, CycloRing, GUARD};

use super::{cyclotomic_number, gauss_sum, LfError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Ψ_K = (1/p)·Σ_σ log(η_K^σ)·σ⁻¹
    Original,
    /// character values carry C_χ = −(1 − χ(p)/p)·τ(χ)/f_χ and equal L_p(1, χ)
    Modified,
}

/// Ψ_K with coefficients in Z_p[ζ_f]/p^precision.
#[derive(Clone, Debug)]
pub struct SolomonElement {
    pub field: Arc<AbelianField>,
    pub p: u64,
    pub precision: u32,
    pub normalization: Normalization,
    /// coefficient at coset i: (1/p)·log(η^{σ_i⁻¹})
    pub coeffs: Vec<CycloElement>,
}

pub fn solomon_element(
    k: &Arc<AbelianField>,
    p: u64,
    target: u32,
    normalization: Normalization,
) -> Result<SolomonElement, LfError> {
    let f = k.modulus();
    let ring = CycloRing::new(f, p, target + GUARD + 1)?;
    if f == 1 {
        let coeffs = vec![CycloElement::zero(&ring)];
        return Ok(SolomonElement { field: Arc::clone(k), p, precision: target, normalization, coeffs });
    }
    if f.is_multiple_of(p) {
        return Err(LfError::Ramified { p, f });
    }
    let eta = cyclotomic_number(k, &ring)?;
    let log = iwasawa_log(&eta)?;
    let base = log.div_p_pow(1).map_err(|_| LfError::InexactDivision { divisor: p, valuation: log.valuation() })?;
    let coeffs = (0..k.degree()).map(|i| base.galois(k.rep(k.inv(i)))).collect();
    Ok(SolomonElement { field: Arc::clone(k), p, precision: target, normalization, coeffs })
}

/// The Teichmüller lift of a mod p^m.
pub fn teichmuller(a: u64, p: u64, m: u32) -> u64 {
    let pm = ipow(p, m);
    let mut x = a % pm;
    for _ in 0..m {
        x = crate::fields::arith::powmod(x, p, pm);
    }
    x
}

impl SolomonElement {
    fn ring(&self) -> &Arc<CycloRing> {
        self.coeffs[0].ring()
    }

    /// Coefficient at ρ equals σ_ρ⁻¹ applied to the coefficient at 1.
    pub fn is_coherent(&self) -> bool {
        let k = &self.field;
        let one = &self.coeffs[k.identity()];
        (0..k.degree()).all(|i| self.coeffs[i] == one.galois(k.rep(k.inv(i))))
    }

    pub fn is_zero(&self) -> bool {
        let pt = ipow(self.p, self.precision);
        self.coeffs.iter().all(|c| c.coeffs().iter().all(|x| x % pt == 0))
    }

    /// Image under restriction to a subfield k: coefficient at τ is the sum over σ ↦ τ.
    pub fn norm_to(&self, k: &AbelianField) -> Result<Vec<CycloElement>, LfError> {
        let map = self.field.restriction_map(k)?;
        let mut out = vec![CycloElement::zero(self.ring()); k.degree()];
        for (i, &j) in map.iter().enumerate() {
            out[j] = out[j].add(&self.coeffs[i]);
        }
        Ok(out)
    }

    /// Σ_ρ χ(ρ)·Ψ_ρ, times C_χ for the modified normalization.
    pub fn character_value(&self, chi: &DirichletCharacter) -> Result<BiCycloElement, LfError> {
        let d = chi.order();
        let bi = BiCycloRing::new(self.ring(), d);
        let mut comps = vec![CycloElement::zero(self.ring()); d as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = chi.exp_on_coset(i) as usize;
            comps[e] = comps[e].add(c);
        }
        let v = BiCycloElement::from_y_poly(&bi, comps);
        match self.normalization {
            Normalization::Original => Ok(v),
            Normalization::Modified => {
                let f = self.field.modulus();
                if chi.conductor() != f {
                    return Err(LfError::Params(format!("C_chi needs f_chi = {f}, got {}", chi.conductor())));
                }
                let m = self.ring().modulus();
                let one = CycloElement::one(self.ring());
                let ep = chi.exp_at(self.p).expect("p ∤ f");
                let euler = BiCycloElement::monomial(&bi, ep, &one).sub(&BiCycloElement::constant(&bi, &one.scale(self.p)));
                let finv = invmod(f % m, m).expect("p ∤ f");
                let tau = gauss_sum(chi, self.ring())?.scale(finv);
                Ok(euler.mul(&tau).mul(&v))
            }
        }
    }

    /// Σ_j Ψ_{σ^j}·r^j for σ the coset `generator` and r ∈ Z/p^M.
    pub fn eval_cyclic(&self, generator: usize, r: u64) -> CycloElement {
        let k = &self.field;
        let m = self.ring().modulus();
        let mut acc = CycloElement::zero(self.ring());
        let (mut s, mut rk) = (k.identity(), 1 % m);
        for _ in 0..k.degree() {
            acc = acc.add(&self.coeffs[s].scale(rk));
            s = k.mul(s, generator);
            rk = mulmod(rk, r % m, m);
        }
        acc
    }

    /// Valuation of a value, capped at the trusted precision.
    pub fn valuation_of(&self, x: &CycloElement) -> u32 {
        x.valuation().min(self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::characters_of;
    use crate::lfunctions::{lp_at_1, lvalue::cubic};

    #[test]
    fn coherent_and_modified() {
        let k = cubic(313);
        let psi = solomon_element(&k, 7, 5, Normalization::Modified).unwrap();
        assert!(psi.is_coherent());
        let chars = characters_of(&k);
        let l = lp_at_1(&chars[1], 7, 5).unwrap();
        let v = psi.character_value(&chars[1]).unwrap().x_constant(5).unwrap();
        let pt = 7u64.pow(5);
        assert_eq!(v.iter().map(|x| x % pt).collect::<Vec<_>>(), l.value);
    }

    #[test]
    fn rational_field_is_zero() {
        let q = Arc::new(AbelianField::cyclotomic(1).unwrap());
        assert!(solomon_element(&q, 7, 3, Normalization::Original).unwrap().is_zero());
    }

    #[test]
    fn teichmuller_cube_root() {
        let r = teichmuller(4, 7, 3);
        assert_eq!(r, 18);
        assert_eq!(crate::fields::arith::powmod(r, 3, 343), 1);
    }
}
