use std::sync::Arc;

use crate::fields::arith::gcd;
use crate::fields::DirichletCharacter;
use crate::padic_cyclo::{BiCycloElement, BiCycloRing, CycloElement, CycloRing};

use super::LfError;

/// τ(χ) = Σ_{(a, f_χ) = 1} χ(a)·ζ_{f_χ}^a in (Z[x]/(Φ_{f_χ}, p^M))[y]/Φ_d.
pub fn gauss_sum(chi: &DirichletCharacter, base: &Arc<CycloRing>) -> Result<BiCycloElement, LfError> {
    if chi.is_trivial() {
        return Err(LfError::TrivialCharacter);
    }
    let fc = chi.conductor();
    if base.conductor() != fc {
        return Err(LfError::Params(format!("ring conductor {} differs from f_chi = {fc}", base.conductor())));
    }
    if !chi.certify_conductor() {
        return Err(LfError::NotPrimitive(fc));
    }
    let d = chi.order();
    let fu = fc as usize;
    let mut comps = vec![vec![0u64; fu]; d as usize];
    for a in 1..fc {
        if gcd(a, fc) != 1 {
            continue;
        }
        let e = chi.exp_at(a).expect("unit") as usize;
        comps[e][a as usize] += 1;
    }
    let ring = BiCycloRing::new(base, d);
    let comps = comps.iter().map(|v| CycloElement::from_coeffs(base, v)).collect();
    Ok(BiCycloElement::from_y_poly(&ring, comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{characters_of, AbelianField};
    use crate::padic_cyclo::BiCycloElement;

    fn chars(f: u64, pred: impl Fn(u64) -> bool) -> Vec<DirichletCharacter> {
        characters_of(&Arc::new(AbelianField::from_predicate(f, "k", pred).unwrap()))
    }

    #[test]
    fn quadratic_mod_5() {
        let chi = chars(5, |a| a == 1 || a == 4)[1].clone();
        let base = CycloRing::new(5, 11, 4).unwrap();
        let t = gauss_sum(&chi, &base).unwrap();
        assert_eq!(t.mul(&t).x_constant(4).unwrap(), vec![5]);
    }

    #[test]
    fn conjugate_product() {
        // a real cubic and an imaginary quartic field of conductor 13
        let fields: [Box<dyn Fn(u64) -> bool>; 2] =
            [Box::new(|a| [1, 5, 8, 12].contains(&a)), Box::new(|a| [1, 3, 9].contains(&a))];
        let base = CycloRing::new(13, 5, 4).unwrap();
        let m = base.modulus() as i64;
        for pred in fields {
            let all = chars(13, pred);
            for chi in all.iter().filter(|c| !c.is_trivial()) {
                let t = gauss_sum(chi, &base).unwrap();
                let tb = gauss_sum(&all[chi.conjugate_index()], &base).unwrap();
                let sign = if chi.exp_at(12).unwrap() == 0 { 1 } else { -1 };
                let want = CycloElement::scalar(&base, (sign * 13i64).rem_euclid(m) as u64);
                assert_eq!(t.mul(&tb), BiCycloElement::constant(t.ring(), &want));
            }
        }
    }

    #[test]
    fn trivial_rejected() {
        let chi = chars(5, |a| a == 1 || a == 4)[0].clone();
        let base = CycloRing::new(1, 11, 4).unwrap();
        assert_eq!(gauss_sum(&chi, &base).unwrap_err(), LfError::TrivialCharacter);
    }
}
