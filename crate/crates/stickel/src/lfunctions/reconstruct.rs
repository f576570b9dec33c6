use std::sync::Arc;

use crate::fields::arith::{gcd, invmod, ipow, prime_divisors, vp};
use crate::fields::{characters_of, AbelianField, DirichletCharacter};
use crate::group_algebra::{wt_equiv, wt_equiv_with, CoeffRing, GroupRingElement, IntMod, Relation};
use crate::stickelberger::{annihilator_a, annihilator_measure, euler_char_value, Recipe};

use super::{character_orbits, lp_at_1, LfError, LpValue};

/// A_K(c) rebuilt from X_χ = (1 − χ(c))·Π_ℓ (1 − χ(ℓ)/ℓ)·L_p(1, χ) by Fourier inversion over χ ≠ 1.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub element: GroupRingElement<IntMod>,
    pub c: u64,
    /// X_χ for every character (empty for the trivial one), modulo p^work_precision
    pub x_values: Vec<Vec<u64>>,
    pub work_precision: u32,
    pub lvalues: Vec<LpValue>,
}

/// j with χ' = χ^j, searched among exponents prime to the order.
fn power_relating(rep: &DirichletCharacter, other: &DirichletCharacter) -> Option<u64> {
    let d = rep.order();
    (1..d).filter(|&j| gcd(j, d) == 1).find(|&j| {
        rep.exps().iter().zip(other.exps()).all(|(&a, &b)| a * j % d == b)
    })
}

/// X_χ = (1 − χ(c))·Euler_χ·L_p(1, χ) for a class representative.
fn x_value(k: &AbelianField, chi: &DirichletCharacter, l: &LpValue, c: u64) -> Vec<u64> {
    let ring = l.ring();
    let ec = chi.exp_on_coset(k.coset(c).expect("c is a unit"));
    let mut x = ring.mul(&ring.sub(&ring.one(), &ring.y_pow(ec)), &l.value);
    for ell in prime_divisors(k.modulus()) {
        if ell == l.p || chi.conductor().is_multiple_of(ell) {
            continue;
        }
        x = ring.mul(&x, &euler_char_value(chi, ell, &ring));
    }
    x
}

/// Reconstruction modulo p^{n+1} for a real field K.
pub fn reconstruct_annihilator(k: &Arc<AbelianField>, p: u64, c: u64, n: u32) -> Result<Reconstruction, LfError> {
    if !k.is_real() {
        return Err(LfError::Params(format!("{} is not real", k.label())));
    }
    if gcd(c, p * k.modulus()) != 1 {
        return Err(LfError::Params(format!("c = {c} is not prime to p·f_K")));
    }
    let d = k.degree() as u64;
    let vd = vp(d as u128, p).unwrap_or(0);
    let work = n + 1 + vd;
    let chars = characters_of(k);
    let mut x_values = vec![Vec::new(); chars.len()];
    let mut lvalues = Vec::new();
    let pw = ipow(p, work);
    let mut sums = vec![0u64; k.degree()];
    for class in character_orbits(&chars) {
        let rep = &chars[class[0]];
        let l = lp_at_1(rep, p, work)?;
        let ring = l.ring();
        let x = x_value(k, rep, &l, c);
        for (i, s) in sums.iter_mut().enumerate() {
            // Σ over the class of χ⁻¹(σ_i)·X_χ is the trace of y^{−e}·X
            let e = (rep.order() - rep.exp_on_coset(i)) % rep.order();
            *s = (*s + ring.trace(&ring.mul(&ring.y_pow(e), &x))) % pw;
        }
        for &j in &class {
            let t = power_relating(rep, &chars[j]).expect("class members are conjugate");
            x_values[j] = ring.conjugate(&x, t);
        }
        lvalues.push(l);
    }
    let pv = ipow(p, vd);
    if let Some(bad) = sums.iter().find(|&&s| s % pv != 0) {
        return Err(LfError::InexactDivision { divisor: d, valuation: vp(*bad as u128, p).unwrap_or(work) });
    }
    let out = IntMod::new(p, n + 1);
    let unit = d / pv;
    let uinv = invmod(unit % out.modulus(), out.modulus()).expect("unit part");
    let coeffs: Vec<u64> = sums.iter().map(|&s| out.mul(&((s / pv) % out.modulus()), &uinv)).collect();
    let element = GroupRingElement::from_u64s(k, out, &coeffs)?;
    Ok(Reconstruction { element, c, x_values, work_precision: work, lvalues })
}

/// ψ(A) from the λ-sum against X_ψ, modulo p^{n+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterCheck {
    pub index: usize,
    pub image: Vec<u64>,
    pub x_value: Vec<u64>,
    pub agree: bool,
}

/// Three-way comparison: λ-sum annihilator, measure-style A_{L_n}(c) restricted to K, and the reconstruction.
#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub p: u64,
    pub n: u32,
    pub c: u64,
    pub lambda: GroupRingElement<IntMod>,
    pub measure: GroupRingElement<IntMod>,
    pub reconstruction: Reconstruction,
    pub lambda_vs_measure: bool,
    pub lambda_vs_reconstruction: bool,
    pub measure_vs_reconstruction: bool,
    pub characters: Vec<CharacterCheck>,
}

impl CrosscheckReport {
    pub fn all_agree(&self) -> bool {
        self.lambda_vs_measure
            && self.lambda_vs_reconstruction
            && self.measure_vs_reconstruction
            && self.characters.iter().all(|c| c.agree)
    }
}

pub fn crosscheck(k: &Arc<AbelianField>, p: u64, c: Option<u64>, n: u32) -> Result<CrosscheckReport, LfError> {
    let report = annihilator_a(k, p, c, n, Recipe::Generic)?;
    let c = report.setup.c;
    let lambda = report.coeffs.truncate(n + 1);
    let ln = Arc::new(k.ln_field(p, n)?);
    let measure = annihilator_measure(&ln, c, p, n)?.restrict(k)?;
    let reconstruction = reconstruct_annihilator(k, p, c, n)?;
    let rec = &reconstruction.element;
    let rel = [Relation::Norm];
    let pn = ipow(p, n + 1);
    let mut characters = Vec::new();
    for chi in characters_of(k).iter().filter(|c| !c.is_trivial()) {
        let (_, image) = lambda.char_eval(chi)?;
        let x: Vec<u64> = reconstruction.x_values[chi.index()].iter().map(|v| v % pn).collect();
        characters.push(CharacterCheck { index: chi.index(), agree: image == x, image, x_value: x });
    }
    Ok(CrosscheckReport {
        p,
        n,
        c,
        lambda_vs_measure: wt_equiv(&lambda, &measure, p, n),
        lambda_vs_reconstruction: wt_equiv_with(&lambda, rec, p, n, &rel),
        measure_vs_reconstruction: wt_equiv_with(&measure, rec, p, n, &rel),
        lambda,
        measure,
        reconstruction,
        characters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunctions::lvalue::cubic;

    #[test]
    fn cubic_313_agrees() {
        let r = crosscheck(&cubic(313), 7, None, 1).unwrap();
        assert!(r.all_agree(), "{r:?}");
    }

    #[test]
    fn trivial_multiplier() {
        let k = cubic(313);
        // c ≡ 1 on G_K: every 1 − ψ(c) vanishes
        let h = (2..313).find(|&a| k.coset(a) == Some(k.identity())).unwrap();
        assert!(reconstruct_annihilator(&k, 7, h, 1).unwrap().element.is_zero());
    }
}
