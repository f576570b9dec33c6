use std::fmt;

use super::arith::{gcd, invmod, lcm, mulmod, prime_divisors, vp};
use super::FieldError;

const NONUNIT: u32 = u32::MAX;

/// A coset of H in (Z/fZ)^×, named by its least positive representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisElement {
    pub index: usize,
    pub rep: u64,
}

impl fmt::Display for GaloisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// An abelian field as a subgroup H of (Z/fZ)^×; the Galois group is the quotient.
#[derive(Clone)]
pub struct AbelianField {
    modulus: u64,
    label: String,
    coset_of: Vec<u32>,
    reps: Vec<u64>,
    h_order: usize,
    h_gens: Vec<u64>,
}

impl fmt::Debug for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AbelianField")
            .field("label", &self.label)
            .field("modulus", &self.modulus)
            .field("degree", &self.degree())
            .finish()
    }
}

impl PartialEq for AbelianField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.reps == other.reps && self.coset_of == other.coset_of
    }
}

impl Eq for AbelianField {}

impl AbelianField {
    /// Build from a membership test for H. The modulus is not required to be the conductor.
    pub fn from_predicate(
        modulus: u64,
        label: impl Into<String>,
        pred: impl Fn(u64) -> bool,
    ) -> Result<Self, FieldError> {
        if modulus == 0 {
            return Err(FieldError::InvalidParams("modulus must be positive".into()));
        }
        if modulus > u32::MAX as u64 / 2 {
            return Err(FieldError::InvalidParams(format!("modulus {modulus} too large for a residue table")));
        }
        let f = modulus;
        let units: Vec<u64> = if f == 1 { vec![0] } else { (1..f).filter(|&a| gcd(a, f) == 1).collect() };
        let mut in_h = vec![false; f as usize];
        let mut h = Vec::new();
        for &a in &units {
            if f == 1 || pred(a) {
                in_h[a as usize] = true;
                h.push(a);
            }
        }
        if f > 1 && !in_h[1] {
            return Err(FieldError::NotASubgroup("1 is not in H".into()));
        }
        // generate the subgroup spanned by H and compare sizes
        let mut span = vec![false; f as usize];
        let mut members = vec![1 % f];
        span[(1 % f) as usize] = true;
        let mut h_gens = Vec::new();
        for &x in &h {
            if span[x as usize] {
                continue;
            }
            h_gens.push(x);
            let base = members.clone();
            let mut power = x;
            while !span[power as usize] {
                for &m in &base {
                    let y = mulmod(m, power, f) as usize;
                    if !span[y] {
                        span[y] = true;
                        members.push(y as u64);
                    }
                }
                power = mulmod(power, x, f);
            }
            if members.len() > h.len() {
                return Err(FieldError::NotASubgroup(format!("not closed under multiplication mod {f}")));
            }
        }
        if members.len() != h.len() {
            return Err(FieldError::NotASubgroup(format!("not closed under multiplication mod {f}")));
        }
        let mut coset_of = vec![NONUNIT; f as usize];
        let mut reps = Vec::new();
        for &a in &units {
            if coset_of[a as usize] != NONUNIT {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(if f == 1 { 1 } else { a });
            for &x in &h {
                coset_of[mulmod(a, x, f) as usize] = id;
            }
        }
        Ok(AbelianField { modulus: f, label: label.into(), coset_of, reps, h_order: h.len(), h_gens })
    }

    /// The full cyclotomic field Q(ζ_m), H = {1}.
    pub fn cyclotomic(m: u64) -> Result<Self, FieldError> {
        Self::from_predicate(m, format!("Q(zeta_{m})"), |a| a % m == 1 % m)
    }

    /// The field cut out by the subgroup generated by `gens` (−1 is not added implicitly).
    pub fn from_generators(modulus: u64, label: impl Into<String>, gens: &[u64]) -> Result<Self, FieldError> {
        let f = modulus;
        for &g in gens {
            if f > 1 && gcd(g % f, f) != 1 {
                return Err(FieldError::NotCoprime { a: g, f });
            }
        }
        let mut span = vec![false; f as usize];
        span[(1 % f) as usize] = true;
        let mut members = vec![1 % f];
        for &g in gens {
            let g = g % f;
            let base = members.clone();
            let mut power = g;
            while !span[power as usize] {
                for &m in &base {
                    let y = mulmod(m, power, f) as usize;
                    if !span[y] {
                        span[y] = true;
                        members.push(y as u64);
                    }
                }
                power = mulmod(power, g, f);
            }
        }
        Self::from_predicate(f, label, move |a| span[a as usize])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn subgroup_order(&self) -> usize {
        self.h_order
    }

    /// A generating set of H.
    pub fn subgroup_generators(&self) -> &[u64] {
        &self.h_gens
    }

    /// Raw residue → coset table (u32::MAX marks non-units).
    pub fn coset_table(&self) -> &[u32] {
        &self.coset_of
    }

    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> u64 {
        self.reps[i]
    }

    pub fn element(&self, i: usize) -> GaloisElement {
        GaloisElement { index: i, rep: self.reps[i] }
    }

    pub fn elements(&self) -> impl Iterator<Item = GaloisElement> + '_ {
        (0..self.degree()).map(|i| self.element(i))
    }

    pub fn coset(&self, a: u64) -> Option<usize> {
        let c = self.coset_of[(a % self.modulus) as usize];
        (c != NONUNIT).then_some(c as usize)
    }

    pub fn coset_i(&self, a: i64) -> Option<usize> {
        self.coset(a.rem_euclid(self.modulus as i64) as u64)
    }

    pub fn in_subgroup(&self, a: u64) -> bool {
        self.coset(a) == Some(0)
    }

    /// The Artin symbol (K/a).
    pub fn artin_symbol(&self, a: u64) -> Result<GaloisElement, FieldError> {
        self.coset(a)
            .map(|i| self.element(i))
            .ok_or(FieldError::NotCoprime { a, f: self.modulus })
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.coset(mulmod(self.reps[i], self.reps[j], self.modulus)).expect("product of units")
    }

    pub fn inv(&self, i: usize) -> usize {
        let r = invmod(self.reps[i], self.modulus).expect("unit");
        self.coset(r).expect("unit")
    }

    pub fn pow(&self, i: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(i) } else { i };
        let mut acc = 0;
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn order_of(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Index of the class of −1.
    pub fn s_inf(&self) -> usize {
        self.coset(self.modulus.saturating_sub(1) % self.modulus.max(1)).unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.modulus <= 2 || self.s_inf() == 0
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.degree()).any(|i| self.order_of(i) == self.degree())
    }

    /// Least representative of a generator, when G is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.order_of(i) == self.degree())
    }

    /// True when H contains the kernel of reduction (Z/fZ)^× → (Z/mZ)^×.
    pub fn factors_through(&self, m: u64) -> bool {
        if !self.modulus.is_multiple_of(m) {
            return false;
        }
        let f = self.modulus;
        let mut k = 1 % f;
        let step = m % f;
        for _ in 0..(f / m) {
            if gcd(k, f) == 1 && !self.in_subgroup(k) {
                return false;
            }
            k = (k + step) % f;
            if f == m {
                break;
            }
        }
        true
    }

    /// The genuine conductor, by descending through prime divisors.
    pub fn conductor(&self) -> u64 {
        let mut m = self.modulus;
        'outer: loop {
            for l in prime_divisors(m) {
                let m2 = m / l;
                if self.factors_through(m2) {
                    m = m2;
                    continue 'outer;
                }
            }
            return m;
        }
    }

    /// Whether `k` is a subfield of this field (k's modulus dividing ours).
    pub fn contains_field(&self, k: &AbelianField) -> bool {
        if !self.modulus.is_multiple_of(k.modulus) {
            return false;
        }
        self.h_gens.iter().all(|&h| k.in_subgroup(h))
    }

    /// Coset map G_self → G_k induced by restriction of automorphisms.
    pub fn restriction_map(&self, k: &AbelianField) -> Result<Vec<usize>, FieldError> {
        if !self.contains_field(k) {
            return Err(FieldError::NotContained { small: k.label.clone(), big: self.label.clone() });
        }
        Ok(self.reps.iter().map(|&r| k.coset(r).expect("units restrict to units")).collect())
    }

    /// Same field viewed at a multiple of the modulus.
    pub fn lift_to_modulus(&self, m: u64) -> Result<AbelianField, FieldError> {
        if !m.is_multiple_of(self.modulus) {
            return Err(FieldError::InvalidParams(format!("{m} is not a multiple of {}", self.modulus)));
        }
        AbelianField::from_predicate(m, self.label.clone(), |a| self.in_subgroup(a))
    }

    /// The compositum K(μ_{q p^n}), with modulus lcm(f_K, q p^n).
    pub fn ln_field(&self, p: u64, n: u32) -> Result<AbelianField, FieldError> {
        let qpn = super::q_of(p) * p.pow(n);
        let fk = self.modulus;
        let fnn = lcm(fk, qpn);
        AbelianField::from_predicate(fnn, format!("{}(mu_{qpn})", self.label), |a| {
            self.in_subgroup(a % fk) && a % qpn == 1 % qpn
        })
    }

    /// Ramification index, residue degree and number of primes above ℓ.
    pub fn splitting(&self, l: u64) -> (usize, usize, usize) {
        let f = self.modulus;
        let v = vp(f as u128, l).unwrap_or(0);
        let lv = l.pow(v);
        let rest = f / lv;
        let d = self.degree();
        // inertia: image of residues ≡ 1 mod rest
        let mut inertia = vec![false; d];
        let mut e = 0;
        if v > 0 {
            let mut k = 1 % f;
            for _ in 0..lv {
                if let Some(c) = self.coset(k) {
                    if !inertia[c] {
                        inertia[c] = true;
                        e += 1;
                    }
                }
                k = (k + rest) % f;
            }
        } else {
            inertia[0] = true;
            e = 1;
        }
        // Frobenius: ≡ ℓ mod rest, ≡ 1 mod ℓ^v
        let frob_rep = if v == 0 { l % f } else { crt_pair(l % rest, rest, 1, lv) };
        let frob = self.coset(frob_rep).expect("Frobenius is a unit");
        let mut fdeg = 1;
        let mut x = frob;
        while !inertia[x] {
            x = self.mul(x, frob);
            fdeg += 1;
        }
        (e, fdeg, d / (e * fdeg))
    }
}

fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    // x ≡ r1 (m1), x ≡ r2 (m2), gcd(m1, m2) = 1
    let m = m1 * m2;
    if m1 == 1 {
        return r2 % m;
    }
    if m2 == 1 {
        return r1 % m;
    }
    let inv = invmod(m1 % m2, m2).expect("coprime");
    let t = mulmod((r2 + m2 - r1 % m2) % m2, inv, m2);
    (r1 + m1 * t) % m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_313_basics() {
        let k = AbelianField::from_predicate(313, "cubic", |a| super::super::arith::powmod(a, 104, 313) == 1).unwrap();
        assert_eq!(k.degree(), 3);
        assert!(k.is_real());
        assert_eq!(k.conductor(), 313);
        assert_eq!(k.artin_symbol(1).unwrap().index, 0);
        assert_eq!(k.order_of(k.coset(10).unwrap()), 3);
    }

    #[test]
    fn non_subgroup_rejected() {
        assert!(AbelianField::from_predicate(7, "bad", |a| a == 1 || a == 2).is_err());
    }

    #[test]
    fn lifted_field_has_smaller_conductor() {
        let k = AbelianField::cyclotomic(5).unwrap().lift_to_modulus(20).unwrap();
        assert_eq!(k.degree(), 4);
        assert_eq!(k.conductor(), 5);
    }

    #[test]
    fn splitting_in_q_zeta_15() {
        let k = AbelianField::cyclotomic(15).unwrap();
        assert_eq!(k.splitting(3), (2, 4, 1));
        assert_eq!(k.splitting(2), (1, 4, 2));
        assert_eq!(k.splitting(31), (1, 1, 8));
    }
}
