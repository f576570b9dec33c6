use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fields::arith::{euler_phi, invmod, ipow, vp};
use crate::padic_cyclo::cyclotomic_polynomial;

use super::AlgebraError;

/// Coefficient ring of a group-ring element.
pub trait CoeffRing: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;
    fn describe(&self) -> String;
}

/// Exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        "Q".into()
    }
}

/// Exact integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        v.into()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        "Z".into()
    }
}

/// Z/p^M.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntMod {
    p: u64,
    m: u32,
    modulus: u64,
}

impl IntMod {
    pub fn new(p: u64, m: u32) -> Self {
        let modulus = ipow(p, m);
        assert!(modulus < (1 << 62), "p^M must stay below 2^62");
        IntMod { p, m, modulus }
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.m
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.modulus as i128) as u64
    }
    pub fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        let r = ((v % &m) + &m) % &m;
        r.to_u64().expect("reduced residue")
    }
    /// Image of a rational with p-integral denominator.
    pub fn reduce_rational(&self, v: &BigRational) -> Result<u64, AlgebraError> {
        let den = self.reduce_big(v.denom());
        let inv = invmod(den, self.modulus).ok_or(AlgebraError::NotIntegral)?;
        Ok(crate::fields::arith::mulmod(self.reduce_big(v.numer()), inv, self.modulus))
    }
    pub fn inv(&self, a: u64) -> Option<u64> {
        invmod(a, self.modulus)
    }
    /// v_p of a residue, capped at M (zero ↦ M).
    pub fn valuation(&self, a: u64) -> u32 {
        vp(a as u128, self.p).map_or(self.m, |v| v.min(self.m))
    }
    /// Symmetric lift to (−p^M/2, p^M/2].
    pub fn centered(&self, a: u64) -> i64 {
        if a > self.modulus / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }
    /// The same ring at a lower precision.
    pub fn truncate(&self, m: u32) -> IntMod {
        IntMod::new(self.p, m.min(self.m))
    }
}

impl CoeffRing for IntMod {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        crate::fields::arith::mulmod(*a, *b, self.modulus)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        format!("Z/{}^{}", self.p, self.m)
    }
}

/// (Z/p^M)[y]/Φ_d(y): the values of characters of order d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMod {
    base: IntMod,
    d: u64,
    phi: Vec<i64>,
}

impl CycloMod {
    pub fn new(p: u64, m: u32, d: u64) -> Self {
        CycloMod { base: IntMod::new(p, m), d, phi: cyclotomic_polynomial(d) }
    }
    pub fn base(&self) -> &IntMod {
        &self.base
    }
    pub fn order(&self) -> u64 {
        self.d
    }
    pub fn degree(&self) -> usize {
        euler_phi(self.d) as usize
    }
    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    /// Reduce an arbitrary-length coefficient vector modulo Φ_d and p^M.
    pub fn reduce(&self, v: &[i128]) -> Vec<u64> {
        let deg = self.degree();
        let m = self.base.modulus as i128;
        let mut r: Vec<i128> = v.iter().map(|x| x.rem_euclid(m)).collect();
        if r.len() < deg {
            r.resize(deg, 0);
        }
        for k in (deg..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            for (i, &pc) in self.phi.iter().enumerate() {
                let idx = k - deg + i;
                r[idx] = (r[idx] - c * pc as i128).rem_euclid(m);
            }
        }
        r.truncate(deg);
        r.into_iter().map(|x| x as u64).collect()
    }

    /// y^e.
    pub fn y_pow(&self, e: u64) -> Vec<u64> {
        let e = (e % self.d) as usize;
        let mut v = vec![0i128; e + 1];
        v[e] = 1;
        self.reduce(&v)
    }

    pub fn scalar(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.degree()];
        v[0] = a % self.base.modulus;
        v
    }

    /// Galois conjugate y → y^k.
    pub fn conjugate(&self, a: &[u64], k: u64) -> Vec<u64> {
        let mut v = vec![0i128; self.d as usize];
        for (i, &c) in a.iter().enumerate() {
            let j = (i as u64 * k % self.d) as usize;
            v[j] += c as i128;
        }
        self.reduce(&v)
    }

    /// Trace to Z/p^M: Σ over the φ(d) embeddings.
    pub fn trace(&self, a: &[u64]) -> u64 {
        let mut acc = 0i128;
        for (j, &c) in a.iter().enumerate() {
            acc += c as i128 * ramanujan_sum(self.d, j as u64) as i128;
            acc = acc.rem_euclid(self.base.modulus as i128);
        }
        acc as u64
    }

    /// Exact norm of the integer lift (coefficients in [0, p^M)).
    pub fn lift_norm(&self, a: &[u64]) -> BigInt {
        let lifted: Vec<BigInt> = a.iter().map(|&c| BigInt::from(c)).collect();
        exact_norm(&lifted, &self.phi)
    }

    /// v_p of the norm of the integer lift; `None` when that norm is 0.
    pub fn lift_norm_valuation(&self, a: &[u64]) -> Option<u32> {
        let n = self.lift_norm(a);
        big_vp(&n, self.base.p)
    }

    /// v_p of the norm of an integer polynomial in y, reduced over Z (no p^M reduction).
    pub fn integer_poly_norm_valuation(&self, a: &[i64]) -> Option<u32> {
        let mut r: Vec<BigInt> = a.iter().map(|&c| BigInt::from(c)).collect();
        let deg = self.degree();
        if r.len() < deg {
            r.resize(deg, BigInt::zero());
        }
        for k in (deg..r.len()).rev() {
            let c = r[k].clone();
            for (i, &pc) in self.phi.iter().enumerate() {
                r[k - deg + i] -= &c * pc;
            }
        }
        r.truncate(deg);
        big_vp(&exact_norm(&r, &self.phi), self.base.p)
    }

    /// Certified v_p of the norm of any element of Z_p[y]/Φ_d congruent to `a` mod p^M.
    pub fn norm_valuation(&self, a: &[u64]) -> NormValuation {
        let p = self.base.p;
        let m = self.base.m;
        let s = a.iter().map(|&c| self.base.valuation(c)).min().unwrap_or(m);
        if s >= m {
            return NormValuation::Indeterminate;
        }
        let ps = ipow(p, s);
        let unit: Vec<BigInt> = a.iter().map(|&c| BigInt::from(c / ps)).collect();
        let n = exact_norm(&unit, &self.phi);
        match big_vp(&n, p) {
            Some(w) if w < m - s => NormValuation::Finite(s * self.degree() as u32 + w),
            _ => NormValuation::Indeterminate,
        }
    }
}

impl CoeffRing for CycloMod {
    type Elem = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.scalar(1)
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        self.scalar(self.base.from_i64(v))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.base.modulus as u128;
        let mut prod = vec![0i128; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % m) as i128;
            }
        }
        self.reduce(&prod)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn render(&self, a: &Vec<u64>) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*y"),
                _ => format!("{c}*y^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
    fn describe(&self) -> String {
        format!("Z/{}^{}[y]/Phi_{}", self.base.p, self.base.m, self.d)
    }
}

/// Result of a certified norm-valuation computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormValuation {
    Finite(u32),
    Indeterminate,
}

impl NormValuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            NormValuation::Finite(v) => Some(v),
            NormValuation::Indeterminate => None,
        }
    }
}

impl std::fmt::Display for NormValuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormValuation::Finite(v) => write!(f, "{v}"),
            NormValuation::Indeterminate => write!(f, "?"),
        }
    }
}

pub fn big_vp(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let r = &n % &p;
        if !r.is_zero() {
            return Some(v);
        }
        n /= &p;
        v += 1;
    }
}

/// c_d(j) = Σ_{k ∈ (Z/d)^×} ζ_d^{jk}.
pub fn ramanujan_sum(d: u64, j: u64) -> i64 {
    let g = crate::fields::arith::gcd(d, j % d.max(1));
    let g = if j.is_multiple_of(d) { d } else { g };
    let e = d / g;
    crate::fields::arith::moebius(e) * (euler_phi(d) / euler_phi(e)) as i64
}

/// Exact norm N_{Q(y)/Q}(a) = det of multiplication by a on Z[y]/Φ.
pub fn exact_norm(a: &[BigInt], phi: &[i64]) -> BigInt {
    let deg = phi.len() - 1;
    if deg == 0 {
        return BigInt::one();
    }
    // columns: a·y^j reduced
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(deg);
    let mut cur: Vec<BigInt> = (0..deg).map(|i| a.get(i).cloned().unwrap_or_default()).collect();
    for _ in 0..deg {
        cols.push(cur.clone());
        // multiply by y
        let top = cur[deg - 1].clone();
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1].clone() - &top * phi[i];
        }
        cur[0] = -(&top * phi[0]);
    }
    bareiss_det(cols)
}

/// Fraction-free determinant.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_table_row_313() {
        let r = CycloMod::new(7, 2, 3);
        let v = [41, 41, 48];
        // 41 + 41 j + 48 j² reduced by j² = −1 − j
        let red = r.reduce(&[41, 41, 48]);
        assert_eq!(r.lift_norm_valuation(&red), Some(2));
        assert_eq!(r.norm_valuation(&red), NormValuation::Finite(2));
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn norm_of_p_times_unit() {
        let r = CycloMod::new(5, 4, 4);
        assert_eq!(r.norm_valuation(&r.scalar(5)), NormValuation::Finite(2));
        assert_eq!(r.norm_valuation(&r.one()), NormValuation::Finite(0));
        assert_eq!(r.norm_valuation(&r.zero()), NormValuation::Indeterminate);
    }

    #[test]
    fn trace_and_ramanujan() {
        let r = CycloMod::new(7, 3, 3);
        assert_eq!(r.trace(&r.one()), 2);
        assert_eq!(r.trace(&r.y_pow(1)), r.base().from_i64(-1));
        assert_eq!(ramanujan_sum(4, 2), -2);
        assert_eq!(ramanujan_sum(4, 1), 0);
    }
}
