use std::fmt;
use std::sync::Arc;

use crate::fields::arith::{euler_phi, gcd, invmod, ipow, mulmod, vp};

use super::{cyclotomic_polynomial, CycloError};

/// Z[x]/(Φ_f(x), p^M).
#[derive(Clone, PartialEq, Eq)]
pub struct CycloRing {
    f: u64,
    p: u64,
    m: u32,
    modulus: u64,
    phi: Vec<i64>,
    /// nonzero low coefficients of Φ_f (the monic top term excluded)
    phi_sparse: Vec<(usize, i64)>,
    deg: usize,
}

impl fmt::Debug for CycloRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloRing(f={}, p={}, M={})", self.f, self.p, self.m)
    }
}

/// An element of a [`CycloRing`], on the power basis 1, x, ..., x^{φ(f)-1}.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    ring: Arc<CycloRing>,
    coeffs: Vec<u64>,
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.ring, self.coeffs)
    }
}

/// Largest p^M admitted: products of two residues summed over 5·10⁴ terms must fit in u128.
const MODULUS_LIMIT: u64 = 1 << 50;

impl CycloRing {
    pub fn new(f: u64, p: u64, m: u32) -> Result<Arc<Self>, CycloError> {
        if m == 0 {
            return Err(CycloError::Precision("M must be at least 1".into()));
        }
        let modulus = p
            .checked_pow(m)
            .filter(|&x| x < MODULUS_LIMIT)
            .ok_or_else(|| CycloError::Precision(format!("{p}^{m} exceeds the supported modulus")))?;
        let phi = cyclotomic_polynomial(f);
        let deg = phi.len() - 1;
        let phi_sparse = phi[..deg].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        Ok(Arc::new(CycloRing { f, p, m, modulus, phi, phi_sparse, deg }))
    }

    pub fn conductor(&self) -> u64 {
        self.f
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
    pub fn degree(&self) -> usize {
        self.deg
    }
    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    /// Reduce a polynomial of any length mod (Φ_f, p^M). Input residues must be < p^M.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.f as usize;
        let m = self.modulus;
        let mut r = vec![0u64; f.max(self.deg)];
        for (i, &c) in v.iter().enumerate() {
            let j = i % f;
            r[j] = (r[j] + c) % m;
        }
        let mi = m as i128;
        for k in (self.deg..r.len()).rev() {
            let c = r[k] as i128;
            if c == 0 {
                continue;
            }
            r[k] = 0;
            for &(i, pc) in &self.phi_sparse {
                let idx = k - self.deg + i;
                r[idx] = (r[idx] as i128 - c * pc as i128).rem_euclid(mi) as u64;
            }
        }
        r.truncate(self.deg);
        r
    }

    pub fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus as u128;
        let la = a.len();
        let lb = b.len();
        if la == 0 || lb == 0 {
            return vec![0; self.deg];
        }
        let mut acc = vec![0u128; la + lb - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u128;
            for (s, &y) in acc[i..i + lb].iter_mut().zip(b) {
                *s += x * y as u128;
            }
        }
        let prod: Vec<u64> = acc.into_iter().map(|s| (s % m) as u64).collect();
        self.reduce(&prod)
    }
}

impl CycloElement {
    pub fn from_coeffs(ring: &Arc<CycloRing>, v: &[u64]) -> Self {
        let m = ring.modulus;
        let reduced: Vec<u64> = v.iter().map(|&c| c % m).collect();
        CycloElement { ring: Arc::clone(ring), coeffs: ring.reduce(&reduced) }
    }

    pub fn from_i64s(ring: &Arc<CycloRing>, v: &[i64]) -> Self {
        let m = ring.modulus as i128;
        let r: Vec<u64> = v.iter().map(|&c| (c as i128).rem_euclid(m) as u64).collect();
        Self::from_coeffs(ring, &r)
    }

    pub fn zero(ring: &Arc<CycloRing>) -> Self {
        CycloElement { ring: Arc::clone(ring), coeffs: vec![0; ring.deg] }
    }

    pub fn scalar(ring: &Arc<CycloRing>, a: u64) -> Self {
        let mut c = vec![0; ring.deg];
        c[0] = a % ring.modulus;
        CycloElement { ring: Arc::clone(ring), coeffs: c }
    }

    pub fn one(ring: &Arc<CycloRing>) -> Self {
        Self::scalar(ring, 1)
    }

    /// ζ_f^a.
    pub fn zeta_pow(ring: &Arc<CycloRing>, a: u64) -> Self {
        let f = ring.f as usize;
        let mut v = vec![0u64; f.max(1)];
        v[(a % ring.f) as usize] = 1 % ring.modulus;
        Self::from_coeffs(ring, &v)
    }

    /// 1 − ζ_f^a.
    pub fn one_minus_zeta(ring: &Arc<CycloRing>, a: u64) -> Self {
        Self::one(ring).sub(&Self::zeta_pow(ring, a))
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = self.ring.modulus;
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a + b) % m).collect();
        CycloElement { ring: Arc::clone(&self.ring), coeffs: c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let m = self.ring.modulus;
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a + m - b) % m).collect();
        CycloElement { ring: Arc::clone(&self.ring), coeffs: c }
    }

    pub fn neg(&self) -> Self {
        let m = self.ring.modulus;
        let c = self.coeffs.iter().map(|a| (m - a) % m).collect();
        CycloElement { ring: Arc::clone(&self.ring), coeffs: c }
    }

    pub fn scale(&self, s: u64) -> Self {
        let m = self.ring.modulus;
        let c = self.coeffs.iter().map(|&a| mulmod(a, s, m)).collect();
        CycloElement { ring: Arc::clone(&self.ring), coeffs: c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        CycloElement { ring: Arc::clone(&self.ring), coeffs: self.ring.mul_raw(&self.coeffs, &o.coeffs) }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Power by an exponent given as little-endian bits.
    pub fn pow_bits(&self, bits: impl DoubleEndedIterator<Item = bool>) -> Self {
        let mut acc = Self::one(&self.ring);
        for bit in bits.rev() {
            acc = acc.mul(&acc);
            if bit {
                acc = acc.mul(self);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.ring)
    }

    /// Minimum coefficient valuation (M for zero).
    pub fn valuation(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|&c| vp(c as u128, self.ring.p).map_or(self.ring.m, |v| v.min(self.ring.m)))
            .min()
            .unwrap_or(self.ring.m)
    }

    /// Exact division of every coefficient by p^s (result known modulo p^{M−s}).
    pub fn div_p_pow(&self, s: u32) -> Result<Self, CycloError> {
        let ps = ipow(self.ring.p, s);
        if self.coeffs.iter().any(|&c| c % ps != 0) {
            return Err(CycloError::InexactDivision { valuation: self.valuation(), needed: s });
        }
        let c = self.coeffs.iter().map(|&c| c / ps).collect();
        Ok(CycloElement { ring: Arc::clone(&self.ring), coeffs: c })
    }

    /// σ_a: x → x^a.
    pub fn galois(&self, a: u64) -> Self {
        let f = self.ring.f;
        assert!(f == 1 || gcd(a % f, f) == 1, "Galois action needs a unit");
        let mut v = vec![0u64; f.max(1) as usize];
        let m = self.ring.modulus;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let j = ((i as u64 * (a % f.max(1))) % f.max(1)) as usize;
            v[j] = (v[j] + c) % m;
        }
        CycloElement { ring: Arc::clone(&self.ring), coeffs: self.ring.reduce(&v) }
    }

    /// Inverse, lifting the mod-p inverse by Newton iteration.
    pub fn inv(&self) -> Result<Self, CycloError> {
        let p = self.ring.p;
        let modp: Vec<u64> = self.coeffs.iter().map(|&c| c % p).collect();
        let phi_p: Vec<u64> = self.ring.phi.iter().map(|&c| (c as i128).rem_euclid(p as i128) as u64).collect();
        let v0 = fp_inverse(&modp, &phi_p, p).ok_or(CycloError::NotInvertible)?;
        let mut v = CycloElement::from_coeffs(&self.ring, &v0);
        let two = Self::scalar(&self.ring, 2);
        let mut prec = 1;
        while prec < self.ring.m {
            v = v.mul(&two.sub(&self.mul(&v)));
            prec *= 2;
        }
        debug_assert!(self.mul(&v).is_one());
        Ok(v)
    }

    /// Certified v_p(N(u)) from elimination on the multiplication matrix mod p^M.
    pub fn norm_valuation(&self) -> Result<u32, CycloError> {
        let deg = self.ring.deg;
        let p = self.ring.p;
        let k = self.ring.m;
        let m = self.ring.modulus;
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(deg);
        let mut cur = self.clone();
        let x = Self::zeta_pow(&self.ring, 1);
        for _ in 0..deg {
            rows.push(cur.coeffs.clone());
            cur = cur.mul(&x);
        }
        let val = |c: u64| vp(c as u128, p).map_or(k, |v| v.min(k));
        let mut total = 0u32;
        let mut cols: Vec<usize> = (0..deg).collect();
        while !rows.is_empty() {
            let mut best: Option<(usize, usize, u32)> = None;
            for (ri, row) in rows.iter().enumerate() {
                for &ci in &cols {
                    let v = val(row[ci]);
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((ri, ci, v));
                    }
                }
            }
            let (ri, ci, v) = best.expect("nonempty");
            if v >= k {
                return Err(CycloError::Indeterminate);
            }
            total += v;
            let row = rows.swap_remove(ri);
            let pv = ipow(p, v);
            let uinv = invmod(row[ci] / pv, m).expect("unit part");
            for other in rows.iter_mut() {
                let t = mulmod(other[ci] / pv, uinv, m);
                if t != 0 {
                    for (o, &r) in other.iter_mut().zip(&row) {
                        *o = (*o + m - mulmod(t, r, m)) % m;
                    }
                }
            }
            cols.retain(|&c| c != ci);
        }
        Ok(total)
    }
}

/// Inverse of a modulo b in F_p[x] by the extended Euclidean algorithm.
fn fp_inverse(a: &[u64], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut r0 = b.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // r0 = q r1 + r
        let mut r = r0.clone();
        let dl = r1.len() - 1;
        let lead_inv = invmod(r1[dl], p)?;
        let mut q = vec![0u64; r.len().saturating_sub(dl)];
        while r.len() > dl {
            let k = r.len() - 1;
            let c = mulmod(r[k], lead_inv, p);
            q[k - dl] = c;
            for (i, &y) in r1.iter().enumerate() {
                let idx = k - dl + i;
                r[idx] = (r[idx] + p - mulmod(c, y, p)) % p;
            }
            trim(&mut r);
            if r.len() <= dl {
                break;
            }
        }
        trim(&mut r);
        // s = s0 − q s1
        let mut s = s0.clone();
        s.resize(s.len().max(q.len() + s1.len()), 0);
        for (i, &qc) in q.iter().enumerate() {
            if qc == 0 {
                continue;
            }
            for (j, &y) in s1.iter().enumerate() {
                s[i + j] = (s[i + j] + p - mulmod(qc, y, p)) % p;
            }
        }
        trim(&mut s);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = invmod(r0[0], p)?;
    let mut out: Vec<u64> = s0.iter().map(|&x| mulmod(x, c, p)).collect();
    out.resize(b.len().saturating_sub(1).max(1), 0);
    Some(out)
}

/// φ(f) for the ring degree, exposed for callers building rings lazily.
pub fn ring_degree(f: u64) -> usize {
    euler_phi(f) as usize
}
