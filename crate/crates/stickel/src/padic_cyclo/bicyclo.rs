use std::sync::Arc;

use crate::fields::arith::euler_phi;

use super::{cyclotomic_polynomial, CycloElement, CycloError, CycloRing};

/// (Z[x]/(Φ_f, p^M))[y]/Φ_d(y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiCycloRing {
    base: Arc<CycloRing>,
    d: u64,
    phi_d: Vec<i64>,
}

/// Σ_j c_j(x)·y^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiCycloElement {
    ring: Arc<BiCycloRing>,
    comps: Vec<CycloElement>,
}

impl BiCycloRing {
    pub fn new(base: &Arc<CycloRing>, d: u64) -> Arc<Self> {
        Arc::new(BiCycloRing { base: Arc::clone(base), d, phi_d: cyclotomic_polynomial(d) })
    }
    pub fn base(&self) -> &Arc<CycloRing> {
        &self.base
    }
    pub fn order(&self) -> u64 {
        self.d
    }
    pub fn y_degree(&self) -> usize {
        euler_phi(self.d) as usize
    }
}

impl BiCycloElement {
    pub fn zero(ring: &Arc<BiCycloRing>) -> Self {
        let comps = vec![CycloElement::zero(&ring.base); ring.y_degree()];
        BiCycloElement { ring: Arc::clone(ring), comps }
    }

    /// Build from components on y^0, ..., y^{k} for any k, reducing modulo Φ_d(y).
    pub fn from_y_poly(ring: &Arc<BiCycloRing>, comps: Vec<CycloElement>) -> Self {
        let deg = ring.y_degree();
        let m = ring.base.modulus();
        let mut r = comps;
        if r.len() < deg {
            r.resize(deg, CycloElement::zero(&ring.base));
        }
        for k in (deg..r.len()).rev() {
            let c = r[k].clone();
            if c.is_zero() {
                continue;
            }
            for (i, &pc) in ring.phi_d[..deg].iter().enumerate() {
                if pc == 0 {
                    continue;
                }
                let s = (pc as i128).rem_euclid(m as i128) as u64;
                r[k - deg + i] = r[k - deg + i].sub(&c.scale(s));
            }
        }
        r.truncate(deg);
        BiCycloElement { ring: Arc::clone(ring), comps: r }
    }

    pub fn constant(ring: &Arc<BiCycloRing>, c: &CycloElement) -> Self {
        let mut z = Self::zero(ring);
        z.comps[0] = c.clone();
        z
    }

    /// y^e·c.
    pub fn monomial(ring: &Arc<BiCycloRing>, e: u64, c: &CycloElement) -> Self {
        let e = (e % ring.d) as usize;
        let mut comps = vec![CycloElement::zero(&ring.base); e + 1];
        comps[e] = c.clone();
        Self::from_y_poly(ring, comps)
    }

    pub fn ring(&self) -> &Arc<BiCycloRing> {
        &self.ring
    }

    pub fn components(&self) -> &[CycloElement] {
        &self.comps
    }

    pub fn add(&self, o: &Self) -> Self {
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect();
        BiCycloElement { ring: Arc::clone(&self.ring), comps }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect();
        BiCycloElement { ring: Arc::clone(&self.ring), comps }
    }

    pub fn scale(&self, s: u64) -> Self {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        BiCycloElement { ring: Arc::clone(&self.ring), comps }
    }

    pub fn mul_base(&self, c: &CycloElement) -> Self {
        let comps = self.comps.iter().map(|a| a.mul(c)).collect();
        BiCycloElement { ring: Arc::clone(&self.ring), comps }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.comps.len() + o.comps.len() - 1;
        let mut prod = vec![CycloElement::zero(&self.ring.base); n];
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.comps.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        Self::from_y_poly(&self.ring, prod)
    }

    pub fn div_p_pow(&self, s: u32) -> Result<Self, CycloError> {
        let comps = self.comps.iter().map(|a| a.div_p_pow(s)).collect::<Result<_, _>>()?;
        Ok(BiCycloElement { ring: Arc::clone(&self.ring), comps })
    }

    /// The x-constant coefficients of each y-component, after checking every
    /// higher x-coefficient vanishes modulo p^target.
    pub fn x_constant(&self, target: u32) -> Result<Vec<u64>, CycloError> {
        let base = &self.ring.base;
        let pt = base.p().pow(target.min(base.precision()));
        for c in &self.comps {
            if c.coeffs()[1..].iter().any(|&x| x % pt != 0) {
                return Err(CycloError::Precision("value is not in Z_p[y] at the requested precision".into()));
            }
        }
        Ok(self.comps.iter().map(|c| c.coeffs()[0]).collect())
    }
}
