use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::fields::{AbelianField, DirichletCharacter};

use super::ring::{CoeffRing, CycloMod, IntMod, Integers, Rationals};
use super::AlgebraError;

/// An element Σ c_σ σ of R[G_K], dense over the cosets of K.
#[derive(Clone, Debug)]
pub struct GroupRingElement<R: CoeffRing> {
    field: Arc<AbelianField>,
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> PartialEq for GroupRingElement<R> {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.field, &other.field) && self.ring == other.ring && self.coeffs == other.coeffs
    }
}

fn same_group(a: &Arc<AbelianField>, b: &Arc<AbelianField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<R: CoeffRing> GroupRingElement<R> {
    pub fn zero(field: &Arc<AbelianField>, ring: R) -> Self {
        let coeffs = vec![ring.zero(); field.degree()];
        GroupRingElement { field: Arc::clone(field), ring, coeffs }
    }

    pub fn one(field: &Arc<AbelianField>, ring: R) -> Self {
        Self::basis(field, ring, 0)
    }

    /// The group element with coset index `i`.
    pub fn basis(field: &Arc<AbelianField>, ring: R, i: usize) -> Self {
        let mut x = Self::zero(field, ring);
        x.coeffs[i] = x.ring.one();
        x
    }

    /// The Artin symbol (K/a) as a group-ring element.
    pub fn artin(field: &Arc<AbelianField>, ring: R, a: u64) -> Result<Self, AlgebraError> {
        let i = field.coset(a).ok_or(AlgebraError::NotCoprime(a))?;
        Ok(Self::basis(field, ring, i))
    }

    pub fn from_coeffs(field: &Arc<AbelianField>, ring: R, coeffs: Vec<R::Elem>) -> Result<Self, AlgebraError> {
        if coeffs.len() != field.degree() {
            return Err(AlgebraError::Length { expected: field.degree(), got: coeffs.len() });
        }
        Ok(GroupRingElement { field: Arc::clone(field), ring, coeffs })
    }

    /// N = Σ_σ σ.
    pub fn norm_element(field: &Arc<AbelianField>, ring: R) -> Self {
        let coeffs = vec![ring.one(); field.degree()];
        GroupRingElement { field: Arc::clone(field), ring, coeffs }
    }

    /// The class of −1.
    pub fn s_inf(field: &Arc<AbelianField>, ring: R) -> Self {
        Self::basis(field, ring, field.s_inf())
    }

    pub fn field(&self) -> &Arc<AbelianField> {
        &self.field
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    /// Coefficient of the Artin symbol of `a`.
    pub fn coeff_at(&self, a: u64) -> Option<&R::Elem> {
        self.field.coset(a).map(|i| &self.coeffs[i])
    }

    pub fn set_coeff(&mut self, i: usize, v: R::Elem) {
        self.coeffs[i] = v;
    }

    pub fn add_to_coeff(&mut self, i: usize, v: &R::Elem) {
        self.coeffs[i] = self.ring.add(&self.coeffs[i], v);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if !same_group(&self.field, &other.field) {
            return Err(AlgebraError::GroupMismatch);
        }
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(self.ring.describe(), other.ring.describe()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(GroupRingElement { field: Arc::clone(&self.field), ring: self.ring.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.sub(a, b)).collect();
        Ok(GroupRingElement { field: Arc::clone(&self.field), ring: self.ring.clone(), coeffs })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        GroupRingElement { field: Arc::clone(&self.field), ring: self.ring.clone(), coeffs }
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, s)).collect();
        GroupRingElement { field: Arc::clone(&self.field), ring: self.ring.clone(), coeffs }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let d = self.field.degree();
        let mut out = vec![self.ring.zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if self.ring.is_zero(b) {
                    continue;
                }
                let k = self.field.mul(i, j);
                out[k] = self.ring.add(&out[k], &self.ring.mul(a, b));
            }
        }
        Ok(GroupRingElement { field: Arc::clone(&self.field), ring: self.ring.clone(), coeffs: out })
    }

    /// Image under σ ↦ σ^{-1}.
    pub fn invert_group(&self) -> Self {
        let mut out = vec![self.ring.zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[self.field.inv(i)] = a.clone();
        }
        GroupRingElement { field: Arc::clone(&self.field), ring: self.ring.clone(), coeffs: out }
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> R::Elem {
        self.coeffs.iter().fold(self.ring.zero(), |acc, c| self.ring.add(&acc, c))
    }

    /// Push forward along restriction of automorphisms to a subfield.
    pub fn restrict(&self, target: &Arc<AbelianField>) -> Result<Self, AlgebraError> {
        let map = self.field.restriction_map(target).map_err(AlgebraError::Field)?;
        let mut out = vec![self.ring.zero(); target.degree()];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[map[i]] = self.ring.add(&out[map[i]], a);
        }
        Ok(GroupRingElement { field: Arc::clone(target), ring: self.ring.clone(), coeffs: out })
    }

    /// Change coefficient ring coefficientwise.
    pub fn map_ring<S: CoeffRing>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem, AlgebraError>,
    ) -> Result<GroupRingElement<S>, AlgebraError> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<_, _>>()?;
        Ok(GroupRingElement { field: Arc::clone(&self.field), ring, coeffs })
    }

    /// Coefficients on the powers of a generator of a cyclic group: [c_{g^0}, c_{g^1}, ...].
    pub fn cyclic_coeffs(&self, generator: usize) -> Result<Vec<R::Elem>, AlgebraError> {
        let d = self.field.degree();
        if self.field.order_of(generator) != d {
            return Err(AlgebraError::NotAGenerator(self.field.rep(generator)));
        }
        let mut out = Vec::with_capacity(d);
        let mut x = 0;
        for _ in 0..d {
            out.push(self.coeffs[x].clone());
            x = self.field.mul(x, generator);
        }
        Ok(out)
    }

    /// `c0 + c1*s + c2*s^2 + ...` over a generator of a cyclic group.
    pub fn render_cyclic(&self, generator: usize) -> Result<String, AlgebraError> {
        let cs = self.cyclic_coeffs(generator)?;
        let terms: Vec<String> = cs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let c = self.ring.render(c);
                match k {
                    0 => c,
                    1 => format!("{c}*s"),
                    _ => format!("{c}*s^{k}"),
                }
            })
            .collect();
        Ok(terms.join(" + "))
    }

    /// {coset representative: coefficient}.
    pub fn to_json_map(&self) -> BTreeMap<u64, String> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.field.rep(i), self.ring.render(c)))
            .collect()
    }
}

impl<R: CoeffRing> fmt::Display for GroupRingElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| format!("{}*[{}]", self.ring.render(c), self.field.rep(i)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl GroupRingElement<Integers> {
    pub fn from_i64s(field: &Arc<AbelianField>, v: &[i64]) -> Result<Self, AlgebraError> {
        Self::from_coeffs(field, Integers, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn reduce_mod(&self, ring: IntMod) -> GroupRingElement<IntMod> {
        self.map_ring(ring, |c| Ok(ring.reduce_big(c))).expect("reduction is total")
    }

    pub fn to_rational(&self) -> GroupRingElement<Rationals> {
        self.map_ring(Rationals, |c| Ok(BigRational::from_integer(c.clone()))).expect("total")
    }
}

impl GroupRingElement<Rationals> {
    pub fn reduce_mod(&self, ring: IntMod) -> Result<GroupRingElement<IntMod>, AlgebraError> {
        self.map_ring(ring, |c| ring.reduce_rational(c))
    }

    /// Integer coefficients, if all coefficients are integral.
    pub fn to_integers(&self) -> Result<GroupRingElement<Integers>, AlgebraError> {
        self.map_ring(Integers, |c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(AlgebraError::NotIntegral)
            }
        })
    }

    /// Exact character value in Q(y)/Φ_d as rational coefficients on 1, y, ..., y^{φ(d)-1}.
    pub fn char_eval_exact(&self, chi: &DirichletCharacter) -> Result<Vec<BigRational>, AlgebraError> {
        check_character(&self.field, chi)?;
        let d = chi.order();
        let phi = crate::padic_cyclo::cyclotomic_polynomial(d);
        let deg = phi.len() - 1;
        let mut acc = vec![BigRational::from_integer(0.into()); d as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            acc[chi.exp_on_coset(i) as usize] += c;
        }
        for k in (deg..acc.len()).rev() {
            let c = acc[k].clone();
            for (i, &pc) in phi.iter().enumerate() {
                acc[k - deg + i] -= &c * BigRational::from_integer(pc.into());
            }
        }
        acc.truncate(deg);
        Ok(acc)
    }
}

impl GroupRingElement<IntMod> {
    pub fn from_u64s(field: &Arc<AbelianField>, ring: IntMod, v: &[u64]) -> Result<Self, AlgebraError> {
        Self::from_coeffs(field, ring, v.iter().map(|&x| x % ring.modulus()).collect())
    }

    /// Canonical lifts in [0, p^M).
    pub fn lift(&self) -> GroupRingElement<Integers> {
        self.map_ring(Integers, |&c| Ok(BigInt::from(c))).expect("total")
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, m: u32) -> Self {
        let r = self.ring.truncate(m);
        self.map_ring(r, |&c| Ok(c % r.modulus())).expect("total")
    }

    /// ψ(x) in (Z/p^M)[y]/Φ_{d_ψ}.
    pub fn char_eval(&self, chi: &DirichletCharacter) -> Result<(CycloMod, Vec<u64>), AlgebraError> {
        check_character(&self.field, chi)?;
        let ring = CycloMod::new(self.ring.p(), self.ring.precision(), chi.order());
        let mut acc = vec![0i128; chi.order() as usize];
        let m = self.ring.modulus() as i128;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let e = chi.exp_on_coset(i) as usize;
            acc[e] = (acc[e] + c as i128) % m;
        }
        let v = ring.reduce(&acc);
        Ok((ring, v))
    }
}

fn check_character(field: &Arc<AbelianField>, chi: &DirichletCharacter) -> Result<(), AlgebraError> {
    if same_group(field, chi.field()) {
        Ok(())
    } else {
        Err(AlgebraError::GroupMismatch)
    }
}
