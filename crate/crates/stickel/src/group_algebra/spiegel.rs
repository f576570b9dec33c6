use crate::fields::q_of;

use super::element::GroupRingElement;
use super::ring::{CoeffRing, IntMod};
use super::AlgebraError;

/// Level data for the Teichmüller-type character ω_n(σ_a) = a mod q p^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpiegelContext {
    pub p: u64,
    pub n: u32,
}

impl SpiegelContext {
    pub fn new(p: u64, n: u32) -> Self {
        SpiegelContext { p, n }
    }

    pub fn q(&self) -> u64 {
        q_of(self.p)
    }

    pub fn qpn(&self) -> u64 {
        self.q() * self.p.pow(self.n)
    }

    pub fn omega(&self, a: u64) -> u64 {
        a % self.qpn()
    }
}

/// x* = Σ a_s·ω_n(s)·s^{-1}.
pub fn spiegel(x: &GroupRingElement<IntMod>, ctx: &SpiegelContext) -> Result<GroupRingElement<IntMod>, AlgebraError> {
    let ring = *x.ring();
    let qpn = ctx.qpn();
    if !qpn.is_multiple_of(ring.modulus()) || ring.p() != ctx.p {
        return Err(AlgebraError::SpiegelModulus(qpn));
    }
    let field = x.field();
    if !field.modulus().is_multiple_of(qpn) {
        return Err(AlgebraError::SpiegelModulus(qpn));
    }
    // ω must be a character of G: H ⊂ 1 + q p^n Z
    if field.subgroup_generators().iter().any(|&h| h % qpn != 1 % qpn) {
        return Err(AlgebraError::SpiegelModulus(qpn));
    }
    let mut out = GroupRingElement::zero(field, ring);
    for (i, c) in x.coeffs().iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let w = ctx.omega(field.rep(i)) % ring.modulus();
        out.add_to_coeff(field.inv(i), &ring.mul(c, &w));
    }
    Ok(out)
}
