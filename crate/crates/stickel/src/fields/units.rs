use super::arith::{dlog_bsgs, euler_phi, factor, invmod, ipow, mulmod, powmod, primitive_root};

/// One cyclic factor of (Z/fZ)^×, living on a single prime-power component.
#[derive(Clone, Debug)]
struct Component {
    modulus: u64,
    /// generator mod `modulus`
    local_gen: u64,
    order: u64,
    /// for the 2-power component: 0 → the factor {±1}, 1 → the factor ⟨5⟩
    two_part: Option<u8>,
}

/// Cyclic decomposition of (Z/fZ)^× by CRT over prime powers.
#[derive(Clone, Debug)]
pub struct UnitGroupModF {
    f: u64,
    components: Vec<Component>,
    generators: Vec<u64>,
}

impl UnitGroupModF {
    pub fn new(f: u64) -> Self {
        assert!(f >= 1, "modulus must be positive");
        let mut components = Vec::new();
        for (p, e) in factor(f) {
            let pe = ipow(p, e);
            if p == 2 {
                if e == 2 {
                    components.push(Component { modulus: pe, local_gen: 3, order: 2, two_part: None });
                } else if e >= 3 {
                    components.push(Component { modulus: pe, local_gen: pe - 1, order: 2, two_part: Some(0) });
                    components.push(Component {
                        modulus: pe,
                        local_gen: 5,
                        order: pe / 4,
                        two_part: Some(1),
                    });
                }
            } else {
                let g = primitive_root(pe).expect("odd prime powers have primitive roots");
                components.push(Component { modulus: pe, local_gen: g, order: euler_phi(pe), two_part: None });
            }
        }
        let generators = components
            .iter()
            .map(|c| crt_lift(c.local_gen, c.modulus, f))
            .collect();
        UnitGroupModF { f, components, generators }
    }

    pub fn modulus(&self) -> u64 {
        self.f
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.order).collect()
    }

    /// Exponent vector of `a` on the generators; `None` unless gcd(a, f) = 1.
    pub fn dlog(&self, a: u64) -> Option<Vec<u64>> {
        if super::arith::gcd(a % self.f.max(1), self.f) != 1 && self.f > 1 {
            return None;
        }
        let mut out = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let r = a % c.modulus;
            let x = match c.two_part {
                Some(0) => {
                    if r % 4 == 1 { 0 } else { 1 }
                }
                Some(_) => {
                    let r = if r % 4 == 1 { r } else { c.modulus - r };
                    dlog_bsgs(5, r, c.order, c.modulus)?
                }
                None => dlog_bsgs(c.local_gen, r, c.order, c.modulus)?,
            };
            out.push(x);
        }
        Some(out)
    }

    pub fn recombine(&self, exps: &[u64]) -> u64 {
        let mut acc = 1 % self.f.max(1);
        for (g, &e) in self.generators.iter().zip(exps) {
            acc = mulmod(acc, powmod(*g, e, self.f), self.f);
        }
        acc
    }
}

/// The residue mod `f` that is `r` mod `m` and 1 mod f/m (with gcd(m, f/m) = 1).
fn crt_lift(r: u64, m: u64, f: u64) -> u64 {
    let rest = f / m;
    if rest == 1 {
        return r % m;
    }
    // x = 1 + rest·t, rest·t ≡ r − 1 (mod m)
    let inv = invmod(rest % m, m).expect("coprime components");
    let t = mulmod((r + m - 1) % m, inv, m);
    (1 + rest * t) % f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::arith::gcd;

    #[test]
    fn recombination_roundtrip() {
        for f in [1u64, 2, 4, 8, 12, 40, 55, 63, 313, 1160] {
            let u = UnitGroupModF::new(f);
            let prod: u64 = u.orders().iter().product();
            assert_eq!(prod, euler_phi(f));
            for a in 1..f {
                if gcd(a, f) == 1 {
                    let e = u.dlog(a).unwrap();
                    assert_eq!(u.recombine(&e), a % f, "f={f} a={a}");
                }
            }
        }
    }
}
