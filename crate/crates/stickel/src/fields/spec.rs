use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::arith::{factor, is_prime, kronecker, powmod, primitive_root};
use super::{AbelianField, FieldError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    CyclicPrime,
    Quadratic,
    QuarticComposite,
    ExplicitSubgroup,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::CyclicPrime => "cyclic-prime",
            FieldKind::Quadratic => "quadratic",
            FieldKind::QuarticComposite => "quartic-composite",
            FieldKind::ExplicitSubgroup => "explicit-subgroup",
        }
    }
}

impl FromStr for FieldKind {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "cyclic-prime" => Ok(FieldKind::CyclicPrime),
            "quadratic" => Ok(FieldKind::Quadratic),
            "quartic-composite" => Ok(FieldKind::QuarticComposite),
            "explicit-subgroup" => Ok(FieldKind::ExplicitSubgroup),
            other => Err(FieldError::Parse(format!("unknown kind {other:?}"))),
        }
    }
}

/// Parameters of a field family.
///
/// Text form: `kind=cyclic-prime; f=313; d=3`, `kind=quartic-composite; f=365; gens=[5,73]`
/// (for the composite family `gens` lists the two prime factors q, q'), or
/// `kind=explicit-subgroup; f=91; gens=[...]` with generators of H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub f: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gens: Vec<u64>,
}

impl FieldSpec {
    pub fn cyclic_prime(f: u64, d: u64) -> Self {
        FieldSpec { kind: FieldKind::CyclicPrime, f, d: Some(d), gens: vec![] }
    }
    pub fn quadratic(f: u64) -> Self {
        FieldSpec { kind: FieldKind::Quadratic, f, d: Some(2), gens: vec![] }
    }
    pub fn quartic_composite(q1: u64, q2: u64) -> Self {
        FieldSpec { kind: FieldKind::QuarticComposite, f: q1 * q2, d: Some(4), gens: vec![q1, q2] }
    }
    pub fn explicit(f: u64, gens: Vec<u64>) -> Self {
        FieldSpec { kind: FieldKind::ExplicitSubgroup, f, d: None, gens }
    }

    pub fn label(&self) -> String {
        match self.kind {
            FieldKind::CyclicPrime => format!("C{}({})", self.d.unwrap_or(0), self.f),
            FieldKind::Quadratic => format!("Q(sqrt {})", self.f),
            FieldKind::QuarticComposite => format!("C4({}*{})", self.gens[0], self.gens[1]),
            FieldKind::ExplicitSubgroup => format!("K({}; {:?})", self.f, self.gens),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "kind={}; f={}", self.kind.name(), self.f)?;
        if let Some(d) = self.d {
            write!(fm, "; d={d}")?;
        }
        if !self.gens.is_empty() {
            let g: Vec<String> = self.gens.iter().map(|x| x.to_string()).collect();
            write!(fm, "; gens=[{}]", g.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut kind = None;
        let mut f = None;
        let mut d = None;
        let mut gens = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| FieldError::Parse(format!("expected key=value, got {part:?}")))?;
            let v = v.trim();
            let num = |v: &str| v.parse::<u64>().map_err(|e| FieldError::Parse(format!("{v:?}: {e}")));
            match k.trim() {
                "kind" => kind = Some(v.parse::<FieldKind>()?),
                "f" => f = Some(num(v)?),
                "d" => d = Some(num(v)?),
                "gens" => {
                    let inner = v
                        .strip_prefix('[')
                        .and_then(|x| x.strip_suffix(']'))
                        .ok_or_else(|| FieldError::Parse(format!("gens must be [..], got {v:?}")))?;
                    gens = inner
                        .split(',')
                        .map(str::trim)
                        .filter(|x| !x.is_empty())
                        .map(num)
                        .collect::<Result<_, _>>()?;
                }
                other => return Err(FieldError::Parse(format!("unknown key {other:?}"))),
            }
        }
        let kind = kind.ok_or_else(|| FieldError::Parse("missing kind".into()))?;
        let f = f.ok_or_else(|| FieldError::Parse("missing f".into()))?;
        Ok(FieldSpec { kind, f, d, gens })
    }
}

/// Quadratic modulus filter: f = 2^v·M with M odd squarefree and
/// (v = 0, M ≡ 1 mod 4), (v = 2, M ≡ 3 mod 4) or v = 3.
pub fn quadratic_admissible(f: u64) -> bool {
    if f < 5 {
        return false;
    }
    let v = f.trailing_zeros();
    let m = f >> v;
    if factor(m).iter().any(|&(_, e)| e > 1) {
        return false;
    }
    match v {
        0 => m % 4 == 1,
        2 => m % 4 == 3,
        3 => true,
        _ => false,
    }
}

/// Index of `a` with respect to the smallest primitive root mod the prime `q`, reduced mod `m`.
fn index_mod(a: u64, q: u64, m: u64) -> u64 {
    let g = primitive_root(q).expect("prime modulus");
    let x = super::arith::dlog_bsgs(g, a % q, q - 1, q).expect("unit");
    x % m
}

/// Build and validate a real abelian field.
pub fn build_field(spec: &FieldSpec) -> Result<AbelianField, FieldError> {
    let f = spec.f;
    let label = spec.label();
    let field = match spec.kind {
        FieldKind::CyclicPrime => {
            let d = spec.d.ok_or_else(|| FieldError::InvalidParams("cyclic-prime needs d".into()))?;
            if !is_prime(f) {
                return Err(FieldError::InvalidParams(format!("{f} is not prime")));
            }
            if d == 0 || !(f - 1).is_multiple_of(d) {
                return Err(FieldError::InvalidParams(format!("{d} does not divide {}", f - 1)));
            }
            let e = (f - 1) / d;
            AbelianField::from_predicate(f, label, |a| powmod(a, e, f) == 1)?
        }
        FieldKind::Quadratic => {
            if !quadratic_admissible(f) {
                return Err(FieldError::InvalidParams(format!("{f} is not an admissible real quadratic conductor")));
            }
            AbelianField::from_predicate(f, label, |a| kronecker(f as i64, a) == 1)?
        }
        FieldKind::QuarticComposite => {
            let (q1, q2) = match spec.gens.as_slice() {
                [a, b] => (*a, *b),
                _ => return Err(FieldError::InvalidParams("quartic-composite needs gens=[q,q']".into())),
            };
            if q1 * q2 != f || !is_prime(q1) || !is_prime(q2) || q1 == q2 {
                return Err(FieldError::InvalidParams(format!("f={f} must be q*q' with distinct primes {q1},{q2}")));
            }
            if q1 % 4 != 1 || q2 % 4 != 1 {
                return Err(FieldError::InvalidParams("q and q' must be 1 mod 4".into()));
            }
            AbelianField::from_predicate(f, label, |a| {
                (index_mod(a, q2, 4) + 2 * index_mod(a, q1, 2)).is_multiple_of(4)
            })?
        }
        FieldKind::ExplicitSubgroup => AbelianField::from_generators(f, label, &spec.gens)?,
    };
    let cond = field.conductor();
    if cond != f && field.degree() > 1 {
        return Err(FieldError::NotConductor { f, conductor: cond });
    }
    if !field.is_real() {
        return Err(FieldError::NotReal);
    }
    if let Some(d) = spec.d {
        if field.degree() as u64 != d {
            return Err(FieldError::InvalidParams(format!("degree {} differs from d={d}", field.degree())));
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        for s in ["kind=cyclic-prime; f=313; d=3", "kind=quartic-composite; f=365; d=4; gens=[5,73]"] {
            let spec: FieldSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("kind=cubic; f=7".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn admissibility() {
        assert!(quadratic_admissible(8));
        assert!(quadratic_admissible(1160));
        assert!(quadratic_admissible(1201));
        assert!(!quadratic_admissible(1203));
        assert!(quadratic_admissible(12));
        assert!(!quadratic_admissible(20));
        assert!(quadratic_admissible(508));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(build_field(&FieldSpec::cyclic_prime(315, 3)).is_err());
        assert!(build_field(&FieldSpec::cyclic_prime(313, 5)).is_err());
        // d = 2 for f ≡ 3 mod 4 is imaginary
        assert_eq!(build_field(&FieldSpec::cyclic_prime(7, 2)), Err(FieldError::NotReal));
        assert!(build_field(&FieldSpec::cyclic_prime(7, 1)).is_ok());
    }
}
