use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::fields::arith::{gcd, vp_i128};
use crate::fields::{characters_of, cyclotomic_layer, AbelianField};
use crate::group_algebra::{CoeffRing, CycloMod, GroupRingElement, IntMod, NormValuation};

use super::hotloop::{lambda_sum, LambdaSum, LoopRange};
use super::recipe::{setup, Recipe, RecipeSetup};
use super::StickelError;

/// ψ(A) for one nontrivial character.
#[derive(Clone, Debug)]
pub struct CharacterImage {
    pub index: usize,
    pub order: u64,
    pub conductor: u64,
    pub image: Vec<u64>,
    /// certified valuation of the norm of any lift
    pub norm_valuation: NormValuation,
    /// valuation of the norm of the canonical integer lift
    pub lift_valuation: Option<u32>,
}

/// The table's derived column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableStat {
    /// v_p(N_{Q(j)/Q}(L0 + L1 j + L2 j²)); `None` for a zero norm
    Nj(Option<u32>),
    /// 2^{v₂(L1 − L0)}, 0 when L1 = L0
    APrime(u64),
    /// v_p(L1 − L0) for odd p
    DiffValuation(Option<u32>),
    /// 2^{v₂(N(L0 + L1 i + L2 i² + L3 i³))}
    TwoPowNni(Option<u32>),
    /// 2^{v₂(gcd(L1 − L0, L2 − L0))}
    CubicA(u64),
    None,
}

impl fmt::Display for TableStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: &Option<u32>| v.map_or("inf".to_string(), |x| x.to_string());
        match self {
            TableStat::Nj(v) => write!(f, "nj={}", opt(v)),
            TableStat::APrime(a) => write!(f, "A'={a}"),
            TableStat::DiffValuation(v) => write!(f, "v(L1-L0)={}", opt(v)),
            TableStat::TwoPowNni(Some(v)) => write!(f, "2^Nni={}", 1u128 << v),
            TableStat::TwoPowNni(None) => write!(f, "2^Nni=inf"),
            TableStat::CubicA(a) => write!(f, "A={a}"),
            TableStat::None => write!(f, "-"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// annihilation proved
    Certified,
    /// annihilation conjectured
    Conjectural,
    /// no claim is made
    NotCertified,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Claim {
    pub element: String,
    pub coeffs: Vec<u64>,
    pub modulus: u64,
    pub status: Certification,
}

#[derive(Clone, Debug)]
pub struct AnnihilatorReport {
    pub field: Arc<AbelianField>,
    pub setup: RecipeSetup,
    pub coeffs: GroupRingElement<IntMod>,
    /// L0, L1, ... on powers of σ, when a generator is known
    pub cyclic: Option<Vec<u64>>,
    pub per_character: Vec<CharacterImage>,
    /// coefficients minus (coefficient at 1)·N
    pub norm_reduced: Vec<u64>,
    pub stat: TableStat,
    pub claims: Vec<Claim>,
    pub flags: Vec<String>,
}

impl AnnihilatorReport {
    pub fn modulus(&self) -> u64 {
        self.coeffs.ring().modulus()
    }

    /// Coefficients in the printed order (σ-powers if cyclic, else coset order).
    pub fn ordered(&self) -> Vec<u64> {
        self.cyclic.clone().unwrap_or_else(|| self.coeffs.coeffs().to_vec())
    }

    pub fn claim(&self, element: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.element == element)
    }

    pub fn tsv_header() -> &'static str {
        "f\trecipe\tp\tex\tc\tmodulus\tcoefficients\tstat"
    }

    pub fn tsv_row(&self) -> String {
        let coeffs: Vec<String> = self.ordered().iter().map(|c| c.to_string()).collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.field.modulus(),
            self.setup.recipe,
            self.setup.p,
            self.setup.ex,
            self.setup.c,
            self.modulus(),
            coeffs.join(" "),
            self.stat
        )
    }

    pub fn to_json(&self) -> Value {
        let chars: Vec<Value> = self
            .per_character
            .iter()
            .map(|c| {
                json!({
                    "index": c.index,
                    "order": c.order,
                    "f_chi": c.conductor,
                    "image": c.image,
                    "norm_valuation": c.norm_valuation.to_string(),
                    "lift_valuation": c.lift_valuation,
                })
            })
            .collect();
        json!({
            "f": self.field.modulus(),
            "field": self.field.label(),
            "recipe": self.setup.recipe.name(),
            "p": self.setup.p,
            "n": self.setup.ex,
            "c": self.setup.c,
            "f_n": self.setup.f_n,
            "loop_range": self.setup.range.name(),
            "modulus": self.modulus(),
            "coeffs": self.coeffs.to_json_map(),
            "ordered": self.ordered(),
            "norm_reduced": self.norm_reduced,
            "stat": self.stat.to_string(),
            "per_character": chars,
            "claims": self.claims,
            "flags": self.flags,
        })
    }
}

fn two_pow(v: Option<u32>) -> u64 {
    v.map_or(0, |v| 1u64 << v)
}

fn table_stat(recipe: Recipe, p: u64, l: &[u64]) -> TableStat {
    let i = |k: usize| l[k] as i128;
    match recipe {
        Recipe::CubicOddP => {
            let ring = CycloMod::new(p, 1, 3);
            TableStat::Nj(ring.integer_poly_norm_valuation(&[l[0] as i64, l[1] as i64, l[2] as i64]))
        }
        Recipe::QuadraticP2 => TableStat::APrime(two_pow(vp_i128(i(1) - i(0), 2))),
        Recipe::QuadraticOddP => TableStat::DiffValuation(vp_i128(i(1) - i(0), p)),
        Recipe::QuarticPrimeP2 | Recipe::QuarticCompositeP2 => {
            let ring = CycloMod::new(2, 1, 4);
            let v: Vec<i64> = l.iter().map(|&x| x as i64).collect();
            TableStat::TwoPowNni(ring.integer_poly_norm_valuation(&v))
        }
        Recipe::CubicP2 => {
            let g = gcd((i(1) - i(0)).unsigned_abs() as u64, (i(2) - i(0)).unsigned_abs() as u64);
            TableStat::CubicA(two_pow(vp_i128(g as i128, 2)))
        }
        Recipe::Generic => TableStat::None,
    }
}

fn claims(p: u64, range: LoopRange, l: &[u64], modulus: u64) -> Vec<Claim> {
    let full = range == LoopRange::Full;
    let name = if full { "A" } else { "A'" };
    let scaled = |k: u64| l.iter().map(|&x| x * k % modulus).collect::<Vec<_>>();
    let mut out = Vec::new();
    if p != 2 {
        out.push(Claim { element: name.into(), coeffs: l.to_vec(), modulus, status: Certification::Certified });
        return out;
    }
    let k = if full { 2 } else { 4 };
    out.push(Claim { element: format!("{k}{name}"), coeffs: scaled(k), modulus, status: Certification::Certified });
    out.push(Claim { element: name.into(), coeffs: l.to_vec(), modulus, status: Certification::Conjectural });
    let mut half = l.to_vec();
    let mut hmod = modulus;
    if full {
        // A = A'(1 + s_∞) with s_∞ = 1 on a real field: A' = A/2
        if l.iter().any(|x| x % 2 != 0) {
            return out;
        }
        half = l.iter().map(|x| x / 2).collect();
        hmod /= 2;
        out.push(Claim { element: "A'".into(), coeffs: half.clone(), modulus: hmod, status: Certification::Conjectural });
    }
    // A'' = (A' − tN)/2, t = 0 when A' is even, else its last coefficient
    let t = if half.iter().all(|x| x % 2 == 0) { 0 } else { *half.last().expect("nonempty") };
    if half.iter().all(|x| (x + hmod - t % hmod).is_multiple_of(2)) {
        let coeffs = half.iter().map(|x| ((x + hmod - t % hmod) % hmod) / 2).collect();
        out.push(Claim { element: "A''".into(), coeffs, modulus: hmod / 2, status: Certification::NotCertified });
    }
    out
}

/// Run a resolved recipe on K.
pub fn annihilator_from_setup(k: &Arc<AbelianField>, s: RecipeSetup) -> Result<AnnihilatorReport, StickelError> {
    let params = LambdaSum { f_n: s.f_n, c: s.c, p: s.p, m: s.m, range: s.range };
    let raw = lambda_sum(k, &params)?;
    let ring = IntMod::new(s.p, s.m);
    let coeffs = GroupRingElement::from_u64s(k, ring, &raw)?;
    let cyclic = match s.generator {
        Some(g) => Some(coeffs.cyclic_coeffs(g)?),
        None => None,
    };
    let mut per_character = Vec::new();
    for chi in characters_of(k) {
        if chi.is_trivial() {
            continue;
        }
        let (cring, image) = coeffs.char_eval(&chi)?;
        per_character.push(CharacterImage {
            index: chi.index(),
            order: chi.order(),
            conductor: chi.conductor(),
            norm_valuation: cring.norm_valuation(&image),
            lift_valuation: cring.lift_norm_valuation(&image),
            image,
        });
    }
    let c0 = *coeffs.coeff(k.identity());
    let norm_reduced = coeffs.coeffs().iter().map(|c| ring.sub(c, &c0)).collect();
    let ordered = cyclic.clone().unwrap_or_else(|| coeffs.coeffs().to_vec());
    let stat = table_stat(s.recipe, s.p, &ordered);
    let claims = claims(s.p, s.range, &ordered, ring.modulus());
    let mut flags = Vec::new();
    if cyclotomic_layer(k, s.p) > 0 {
        flags.push("K ∩ Q_∞ ≠ Q".to_string());
    }
    Ok(AnnihilatorReport { field: Arc::clone(k), setup: s, coeffs, cyclic, per_character, norm_reduced, stat, claims, flags })
}

/// A_{K,n}(c) (full loop) or A'_{K,n}(c) (half loop) with the given recipe.
pub fn annihilator_a(
    k: &Arc<AbelianField>,
    p: u64,
    c: Option<u64>,
    ex: u32,
    recipe: Recipe,
) -> Result<AnnihilatorReport, StickelError> {
    annihilator_from_setup(k, setup(recipe, k, p, ex, c)?)
}

/// Raise ex until the coefficients mod p^target stop changing; returns the report and the ex used.
pub fn annihilator_stabilized(
    k: &Arc<AbelianField>,
    p: u64,
    c: Option<u64>,
    recipe: Recipe,
    target: u32,
    max_ex: u32,
) -> Result<(AnnihilatorReport, u32), StickelError> {
    let pt = p.pow(target);
    let reduce = |r: &AnnihilatorReport| r.ordered().iter().map(|x| x % pt).collect::<Vec<_>>();
    let start = target.saturating_sub(if p == 2 { 2 } else { 1 });
    let mut prev = annihilator_a(k, p, c, start, recipe)?;
    for ex in start + 1..=max_ex {
        let next = annihilator_a(k, p, c, ex, recipe)?;
        if reduce(&next) == reduce(&prev) {
            return Ok((prev, ex - 1));
        }
        prev = next;
    }
    Err(StickelError::Params(format!("no stabilization mod {p}^{target} up to ex = {max_ex}")))
}
