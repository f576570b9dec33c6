use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::fields::{characters_of, cyclotomic_layer, AbelianField, DirichletCharacter};
use crate::group_algebra::NormValuation;

use super::{lp_at_1, LfError, LpValue};

/// Q-conjugacy classes of nontrivial characters (equal order and kernel); the first entry represents the class.
pub fn character_orbits(chars: &[DirichletCharacter]) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<(u64, Vec<bool>), Vec<usize>> = BTreeMap::new();
    for chi in chars.iter().filter(|c| !c.is_trivial()) {
        let kernel = chi.exps().iter().map(|&e| e == 0).collect();
        classes.entry((chi.order(), kernel)).or_default().push(chi.index());
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct OrbitValuation {
    pub members: Vec<usize>,
    pub value: LpValue,
}

impl OrbitValuation {
    /// v_p of Π L_p(1, χ) over the class.
    pub fn valuation(&self) -> NormValuation {
        self.value.valuation
    }
}

/// v_p([K ∩ Q_∞ : Q]·Π_{χ ≠ 1} ½·L_p(1, χ)).
#[derive(Clone, Debug)]
pub struct AnalyticValuation {
    pub p: u64,
    pub n0: u32,
    pub orbits: Vec<OrbitValuation>,
    /// −(number of nontrivial characters) for p = 2, else 0
    pub half_factors: i64,
}

impl AnalyticValuation {
    /// v_p of Π_{χ≠1} L_p(1, χ); `None` when some factor is not determined at the precision used.
    pub fn l_product(&self) -> Option<i64> {
        self.orbits.iter().map(|o| o.valuation().finite().map(i64::from)).sum()
    }

    pub fn total(&self) -> Option<i64> {
        self.l_product().map(|v| v + self.n0 as i64 + self.half_factors)
    }
}

pub fn analytic_valuation(k: &Arc<AbelianField>, p: u64, target: u32) -> Result<AnalyticValuation, LfError> {
    let chars = characters_of(k);
    let classes = character_orbits(&chars);
    let orbits = classes
        .into_par_iter()
        .map(|members| {
            let value = lp_at_1(&chars[members[0]], p, target)?;
            Ok(OrbitValuation { members, value })
        })
        .collect::<Result<Vec<_>, LfError>>()?;
    let nontrivial = chars.len() as i64 - 1;
    let half_factors = if p == 2 { -nontrivial } else { 0 };
    Ok(AnalyticValuation { p, n0: cyclotomic_layer(k, p), orbits, half_factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunctions::lvalue::cubic;

    #[test]
    fn cubic_orbits() {
        let k = cubic(313);
        let chars = characters_of(&k);
        assert_eq!(character_orbits(&chars), vec![vec![1, 2]]);
    }

    #[test]
    fn table_valuations() {
        assert_eq!(analytic_valuation(&cubic(313), 7, 6).unwrap().total(), Some(2));
        assert_eq!(analytic_valuation(&cubic(1381), 7, 8).unwrap().total(), Some(4));
    }
}
