use std::sync::Arc;

use super::arith::{gcd, lcm, prime_divisors};
use super::{AbelianField, UnitGroupModF};

/// A character ψ of G_K, read as a Dirichlet character of (Z/f_K Z)^×.
///
/// Values are powers of a primitive `order`-th root of unity y: ψ(σ_i) = y^{exps[i]}.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    field: Arc<AbelianField>,
    index: usize,
    order: u64,
    exps: Vec<u64>,
    conductor: u64,
    conjugate: usize,
}

impl DirichletCharacter {
    pub fn field(&self) -> &Arc<AbelianField> {
        &self.field
    }

    /// Position in the list returned by [`characters_of`].
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Index of the inverse character.
    pub fn conjugate_index(&self) -> usize {
        self.conjugate
    }

    /// Exponent of ψ(σ) for the coset with index `i`.
    pub fn exp_on_coset(&self, i: usize) -> u64 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    /// Exponent of χ(a); `None` when gcd(a, f_χ) > 1.
    pub fn exp_at(&self, a: u64) -> Option<u64> {
        let fc = self.conductor;
        if fc > 1 && gcd(a % fc, fc) != 1 {
            return None;
        }
        let fk = self.field.modulus();
        let mut x = a % fc.max(1);
        // lift to a residue coprime to f_K
        loop {
            if let Some(c) = self.field.coset(x % fk) {
                return Some(self.exps[c]);
            }
            x += fc;
        }
    }

    /// Exponents of χ on every residue mod f_χ.
    pub fn exp_table(&self) -> Vec<Option<u64>> {
        (0..self.conductor.max(1)).map(|a| self.exp_at(a)).collect()
    }

    /// The field k_χ cut out by the kernel, at modulus f_χ.
    pub fn kernel_field(&self) -> AbelianField {
        let table = self.exp_table();
        AbelianField::from_predicate(self.conductor, format!("k_chi({})", self.conductor), |a| {
            table[a as usize] == Some(0)
        })
        .expect("kernel of a character is a subgroup")
    }

    /// True when χ does not factor through any maximal proper divisor of f_χ.
    pub fn certify_conductor(&self) -> bool {
        let fc = self.conductor;
        prime_divisors(fc).into_iter().all(|l| !self.trivial_on_kernel(fc / l))
    }

    fn trivial_on_kernel(&self, m: u64) -> bool {
        let f = self.field.modulus();
        let mut k = 1 % f;
        for _ in 0..(f / m) {
            if let Some(c) = self.field.coset(k) {
                if self.exps[c] != 0 {
                    return false;
                }
            }
            k = (k + m) % f;
        }
        true
    }
}

/// All d characters of G_K, trivial first.
pub fn characters_of(field: &Arc<AbelianField>) -> Vec<DirichletCharacter> {
    let f = field.modulus();
    let units = UnitGroupModF::new(f);
    let orders = units.orders();
    let r = orders.len();
    // relation lattice of G_K on the generators of (Z/fZ)^×
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for (j, &n) in orders.iter().enumerate() {
        let mut row = vec![0i128; r];
        row[j] = n as i128;
        rows.push(row);
    }
    for &h in field.subgroup_generators() {
        let e = units.dlog(h).expect("H consists of units");
        rows.push(e.into_iter().map(|x| x as i128).collect());
    }
    let (diag, v) = diagonalize(rows, r);
    let dims: Vec<(usize, u64)> = diag
        .iter()
        .enumerate()
        .filter(|(_, &dj)| dj > 1)
        .map(|(j, &dj)| (j, dj))
        .collect();
    let total: u64 = dims.iter().map(|&(_, d)| d).product();
    assert_eq!(total as usize, field.degree(), "character group order");
    let expo = dims.iter().fold(1u64, |acc, &(_, d)| lcm(acc, d));
    // coordinates of each coset representative
    let coords: Vec<Vec<u64>> = field
        .reps()
        .iter()
        .map(|&a| {
            let e = units.dlog(a % f.max(1)).expect("unit");
            dims.iter()
                .map(|&(j, dj)| {
                    let s: i128 = (0..r).map(|i| e[i] as i128 * v[i][j]).sum();
                    s.rem_euclid(dj as i128) as u64
                })
                .collect()
        })
        .collect();
    let mut ts: Vec<Vec<u64>> = vec![vec![]];
    for &(_, dj) in &dims {
        ts = ts
            .into_iter()
            .flat_map(|t| {
                (0..dj).map(move |x| {
                    let mut t2 = t.clone();
                    t2.push(x);
                    t2
                })
            })
            .collect();
    }
    let raw: Vec<Vec<u64>> = ts
        .iter()
        .map(|t| {
            coords
                .iter()
                .map(|c| {
                    let mut s = 0u128;
                    for (k, &(_, dj)) in dims.iter().enumerate() {
                        s += t[k] as u128 * c[k] as u128 * (expo / dj) as u128;
                    }
                    (s % expo as u128) as u64
                })
                .collect()
        })
        .collect();
    let index_of = |t: &[u64]| -> usize {
        let mut idx = 0usize;
        for (k, &(_, dj)) in dims.iter().enumerate() {
            idx = idx * dj as usize + t[k] as usize;
        }
        idx
    };
    raw.iter()
        .enumerate()
        .map(|(index, ex)| {
            let g = ex.iter().fold(expo, |acc, &x| gcd(acc, x));
            let order = expo / g;
            let exps: Vec<u64> = ex.iter().map(|&x| x / g).collect();
            let neg: Vec<u64> = ts[index]
                .iter()
                .zip(&dims)
                .map(|(&x, &(_, dj))| (dj - x) % dj)
                .collect();
            let mut chi = DirichletCharacter {
                field: Arc::clone(field),
                index,
                order,
                exps,
                conductor: f,
                conjugate: index_of(&neg),
            };
            chi.conductor = minimal_conductor(&chi);
            chi
        })
        .collect()
}

fn minimal_conductor(chi: &DirichletCharacter) -> u64 {
    let mut m = chi.field.modulus();
    'outer: loop {
        for l in prime_divisors(m) {
            if chi.trivial_on_kernel(m / l) {
                m /= l;
                continue 'outer;
            }
        }
        return m;
    }
}

/// Diagonalise the row lattice by unimodular row and column operations.
/// Returns the diagonal (length r) and the accumulated column transform V.
fn diagonalize(mut a: Vec<Vec<i128>>, r: usize) -> (Vec<u64>, Vec<Vec<i128>>) {
    let m = a.len();
    let mut v: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| i128::from(i == j)).collect()).collect();
    for t in 0..r {
        loop {
            // pivot: smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..r {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let piv = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_euclid(piv);
                if q != 0 {
                    for j in t..r {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..r {
                let q = a[t][j].div_euclid(piv);
                if q != 0 {
                    for i in t..m {
                        a[i][j] -= q * a[i][t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    let diag = (0..r).map(|t| a[t][t].unsigned_abs() as u64).collect();
    (diag, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{build_field, FieldSpec};

    #[test]
    fn cubic_characters() {
        let k = Arc::new(build_field(&FieldSpec::cyclic_prime(313, 3)).unwrap());
        let chars = characters_of(&k);
        assert_eq!(chars.len(), 3);
        assert!(chars[0].is_trivial());
        for c in &chars[1..] {
            assert_eq!(c.order(), 3);
            assert_eq!(c.conductor(), 313);
            assert!(c.certify_conductor());
            assert_eq!(chars[c.conjugate_index()].conjugate_index(), c.index());
            assert_ne!(c.conjugate_index(), c.index());
        }
    }

    #[test]
    fn quartic_composite_subfield_character() {
        let k = Arc::new(build_field(&FieldSpec::quartic_composite(5, 73)).unwrap());
        let chars = characters_of(&k);
        assert_eq!(chars.len(), 4);
        let quad: Vec<_> = chars.iter().filter(|c| c.order() == 2).collect();
        assert_eq!(quad.len(), 1);
        assert_eq!(quad[0].conductor(), 73);
        for c in chars.iter().filter(|c| c.order() == 4) {
            assert_eq!(c.conductor(), 365);
        }
    }

    #[test]
    fn rational_field_has_one_character() {
        let k = Arc::new(build_field(&FieldSpec::cyclic_prime(7, 1)).unwrap());
        let chars = characters_of(&k);
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].conductor(), 1);
    }
}
