use std::sync::Arc;

use crate::fields::arith::{gcd, invmod, ipow, mulmod};
use crate::fields::{q_of, AbelianField};

use super::element::GroupRingElement;
use super::ring::IntMod;

/// Extra generators allowed in the ≈ lattice beyond p^{n+1} and α_K.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// the norm element Σ σ
    Norm,
    /// (1 − s_∞)σ for every σ
    OneMinusSinf,
}

/// α_K = Σ_{a ≤ f_n, (a, f_n) = 1} a^{-1}·(K/a) mod p^{n+1}, f_n = lcm(f_K, q p^n).
pub fn alpha_k(field: &AbelianField, p: u64, n: u32) -> Vec<u64> {
    let pm = ipow(p, n + 1);
    let qpn = q_of(p) * ipow(p, n);
    let fk = field.modulus();
    let g = gcd(fk, qpn);
    let mut t = vec![0u64; g as usize];
    for u in 1..qpn {
        if u % p == 0 {
            continue;
        }
        let inv = invmod(u % pm, pm).expect("unit");
        let r = (u % g) as usize;
        t[r] = (t[r] + inv) % pm;
    }
    let mut out = vec![0u64; field.degree()];
    for b in 0..fk.max(1) {
        if let Some(c) = field.coset(b) {
            out[c] = (out[c] + t[(b % g) as usize]) % pm;
        }
    }
    out
}

/// Whether `target` lies in the Z/p^k-span of `gens`.
pub fn lattice_contains(target: &[u64], gens: &[Vec<u64>], p: u64, k: u32) -> bool {
    let m = ipow(p, k);
    let val = |x: u64| -> u32 {
        if x.is_multiple_of(m) {
            k
        } else {
            let mut v = 0;
            let mut y = x;
            while y.is_multiple_of(p) {
                y /= p;
                v += 1;
            }
            v
        }
    };
    let mut rows: Vec<Vec<u64>> = gens.iter().map(|g| g.iter().map(|&x| x % m).collect()).collect();
    let mut pivots: Vec<(Vec<u64>, usize, u32)> = Vec::new();
    loop {
        let mut best: Option<(usize, usize, u32)> = None;
        for (ri, row) in rows.iter().enumerate() {
            for (ci, &x) in row.iter().enumerate() {
                let v = val(x);
                if v < k && best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((ri, ci, v));
                }
            }
        }
        let Some((ri, ci, v)) = best else { break };
        let mut row = rows.swap_remove(ri);
        let pv = ipow(p, v);
        let unit_inv = invmod(row[ci] / pv, m).expect("unit part");
        for x in row.iter_mut() {
            *x = mulmod(*x, unit_inv, m);
        }
        for other in rows.iter_mut() {
            let t = other[ci] / pv;
            if t != 0 {
                for (o, &r) in other.iter_mut().zip(&row) {
                    *o = (*o + m - mulmod(t, r, m)) % m;
                }
            }
        }
        pivots.push((row, ci, v));
    }
    let mut t: Vec<u64> = target.iter().map(|&x| x % m).collect();
    for (row, ci, v) in &pivots {
        let pv = ipow(p, *v);
        if !t[*ci].is_multiple_of(pv) {
            return false;
        }
        let c = t[*ci] / pv;
        for (x, &r) in t.iter_mut().zip(row) {
            *x = (*x + m - mulmod(c, r, m)) % m;
        }
    }
    t.iter().all(|&x| x == 0)
}

/// A ≈ B: A − B ∈ p^{n+1}Z[G_K] + Z·α_K.
pub fn wt_equiv(a: &GroupRingElement<IntMod>, b: &GroupRingElement<IntMod>, p: u64, n: u32) -> bool {
    wt_equiv_with(a, b, p, n, &[])
}

/// A ≈ B in the lattice enlarged by the given relations.
pub fn wt_equiv_with(
    a: &GroupRingElement<IntMod>,
    b: &GroupRingElement<IntMod>,
    p: u64,
    n: u32,
    extra: &[Relation],
) -> bool {
    let k = n + 1;
    assert!(a.ring().precision() >= k && b.ring().precision() >= k, "precision below p^(n+1)");
    let Ok(diff) = a.truncate(k).sub(&b.truncate(k)) else {
        return false;
    };
    let field: &Arc<AbelianField> = a.field();
    let mut gens = vec![alpha_k(field, p, n)];
    let d = field.degree();
    for r in extra {
        match r {
            Relation::Norm => gens.push(vec![1; d]),
            Relation::OneMinusSinf => {
                let s = field.s_inf();
                for i in 0..d {
                    let mut v = vec![0u64; d];
                    let j = field.mul(s, i);
                    v[i] = (v[i] + 1) % ipow(p, k);
                    v[j] = (v[j] + ipow(p, k) - 1) % ipow(p, k);
                    gens.push(v);
                }
            }
        }
    }
    lattice_contains(diff.coeffs(), &gens, p, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_basics() {
        // span of (2, 0) and (0, 4) mod 8
        let gens = vec![vec![2, 0], vec![0, 4]];
        assert!(lattice_contains(&[6, 4], &gens, 2, 3));
        assert!(!lattice_contains(&[1, 0], &gens, 2, 3));
        assert!(!lattice_contains(&[0, 2], &gens, 2, 3));
        // a single vector with mixed valuations
        let gens = vec![vec![2, 4]];
        assert!(lattice_contains(&[6, 4], &gens, 2, 3));
        assert!(!lattice_contains(&[2, 0], &gens, 2, 3));
    }
}
