use crate::fields::arith::{divisors, moebius};

/// Exact coefficients of Φ_n, lowest degree first.
///
/// Computed as Π_{d|n} (x^d − 1)^{μ(n/d)}: multiplications and exact divisions by binomials.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let deg = crate::fields::arith::euler_phi(n) as usize;
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for d in divisors(n) {
        match moebius(n / d) {
            1 => num = mul_binomial(&num, d as usize),
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        num = div_binomial(&num, d);
    }
    assert_eq!(num.len(), deg + 1, "degree of cyclotomic polynomial");
    num.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
        .collect()
}

/// p · (x^d − 1)
fn mul_binomial(p: &[i128], d: usize) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// p / (x^d − 1), asserting exactness.
fn div_binomial(p: &[i128], d: usize) -> Vec<i128> {
    let n = p.len() - 1;
    assert!(n >= d);
    let mut rem = p.to_vec();
    let mut q = vec![0i128; n - d + 1];
    for k in (d..=n).rev() {
        let c = rem[k];
        q[k - d] = c;
        rem[k] -= c;
        rem[k - d] += c;
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact division by x^{d} - 1");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_minus_two() {
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len(), 49);
        assert!(p.contains(&-2));
        assert!(p.iter().all(|&c| (-2..=1).contains(&c)));
    }
}
