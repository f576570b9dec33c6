//! Elementary modular arithmetic on machine integers.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Reduce a signed value into `[0, m)`.
pub fn reduce_i128(v: i128, m: u64) -> u64 {
    v.rem_euclid(m as i128) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division, as (prime, exponent) pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn vp(mut n: u128, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let p = p as u128;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    Some(v)
}

pub fn vp_i128(n: i128, p: u64) -> Option<u32> {
    vp(n.unsigned_abs(), p)
}

pub fn ipow(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("integer power overflows u64")
}

/// Multiplicative order of `a` modulo `m`.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if gcd(a, m) != 1 {
        return None;
    }
    if m == 1 {
        return Some(1);
    }
    let mut ord = euler_phi(m);
    for (q, _) in factor(ord) {
        while ord.is_multiple_of(q) && powmod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    Some(ord)
}

/// Smallest positive primitive root modulo `m`, when the unit group is cyclic.
pub fn primitive_root(m: u64) -> Option<u64> {
    if m <= 2 {
        return Some(1);
    }
    let phi = euler_phi(m);
    let qs = prime_divisors(phi);
    (2..m).find(|&g| gcd(g, m) == 1 && qs.iter().all(|&q| powmod(g, phi / q, m) != 1))
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i32;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (a/b) for b ≥ 1.
pub fn kronecker(a: i64, b: u64) -> i32 {
    if b == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut b = b;
    let mut t = 1;
    while b.is_multiple_of(2) {
        b /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            t = -t;
        }
    }
    t * jacobi(a, b)
}

/// Baby-step giant-step discrete log: least x with g^x ≡ a (mod m), x < order.
pub fn dlog_bsgs(g: u64, a: u64, order: u64, m: u64) -> Option<u64> {
    let s = (order as f64).sqrt().ceil() as u64 + 1;
    let mut table = std::collections::HashMap::with_capacity(s as usize);
    let mut e = 1u64;
    for j in 0..s {
        table.entry(e).or_insert(j);
        e = mulmod(e, g, m);
    }
    let factor = invmod(powmod(g, s, m), m)?;
    let mut gamma = a % m;
    for i in 0..=s {
        if let Some(&j) = table.get(&gamma) {
            let x = i * s + j;
            if x < order {
                return Some(x);
            }
        }
        gamma = mulmod(gamma, factor, m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primroots_match_small_table() {
        assert_eq!(primitive_root(7), Some(3));
        assert_eq!(primitive_root(313), Some(10));
        assert_eq!(primitive_root(17), Some(3));
        assert_eq!(primitive_root(41), Some(6));
        assert_eq!(primitive_root(49), Some(3));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(1201, 7), 1);
        assert_eq!(kronecker(1201, 11), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(12, 5), -1);
    }

    #[test]
    fn bsgs_inverts_power() {
        for x in [0u64, 1, 77, 311] {
            let a = powmod(10, x, 313);
            assert_eq!(dlog_bsgs(10, a, 312, 313), Some(x));
        }
    }

    #[test]
    fn factor_and_phi() {
        assert_eq!(factor(1160), vec![(2, 3), (5, 1), (29, 1)]);
        assert_eq!(euler_phi(55), 40);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert!(is_prime(45161));
        assert!(!is_prime(1185));
    }
}
