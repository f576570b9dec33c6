use std::sync::Arc;

use proptest::prelude::*;

use stickel::fields::arith::{gcd, is_prime};
use stickel::fields::{build_field, characters_of, AbelianField, FieldSpec};
use stickel::group_algebra::{spiegel, wt_equiv, GroupRingElement, IntMod, Rationals, SpiegelContext};
use stickel::stickelberger::{
    annihilator_measure, delta_c, lambda_coeff, lambda_sum, lambda_sum_naive, stickelberger_c, stickelberger_raw,
    LambdaSum, LoopRange,
};

fn small_level() -> impl Strategy<Value = (u64, u64, u32)> {
    (1u64..40, prop::sample::select(vec![2u64, 3, 5, 7]), 0u32..2).prop_filter("p ∤ f", |(f, p, _)| f % p != 0)
}

fn odd_c_for(m: u64) -> u64 {
    (3..).step_by(2).find(|&c| gcd(c, m) == 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn spiegel_is_an_involution((f, p, n) in small_level(), seed in 0u64..1000) {
        let ln = Arc::new(AbelianField::cyclotomic(f).unwrap().ln_field(p, n).unwrap());
        let ring = IntMod::new(p, n + 1);
        let coeffs: Vec<u64> = (0..ln.degree() as u64).map(|i| (seed * 31 + i * i * 7 + i) % ring.modulus()).collect();
        let x = GroupRingElement::from_u64s(&ln, ring, &coeffs).unwrap();
        let ctx = SpiegelContext::new(p, n);
        prop_assert_eq!(spiegel(&spiegel(&x, &ctx).unwrap(), &ctx).unwrap(), x);
    }

    #[test]
    fn spiegel_is_multiplicative((f, p, n) in small_level(), s in 0u64..50) {
        let ln = Arc::new(AbelianField::cyclotomic(f).unwrap().ln_field(p, n).unwrap());
        let ring = IntMod::new(p, n + 1);
        let m = ring.modulus();
        let d = ln.degree() as u64;
        let x = GroupRingElement::from_u64s(&ln, ring, &(0..d).map(|i| (s + 3 * i) % m).collect::<Vec<_>>()).unwrap();
        let y = GroupRingElement::from_u64s(&ln, ring, &(0..d).map(|i| (s * i + 1) % m).collect::<Vec<_>>()).unwrap();
        let ctx = SpiegelContext::new(p, n);
        let lhs = spiegel(&x.mul(&y).unwrap(), &ctx).unwrap();
        let rhs = spiegel(&x, &ctx).unwrap().mul(&spiegel(&y, &ctx).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lambda_antisymmetry(f_n in 2u64..5000, c_half in 1u64..40, a_seed in 0u64..5000) {
        let c = 2 * c_half + 1;
        prop_assume!(gcd(c, f_n) == 1);
        let a = (1..=f_n).map(|k| (a_seed + k) % f_n).find(|&a| a != 0 && gcd(a, f_n) == 1).unwrap();
        let l = lambda_coeff(a, c, f_n).unwrap();
        prop_assert!(l < c);
        prop_assert_eq!(l + lambda_coeff(f_n - a, c, f_n).unwrap(), c - 1);
    }

    #[test]
    fn stickelberger_c_is_delta_times_s(f in 2u64..200, c_half in 1u64..30) {
        let c = 2 * c_half + 1;
        prop_assume!(gcd(c, f) == 1);
        let k = Arc::new(AbelianField::cyclotomic(f).unwrap());
        let s = stickelberger_c(&k, c, false).unwrap();
        let expect = delta_c(&k, Rationals, c).unwrap().mul(&stickelberger_raw(f, &k, false).unwrap()).unwrap();
        prop_assert_eq!(s.to_rational(), expect);
    }

    #[test]
    fn measure_matches_spiegel_of_s((f, p, n) in small_level()) {
        let ln = Arc::new(AbelianField::cyclotomic(f).unwrap().ln_field(p, n).unwrap());
        let c = odd_c_for(ln.modulus());
        let measure = annihilator_measure(&ln, c, p, n).unwrap();
        let s = stickelberger_c(&ln, c, false).unwrap().reduce_mod(IntMod::new(p, n + 1));
        prop_assert!(wt_equiv(&measure, &spiegel(&s, &SpiegelContext::new(p, n)).unwrap(), p, n));
    }

    #[test]
    fn hot_loop_matches_naive(f in prop::sample::select(vec![7u64, 13, 19, 31, 37, 43]), ex in 0u32..2, full in any::<bool>()) {
        let k = Arc::new(build_field(&FieldSpec::cyclic_prime(f, 3)).unwrap());
        let p = 7u64;
        prop_assume!(f != p);
        let m = ex + 1;
        let f_n = f * p.pow(m);
        let c = odd_c_for(f_n);
        let range = if full { LoopRange::Full } else { LoopRange::Half };
        let params = LambdaSum { f_n, c, p, m, range };
        prop_assert_eq!(lambda_sum(&k, &params).unwrap(), lambda_sum_naive(&k, &params).unwrap());
    }

    #[test]
    fn characters_are_orthogonal(f in (5u64..120).prop_filter("prime", |&f| is_prime(f)), d in prop::sample::select(vec![2u64, 3, 4])) {
        prop_assume!((f - 1) % d == 0 && ((f - 1) / d) % 2 == 0);
        let k = Arc::new(build_field(&FieldSpec::cyclic_prime(f, d)).unwrap());
        let chars = characters_of(&k);
        prop_assert_eq!(chars.len(), d as usize);
        for chi in chars.iter().filter(|c| !c.is_trivial()) {
            // Σ_σ χ(σ) = 0: exponents are equidistributed
            let mut counts = vec![0usize; chi.order() as usize];
            for i in 0..k.degree() {
                counts[chi.exp_on_coset(i) as usize] += 1;
            }
            prop_assert!(counts.iter().all(|&c| c == counts[0]));
        }
    }
}
