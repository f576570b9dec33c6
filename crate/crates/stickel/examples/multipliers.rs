//! Choice of the multiplier c by the valuation of N(1 − ψ(c)), and the
//! fixed-point exponent h for a quartic field over its quadratic subfield.

use std::sync::Arc;

use stickel::fields::{build_field, FieldSpec};
use stickel::stickelberger::{best_c, c_score, fixed_point_h};

fn main() {
    let k = Arc::new(build_field(&FieldSpec::cyclic_prime(313, 3)).unwrap());
    for c in [3u64, 5, 11, 323] {
        println!("f=313 p=7 c={c}: score {:?}", c_score(&k, 7, c).unwrap());
    }
    println!("best c for Q(sqrt 1201) at p=2: {:?}", best_c(&build_field(&FieldSpec::quadratic(1201)).unwrap(), 2, 100).unwrap());

    // cyclic quartic fields of prime conductor over Q(√f)
    for f in [17u64, 41, 73, 89, 113] {
        let big = build_field(&FieldSpec::cyclic_prime(f, 4)).unwrap();
        let small = build_field(&FieldSpec::quadratic(f)).unwrap();
        let fp = fixed_point_h(&big, &small, 2).unwrap();
        println!("{} over {}: h = {}, n0 = {}, primes {:?}", big.label(), small.label(), fp.h, fp.n0, fp.primes.iter().map(|p| p.l).collect::<Vec<_>>());
    }
}
