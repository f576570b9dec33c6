//! The λ-sum annihilator, the measure-style element restricted from L_n, and the
//! reconstruction from L-values, compared pairwise.

use std::sync::Arc;

use stickel::fields::{build_field, FieldSpec};
use stickel::lfunctions::crosscheck;

fn main() {
    let cases = [
        (FieldSpec::quadratic(5), 3u64, 0u32),
        (FieldSpec::quadratic(5), 3, 2),
        (FieldSpec::cyclic_prime(313, 3), 7, 1),
        (FieldSpec::cyclic_prime(577, 3), 7, 1),
        (FieldSpec::cyclic_prime(17, 4), 3, 1),
    ];
    for (spec, p, n) in cases {
        let k = Arc::new(build_field(&spec).unwrap());
        let r = crosscheck(&k, p, None, n).unwrap();
        println!(
            "{} p={p} n={n} c={}: lambda {:?} measure {:?} reconstruction {:?} -> {}",
            k.label(),
            r.c,
            r.lambda.coeffs(),
            r.measure.coeffs(),
            r.reconstruction.element.coeffs(),
            if r.all_agree() { "agree" } else { "DIFFER" }
        );
    }
}
