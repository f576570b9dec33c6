//! A'_{K,n}(c) for the cyclic cubic field of conductor 313 at p = 7, with its
//! character images and the claims the report is willing to make.
//!
//! cargo run --example annihilator -- [f] [ex]

use std::sync::Arc;

use stickel::fields::{build_field, FieldSpec};
use stickel::stickelberger::{annihilator_a, Recipe};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let f = args.next().unwrap_or(313);
    let ex = args.next().unwrap_or(1) as u32;

    let k = Arc::new(build_field(&FieldSpec::cyclic_prime(f, 3)).expect("cyclic cubic field"));
    let report = annihilator_a(&k, 7, None, ex, Recipe::CubicOddP).expect("annihilator");

    println!("K = {}, recipe {}, c = {}, f_n = {}", k.label(), report.setup.recipe, report.setup.c, report.setup.f_n);
    let sigma = report.setup.generator.expect("cyclic");
    println!("A' = {} (mod {})", report.coeffs.render_cyclic(sigma).unwrap(), report.modulus());
    println!("{}", report.stat);
    for ch in &report.per_character {
        println!("  chi[{}] order {} conductor {}: image {:?}, v_7(N) = {}", ch.index, ch.order, ch.conductor, ch.image, ch.norm_valuation);
    }
    for claim in &report.claims {
        println!("  {} = {:?} mod {}: {:?}", claim.element, claim.coeffs, claim.modulus, claim.status);
    }
}
