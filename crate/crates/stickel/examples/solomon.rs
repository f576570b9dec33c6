//! Ψ_K for the cubic field of conductor 1381 at p = 7, evaluated at the two
//! nontrivial characters σ ↦ r with r a Teichmüller cube root of unity.

use std::sync::Arc;

use stickel::fields::{build_field, FieldSpec};
use stickel::lfunctions::{solomon_element, teichmuller, Normalization};
use stickel::stickelberger::{annihilator_a, Recipe};

fn main() {
    let k = Arc::new(build_field(&FieldSpec::cyclic_prime(1381, 3)).unwrap());
    let psi = solomon_element(&k, 7, 4, Normalization::Original).unwrap();
    let a = annihilator_a(&k, 7, None, 3, Recipe::CubicOddP).unwrap();
    let sigma = a.setup.generator.unwrap();
    println!("A' = {:?} mod 7^4", a.ordered());
    for r0 in [2u64, 4] {
        let r = teichmuller(r0, 7, 12);
        let value = psi.eval_cyclic(sigma, r);
        println!("r = teich({r0}) = {} mod 7^4: v_7(Psi(r)) = {}", r % 2401, psi.valuation_of(&value));
    }
}
