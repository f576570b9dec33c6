//! L_p(1, χ) from logarithms of cyclotomic numbers, and the p-adic valuation of
//! their product for the cubic fields of conductor 313 and 1381 at p = 7.

use std::sync::Arc;

use stickel::fields::{build_field, characters_of, FieldSpec};
use stickel::lfunctions::{analytic_valuation, lp_at_1};

fn main() {
    for f in [313u64, 1381] {
        let k = Arc::new(build_field(&FieldSpec::cyclic_prime(f, 3)).unwrap());
        for chi in characters_of(&k).iter().filter(|c| !c.is_trivial()) {
            let l = lp_at_1(chi, 7, 6).unwrap();
            assert_eq!(l.recombine().unwrap(), l.value);
            println!("f={f} chi[{}]: L_7(1) = {:?} mod 7^6, 7-adic digits {:?}", chi.index(), l.value, l.digits(3));
        }
        let v = analytic_valuation(&k, 7, 8).unwrap();
        println!("f={f}: v_7(prod L_7(1, chi)) = {:?}", v.l_product());
    }
}
