//! A_{L_n}(c) from the measure against S_{L_n}(c)* (Spiegel image), compared
//! modulo p^{n+1} and the α_K line.

use std::sync::Arc;

use stickel::fields::arith::gcd;
use stickel::fields::AbelianField;
use stickel::group_algebra::{spiegel, wt_equiv, IntMod, SpiegelContext};
use stickel::stickelberger::{annihilator_measure, stickelberger_c};

fn main() {
    for (f, p, n) in [(5u64, 3u64, 1u32), (7, 2, 1), (11, 5, 1), (13, 3, 2)] {
        let ln = Arc::new(AbelianField::cyclotomic(f).unwrap().ln_field(p, n).unwrap());
        let c = (3..).step_by(2).find(|&c| gcd(c, ln.modulus()) == 1 && c % p.max(4) != 1).unwrap();
        let measure = annihilator_measure(&ln, c, p, n).unwrap();
        let s = stickelberger_c(&ln, c, false).unwrap().reduce_mod(IntMod::new(p, n + 1));
        let s_star = spiegel(&s, &SpiegelContext::new(p, n)).unwrap();
        println!("L_n of conductor {} (degree {}), c = {c}: {}", ln.modulus(), ln.degree(), wt_equiv(&measure, &s_star, p, n));
    }
}
