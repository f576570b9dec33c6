//! Norm relations between Stickelberger elements of Q(ζ_f) and Q(ζ_m), and the
//! cyclotomic-number relation in Q(ζ_55) → Q(ζ_5).

use stickel::lfunctions::eta_norm_relation;
use stickel::stickelberger::norm_relation_check;

fn main() {
    for (f, m) in [(15u64, 5u64), (21, 3), (55, 5), (60, 12)] {
        let r = norm_relation_check(f, m, None).unwrap();
        let zero = if r.euler.is_zero() { " (Euler factor 0)" } else { "" };
        println!("N(S_{f}) -> Q^{m}: {}{zero}", if r.holds { "holds" } else { "FAILS" });
    }
    for (f, m) in [(55u64, 5u64), (35, 5), (21, 7)] {
        let r = eta_norm_relation(f, m).unwrap();
        println!("eta_{f} -> Q^{m} over primes {:?}: {}", r.primes, if r.holds { "holds" } else { "FAILS" });
    }
}
