//! Real cyclic quartic K = k(√…) of conductor mℓ over k = Q(√m), ℓ split in k:
//! the norm of η_K to k is 1, so Ψ_K restricts to 0 while A_k is not 0.

use stickel::lfunctions::{degeneracy_check, degenerate_pairs, degenerate_quartic};

fn main() {
    let pairs = degenerate_pairs(600);
    println!("{} admissible (m, l) with m·l <= 600", pairs.len());
    for (m, l) in pairs.into_iter().take(8) {
        let f = m * l;
        let p = [3u64, 5, 7, 11, 13].into_iter().find(|&p| f % p != 0 && (l - 1) % p != 0).unwrap();
        let inst = degenerate_quartic(m, l).unwrap();
        let r = degeneracy_check(&inst, p, 3, 1).unwrap();
        println!("{}", serde_json::to_string(&r).unwrap());
    }
}
