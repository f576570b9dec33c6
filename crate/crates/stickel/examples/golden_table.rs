//! Recompute a bundled table and compare it with the transcription.
//!
//! cargo run --release --example golden_table -- quartic-composite-p2

use stickel::cli::{check_row, load_golden, TABLE_IDS};

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "cubic-p7".to_string());
    if !TABLE_IDS.contains(&id.as_str()) {
        eprintln!("unknown table {id}; choose one of {TABLE_IDS:?}");
        std::process::exit(2);
    }
    println!("f\tp\tex\tcoefficients\tstat\tverdict");
    let mut failed = 0;
    for row in load_golden(&id, None).unwrap() {
        let outcome = check_row(&row);
        let (coeffs, stat) = match &outcome.report {
            Ok(r) => (format!("{:?}", r.ordered()), r.stat.to_string()),
            Err(e) => (e.to_string(), "-".into()),
        };
        let verdict = if outcome.pass() { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.pass());
        println!("{}\t{}\t{}\t{coeffs}\t{stat}\t{verdict}", row.field.f, row.p, row.ex);
    }
    println!("# {failed} mismatches");
}
