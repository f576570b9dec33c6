use rayon::prelude::*;

use stickel::cli::{check_row, load_golden, TABLE_IDS};

#[test]
fn every_bundled_row_reproduces() {
    for id in TABLE_IDS {
        let rows = load_golden(id, None).unwrap();
        let failures: Vec<String> = rows
            .par_iter()
            .map(check_row)
            .filter(|o| !o.pass())
            .map(|o| format!("{}: {:?} {:?}", o.row.source, o.report.as_ref().err(), o.mismatches))
            .collect();
        assert!(failures.is_empty(), "{id}: {failures:#?}");
    }
}

#[test]
fn provenance_is_recorded() {
    for id in TABLE_IDS {
        for row in load_golden(id, None).unwrap() {
            assert!(row.source.contains("table") || row.source.contains("example"), "{}", row.source);
            assert!(row.coefficients.is_some() || row.stat.is_some());
        }
    }
}

#[test]
fn composite_a_double_prime_pattern() {
    // 5·73: (A' − 3N)/2 ≡ 1 − σ + 2σ² (mod 4)
    let row = load_golden("quartic-composite-p2", None).unwrap().into_iter().find(|r| r.field.f == 365).unwrap();
    let r = check_row(&row).report.unwrap();
    let a2 = r.claim("A''").unwrap();
    let reduced: Vec<u64> = a2.coeffs.iter().map(|x| x % 4).collect();
    assert_eq!(reduced, [1, 3, 2, 0]);
}
