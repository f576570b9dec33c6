use stickel::cli::run;

fn stickel(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("stickel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("stickel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn annihilate_cubic_313() {
    let (code, out, _) = stickel(&["annihilate", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7", "--ex", "1"]);
    assert_eq!(code, 0);
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("313\t") && row.contains("\t41 41 48\tnj=2\t"), "{row}");
}

#[test]
fn annihilate_quadratic_rows() {
    let (code, out, _) = stickel(&["annihilate", "--family", "quadratic", "--f", "1201", "--p", "2", "--ex", "11"]);
    assert_eq!(code, 0);
    assert!(out.contains("7752 3656\tA'=4096"), "{out}");
    let (code, out, _) = stickel(&["annihilate", "--family", "quadratic", "--f", "8", "--p", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("A'=1") && out.contains("K ∩ Q_∞ ≠ Q"), "{out}");
}

#[test]
fn annihilate_json() {
    let (code, out, _) =
        stickel(&["--format", "json", "annihilate", "--field", "kind=cyclic-prime; f=577; d=3", "--p", "7", "--ex", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["ordered"], serde_json::json!([183, 17, 280]));
    assert_eq!(v["stat"], "nj=2");
}

#[test]
fn config_file_and_override() {
    let cfg = tmp("c.cfg", "# cubic field\nfamily = cyclic-prime\nf = 313\nd = 3\np = 7\nex = 5\n");
    let path = cfg.to_str().unwrap();
    let (code, out, _) = stickel(&["annihilate", "--config", path, "--ex", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("41 41 48"), "{out}");
}

#[test]
fn invalid_configs_exit_2() {
    for args in [
        vec!["annihilate", "--family", "quadratic", "--f", "7", "--p", "2"],
        vec!["annihilate", "--family", "cyclic-prime", "--f", "313", "--d", "3"],
        vec!["annihilate", "--family", "quadratic", "--f", "8", "--p", "2", "--recipe", "cubic-p2"],
        vec!["annihilate", "--family", "cubic", "--f", "313", "--p", "7"],
        vec!["table", "--id", "no-such-table"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = stickel(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn overridden_recipe_runs() {
    let (code, out, _) = stickel(&[
        "annihilate", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7", "--ex", "1", "--recipe", "generic",
        "--override-recipe",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("\tgeneric\t"), "{out}");
}

#[test]
fn precision_underflow_exit_3() {
    let (code, _, err) = stickel(&["annihilate", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7", "--ex", "30"]);
    assert_eq!(code, 3, "{err}");
    let (code, _, err) = stickel(&["lp", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7", "--target", "40"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn table_subsets_pass() {
    let (code, out, err) = stickel(&["table", "--id", "cubic-p7", "--rows", "313,577,883,1117"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().filter(|l| l.contains("\tPASS\t")).count(), 4);
    assert!(out.contains("T=[7,7] (input)"));
    let (code, out, _) = stickel(&["table", "--id", "cubic-p13", "--rows", "1033,1459"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("\tPASS\t")).count(), 2);
}

#[test]
fn empty_range_prints_header_only() {
    let (code, out, err) = stickel(&["table", "--id", "cubic-p7", "--from", "2", "--to", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
    assert!(err.is_empty());
}

#[test]
fn golden_mismatch_exit_4() {
    let text = stickel::cli::bundled("cubic-p7").unwrap().replace("41 41 48", "41 41 47");
    let path = tmp("bad.tsv", &text);
    let before = std::fs::read_to_string(&path).unwrap();
    let (code, out, err) = stickel(&["table", "--id", "cubic-p7", "--rows", "313,577", "--golden", path.to_str().unwrap()]);
    assert_eq!(code, 4, "{err}");
    assert!(out.contains("FAIL: coefficients"), "{out}");
    assert!(out.contains("\tPASS\t"));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), before);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = |t: &'static str| vec!["--threads", t, "table", "--id", "quartic-prime-p2"];
    let (c1, a, _) = stickel(&args("1"));
    let (c2, b, _) = stickel(&args("3"));
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn lp_rows() {
    let (code, out, err) = stickel(&["--format", "json", "lp", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["f_chi"], 313);
        assert_eq!(v["d"], 3);
        assert_eq!(v["valuation"], "2");
    }
    assert!(err.contains("chi != 1: 2"), "{err}");
    let (_, _, err) = stickel(&["lp", "--family", "cyclic-prime", "--f", "1381", "--d", "3", "--p", "7", "--target", "6"]);
    assert!(err.contains("chi != 1: 4"), "{err}");
}

#[test]
fn lp_trivial_character_rejected() {
    let (code, _, err) = stickel(&["lp", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7", "--chi", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("trivial"));
}

#[test]
fn crosscheck_agrees() {
    let (code, out, err) = stickel(&["crosscheck", "--family", "quadratic", "--f", "5", "--p", "3"]);
    assert_eq!(code, 0, "{err}");
    assert!(!out.contains("DIFFER"));
    let (code, out, _) = stickel(&["crosscheck", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7", "--target", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("agree").count(), 5, "{out}");
}
