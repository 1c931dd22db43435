use std::process::{Command, Output};

fn involutions(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_involutions"))
        .args(args)
        .env_remove("INVOLUTIONS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn single_value() {
    let o = involutions(&["invol", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "9496\n");
}

#[test]
fn cycle_index_and_determinant_agree() {
    let expected = "Y1^5 + 10 Y1^3 Y2 + 20 Y1^2 Y3 + 15 Y1 Y2^2 + 30 Y1 Y4 + 20 Y2 Y3\n";
    let o = involutions(&["restricted", "--n", "5", "--l", "4", "--cycle-index", "--format", "plain"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), expected);
    let o = involutions(&["restricted", "--n", "5", "--l", "4", "--determinant"]);
    assert_eq!(stdout(&o), expected);
}

#[test]
fn verify_exit_codes() {
    let o = involutions(&["verify", "--suite", "nu2-involution", "--max", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));

    let o = involutions(&["verify", "--suite", "periodicity", "--max", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("counterexample: periodicity: I(0 + 2^1) != I(0) mod 2^1"));

    let o = involutions(&["valuation", "periodicity", "--prime", "3", "--depth", "2", "--max", "200"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["invol", "--n", "abc"],
        &["invol", "--bogus"],
        &["verify", "--suite", "no-such-suite"],
        &["--threads", "0", "invol", "--n", "3"],
    ] {
        let o = involutions(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let o = involutions(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let help = stdout(&o);
    for flag in ["--format", "--threads", "INVOLUTIONS_THREADS"] {
        assert!(help.contains(flag), "help lacks {flag}");
    }
}

#[test]
fn formats() {
    let o = involutions(&["invol", "--max", "3", "--format", "bfile"]);
    assert_eq!(stdout(&o), "0 1\n1 1\n2 2\n3 4\n");

    let o = involutions(&["invol", "--max", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,involutions\n0,1\n1,1\n2,2\n3,4\n");

    let o = involutions(&["sums", "--max", "40", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "involutions.sequence/1");
    assert_eq!(v["values"][10], 13232);
    // a(40) exceeds u64 and must survive as an exact JSON number
    assert_eq!(v["values"][40].to_string(), involutions::partialsum::partial_sum(40).to_string());

    let o = involutions(&["oracle", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "involutions.census/1");
    assert_eq!(v["counts"]["2+2"], 3);
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 4] = [
        &["--format", "json", "restricted", "--n", "7", "--l", "3", "--cycle-index"],
        &["--threads", "3", "asym", "sweep", "--l", "2", "--max", "600"],
        &["valuation", "tree", "--prime", "5", "--depth", "3", "--format", "json"],
        &["verify", "--suite", "toeplitz", "--suite", "census-agreement", "--format", "json"],
    ];
    for args in cases {
        let a = involutions(args);
        let b = involutions(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn sweep_is_ordered_csv() {
    let o = involutions(&["asym", "sweep", "--l", "2", "--max", "500"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,l,exact,estimate,ratio,log_error"));
    let ns: Vec<u64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(ns.last(), Some(&500));
}

#[test]
fn suite_list_is_enumerable() {
    let o = involutions(&["verify", "--list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    for want in ["nu2-involution", "periodicity", "toeplitz", "beta-fit", "census-agreement"] {
        assert!(names.contains(&want), "missing {want}");
    }
}
