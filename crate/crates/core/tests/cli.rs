use std::process::{Command, Output};

fn gkloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkloc")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_single_case() {
    let o = gkloc(&["verify", "--family", "A", "--lambda=-4", "--window=-10:10"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["verdict"], "exact-match");
    assert_eq!(v[0]["lambda"], -4);
    assert_eq!(v[0]["pairs_compared"][0]["s"], 0);
    assert_eq!(v[0]["ledger"]["anticanonical_X"], 2);
}

#[test]
fn verify_borel_weil_bott() {
    let o = gkloc(&["verify", "--family", "C", "--lambda", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["side_a"][0]["degree"], 1);
    assert_eq!(v[0]["side_b"][0]["weight"][0], 3);
}

#[test]
fn product_family_with_csv() {
    let path = std::env::temp_dir().join("gkloc_cli_product.csv");
    let p = path.to_str().unwrap();
    let o = gkloc(&["verify", "--family", "D", "--lambda=-2,-3", "--window=-4:4", "--csv", p]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("case,side,degree,weight,parity,mult"));
    assert!(text.lines().count() > 1);
}

#[test]
fn one_sided_commands() {
    let a = gkloc(&["induce", "--family", "B", "--lambda", "1", "--parity", "1", "--window=-3:3"]);
    let b = gkloc(&["localize", "--family", "B", "--lambda", "1", "--parity", "1", "--window=-3:3"]);
    assert_eq!((a.status.code(), b.status.code()), (Some(0), Some(0)));
    let (a, b) = (json(&a), json(&b));
    assert_eq!(a["degrees"].as_array().unwrap().len(), 3);
    assert_eq!(a["degrees"][0]["character"], b["degrees"][0]["character"]);
}

#[test]
fn describe_family() {
    let o = gkloc(&["describe", "--family", "C"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["dim_u"], 1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "--family", "Q", "--lambda", "1"],
        vec!["verify", "--family", "A"],
        vec!["verify", "--family", "A", "--lambda", "1", "--window", "3"],
        vec!["verify", "--family", "A", "--lambda", "1", "--margin", "1"],
        vec!["describe"],
        vec!["frobnicate"],
    ] {
        let o = gkloc(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn selftest_passes() {
    let o = gkloc(&["selftest"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| l.starts_with("pass")));
    assert!(text.contains("negative-control-jacobi"));
    assert!(text.contains("negative-control-d-squared"));
}
