use std::process::{Command, Output};

use serde_json::Value;

fn qgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgrass")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_a2() {
    let out = qgrass(&["verify", "--quiver", "A2:F", "--dim", "1,1"]);
    assert!(out.status.success());
    let v = json(&out);
    for key in ["quiver", "dim", "sub", "covers", "checks", "failures"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["covers"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    assert_eq!(v["failures"], 0);
}

#[test]
fn verify_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = strip(json(&qgrass(&["verify", "--quiver", "A3:FB", "--dim", "1,2,1", "--jobs", "1"])));
    let b = strip(json(&qgrass(&["verify", "--quiver", "A3:FB", "--dim", "1,2,1", "--jobs", "3"])));
    assert_eq!(a, b);
}

#[test]
fn betti_both_methods() {
    let out = qgrass(&["betti", "--quiver", "A2:F", "--rep", "[1,2]x3", "--sub", "1,2", "--method", "both"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["poly"]["pretty"], "1 + 2q + 2q^2 + q^3");
    assert_eq!(v["poly"]["coeffs"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(v["agree"], true);

    let out = qgrass(&["betti", "--quiver", "A2:F", "--rep", "[1,2]x3", "--sub", "1,2", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1 + 2q + 2q^2 + q^3");
}

#[test]
fn pbw_kernel() {
    let out = qgrass(&["pbw", "--n", "2", "--i", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["kernel"]["pretty"], "q^2");
    assert_eq!(v["rep"], "[1,1],[1,2]x2,[2,2]");
    assert_eq!(v["sub"], serde_json::json!([1, 2]));
}

#[test]
fn strata_records() {
    let out = qgrass(&["strata", "--quiver", "A2:F", "--m", "[1,2]", "--n", "[1,1],[2,2]", "--sub", "1,0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["identity_ok"], true);
    assert_eq!(v["i1_sum"]["pretty"], "1");
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
}

#[test]
fn poset_formats() {
    let out = qgrass(&["poset", "--quiver", "A3:FF", "--dim", "1,1,1", "--format", "dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 4);

    let v = json(&qgrass(&["poset", "--quiver", "A3:FF", "--dim", "1,1,1"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(v["covers"].as_array().unwrap().len(), 4);
}

#[test]
fn errors_are_machine_readable() {
    let out = qgrass(&["betti", "--quiver", "A3:FFF", "--rep", "", "--sub", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "parse");

    let out = qgrass(&["betti", "--quiver", "A3:FF", "--rep", "[1,4]", "--sub", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = qgrass(&["strata", "--quiver", "A2:F", "--m", "[1,1],[2,2]", "--n", "[1,2]", "--sub", "1,0"]);
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "not_a_cover");

    let out = qgrass(&["pbw", "--n", "3", "--i", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
}
