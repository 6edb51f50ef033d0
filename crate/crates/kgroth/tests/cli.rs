use std::process::Command;

fn kgroth(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kgroth")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn compute_prints_polynomial() {
    let (code, out, _) = kgroth(&["compute", "g", "--outer", "1", "--nvars", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x1 + x2");
}

#[test]
fn compute_json_is_valid() {
    let (code, out, _) = kgroth(&["compute", "G", "--outer", "1", "--nvars", "1", "--cutoff", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.is_object());
}

#[test]
fn bad_usage_exits_two() {
    let (code, _, err) = kgroth(&["compute", "H", "--outer", "1"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn verify_reports_json() {
    let (code, out, _) = kgroth(&["verify", "duality", "--box", "2x2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suite"], "duality");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}
