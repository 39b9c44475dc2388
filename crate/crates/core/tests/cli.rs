use std::process::Command;

use serde_json::{json, Value};

fn octo(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_octo"))
        .args(args)
        .env("OCTO_SEED", "0")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, stdout, stderr) = octo(args);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn verify_paper_counts() {
    let v = json_of(&["verify-paper"]);
    assert_eq!(v["schema"], "octo-involutions/1");
    assert_eq!(v["passed"], true);
    assert_eq!(
        v["counts"],
        json!({"R": 2, "C": 1, "Q2": 2, "Q3": 2, "Q5": 2, "Q7": 2,
               "F3": 1, "F5": 1, "F7": 1, "F11": 1, "Q": "≥2, non-exhaustive"})
    );
}

#[test]
fn classify_writes_identical_reports() {
    let dir = std::env::temp_dir().join(format!("octo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let args = ["classify", "--field", "Q", "--q-primes", "3,7", "--out", out.to_str().unwrap()];
    let (c1, s1, _) = octo(&args);
    let (c2, s2, _) = octo(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(s1, s2);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), s1);
    let v: Value = serde_json::from_str(&s1).unwrap();
    assert_eq!(v["count"], "≥2, non-exhaustive");
    assert_eq!(v["classes_found"], 4);
    assert_eq!(v["exhaustive"], false);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn classify_local_fields() {
    assert_eq!(json_of(&["classify", "--field", "Qp:7"])["count"], 2);
    assert_eq!(json_of(&["classify", "--field", "Fp:11"])["count"], 1);
    let v = json_of(&["classify", "--field", "Fp:5", "--probe-samples", "12"]);
    assert_eq!(v["classes"][0]["probe"]["kernel_exactly_scalar"], true);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["classify", "--field", "Fp:4"],
        vec!["classify", "--field", "Fp:2"],
        vec!["classify", "--field", "Qp:9"],
        vec!["classify", "--field", "X"],
        vec!["frobnicate"],
        vec!["hilbert", "--a", "1", "--b", "0", "--field", "Q"],
        vec!["element", "--name", "q:1,2", "--field", "Q"],
        vec!["classify", "--field", "Q", "--q-primes", "5"],
    ] {
        assert_eq!(octo(&args).0, 2, "{args:?}");
    }
}

#[test]
fn hilbert_outputs() {
    assert_eq!(json_of(&["hilbert", "--a", "-1", "--b", "-1", "--field", "R"])["symbol"], -1);
    assert_eq!(json_of(&["hilbert", "--a", "-1", "--b", "-1", "--field", "Qp:2"])["verdict"], "division");
    let v = json_of(&["hilbert", "--a", "-1", "--b", "7", "--field", "Q"]);
    assert_eq!(v["ramified_places"], json!(["2", "7"]));
    assert_eq!(json_of(&["hilbert", "--a", "-1", "--b", "3", "--field", "Q", "--place", "3"])["symbol"], -1);
}

#[test]
fn element_outputs() {
    assert_eq!(json_of(&["element", "--name", "t:1,-1", "--show", "order"])["order"], 2);
    assert_eq!(json_of(&["element", "--name", "t:2,1", "--show", "order"])["order"], "exceeds cap");
    let v = json_of(&["element", "--name", "st:1,-1", "--field", "R", "--show", "fixed-subalgebra"]);
    assert_eq!(v["presentation"], json!({"alpha": "-1", "beta": "-1"}));
    assert_eq!(v["fixed_basis"].as_array().unwrap().len(), 4);
    let v = json_of(&["element", "--name", "sp:7", "--field", "Q"]);
    assert_eq!(v["automorphism"], true);
    assert_eq!(v["order"], 2);
}

#[test]
fn fixed_subalgebra_command() {
    let v = json_of(&["fixed-subalgebra", "--name", "st:1,-1", "--field", "Q"]);
    assert_eq!(v["zero_divisor"]["outcome"], "anisotropic");
    let v = json_of(&["fixed-subalgebra", "--name", "s", "--field", "Q"]);
    assert_eq!(v["zero_divisor"]["outcome"], "pair");
    assert_eq!(v["invariant"]["verdict"], "split");
}

#[test]
fn form_and_double() {
    let v = json_of(&["form", "--coeffs", "1,1,1,1", "--field", "R", "--decide", "isotropy"]);
    assert_eq!(v["verdict"], "anisotropic");
    let v = json_of(&["form", "--coeffs", "1,-2,-3,6", "--field", "Fp:5"]);
    assert_eq!(v["verdict"], "isotropic");
    assert_eq!(v["witness"].as_array().unwrap().len(), 4);
    let v = json_of(&["form", "--coeffs", "1,1,1,-7", "--field", "Q"]);
    assert_eq!((v["verdict"].clone(), v["ramified_places"].clone()), (json!("anisotropic"), json!(["2"])));
    let v = json_of(&["double", "--alphas", "1,1,1", "--field", "Q"]);
    let chain = v["chain"].as_array().unwrap();
    assert_eq!(chain.len(), 4);
    assert_eq!(chain[3]["hurwitz"]["associative"], false);
    assert_eq!(chain[3]["composition"]["holds"], true);
}

#[test]
fn text_format() {
    let (code, out, _) = octo(&["classify", "--field", "R", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("field R: 2 classes"));
    assert!(out.contains("division"));
}
