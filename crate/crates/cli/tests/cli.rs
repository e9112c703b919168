use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel).to_string_lossy().into_owned()
}

fn latalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latalg")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn committed_gallery_matches_emitter() {
    let cases: &[(&str, &[&str])] = &[
        ("twisted_linf2.json", &["twisted_linf2"]),
        ("pointwise_3.json", &["pointwise", "3"]),
        ("pointwise_weighted_2.json", &["pointwise", "--weights", "2,3"]),
        ("c0_R_1.json", &["c0_R", "1"]),
        ("c0_R_2.json", &["c0_R", "2"]),
        ("cyclic_convolution_3.json", &["cyclic_convolution", "3"]),
        ("cyclic_convolution_4.json", &["cyclic_convolution", "4"]),
        ("zero_product_1.json", &["zero_product", "1"]),
    ];
    for (file, args) in cases {
        let out = latalg(&[&["gallery", "emit"], *args].concat());
        assert!(out.status.success(), "{file}");
        let committed = std::fs::read_to_string(data(&format!("gallery/{file}"))).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), committed, "{file}");
        let spec = latalg::format::parse_spec(&committed).unwrap();
        assert_eq!(latalg::format::emit_spec(&spec), committed, "{file}");
    }
}

#[test]
fn check_exit_codes() {
    let out = latalg(&["check", &data("gallery/twisted_linf2.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["f_algebra"]["witness"]["entry"], json!([1, 1, 2]));
    assert_eq!(r["almost_f_algebra"]["holds"], json!(true));
    assert_eq!(r["identity"]["element"], Value::Null);

    let out = latalg(&["check", &data("gallery/pointwise_3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["ideal"]["norms_coincide"]["holds"], json!(true));

    for bad in ["invalid/zero_weight.json", "invalid/non_canonical_weight.json", "missing.json"] {
        let out = latalg(&["check", &data(bad)]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).contains("invalid input"));
    }
}

#[test]
fn required_checks_select_the_exit_code() {
    let twisted = data("gallery/twisted_linf2.json");
    assert_eq!(latalg(&["check", &twisted, "--require", "positive,almost-f-algebra"]).status.code(), Some(0));
    assert_eq!(latalg(&["check", &twisted, "--require", "identity"]).status.code(), Some(1));
    let cyclic = data("gallery/cyclic_convolution_3.json");
    assert_eq!(latalg(&["check", &cyclic, "--require", "submultiplicative,identity-norm-one"]).status.code(), Some(0));
    assert_eq!(latalg(&["check", &cyclic, "--require", "am-norm"]).status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let path = data("gallery/pointwise_weighted_2.json");
    let a = latalg(&["check", &path, "--seed", "11"]);
    let b = latalg(&["check", &path, "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(latalg(&["demo-sparse", "--seed", "4"]).stdout, latalg(&["demo-sparse", "--seed", "4"]).stdout);
}

#[test]
fn quotient_reports() {
    let out = latalg(&["quotient", &data("constraints/glue_and_vanish.json")]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["classes"], json!([[1, 2], [3]]));
    assert_eq!(r["zero_points"], json!([3]));
    assert_eq!(r["dimension"], json!(1));

    let out = latalg(&["quotient", &data("constraints/half_scaling.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["subalgebra"], json!(false));
}

#[test]
fn represent_and_reject() {
    let out = latalg(&["represent", &data("gallery/pointwise_weighted_2.json")]);
    assert!(out.status.success());
    assert_eq!(report(&out)["transported"]["product"]["entries"], json!([[1, 1, 1, "1"], [2, 2, 2, "1"]]));
    let out = latalg(&["represent", &data("gallery/c0_R_2.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order unit"));
}

#[test]
fn alt_products() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("ast.json");
    let out = latalg(&[
        "alt-product",
        &data("gallery/zero_product_1.json"),
        "--kind",
        "ast",
        "--phi",
        "1,0",
        "--x0",
        "1,0",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&target).unwrap(),
        std::fs::read_to_string(data("gallery/c0_R_1.json")).unwrap()
    );

    let out = latalg(&["alt-product", &data("gallery/c0_R_2.json"), "--kind", "star", "--alpha", "3", "--beta", "3"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["differences"][0]["pair"], json!([1, 1]));
    assert_eq!(r["checks"]["associative"], json!(true));

    let out = latalg(&["alt-product", &data("gallery/c0_R_2.json"), "--kind", "star", "--alpha", "1", "--beta", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = latalg(&["alt-product", &data("gallery/c0_R_2.json"), "--kind", "star", "--alpha", "9", "--beta", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn martignon_and_usage() {
    let out = latalg(&["martignon", "4"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "unique solution: pointwise\n");
    assert_eq!(latalg(&["martignon", "0"]).status.code(), Some(2));
    assert_eq!(latalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(latalg(&["gallery", "emit", "c0_R"]).status.code(), Some(2));
}
