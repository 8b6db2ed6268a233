use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hyperlat::fixtures::fixture_dir;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hyperlat"));
    c.env_remove("HYPERLAT_PRECISION");
    c
}

fn fixture(sub: &str, name: &str) -> PathBuf {
    fixture_dir().join(sub).join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_examples() {
    let out = run(&["classify", path(&fixture("isometries", "pell"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["class"], "loxodromic");
    assert_eq!(v["rho_min_poly"], serde_json::json!([1, -6, 1]));
    assert!(v["entropy"]["lo"].is_string() && v["entropy"]["hi"].is_string());

    let v = json(&run(&["classify", path(&fixture("isometries", "swap"))]));
    assert_eq!(v["class"], "elliptic");
    assert_eq!(v["order"], 2);

    let v = json(&run(&["classify", path(&fixture("isometries", "para"))]));
    assert_eq!(v["class"], "parabolic");
}

#[test]
fn classify_with_perron_reports_a_cone_ray() {
    let v = json(&run(&[
        "classify",
        "--perron",
        path(&fixture("isometries", "pell")),
    ]));
    assert_eq!(v["perron"]["position"], "boundary");
}

#[test]
fn group_examples() {
    let v = json(&run(&[
        "group",
        path(&fixture("groups", "para")),
        "fibration-class",
    ]));
    assert_eq!(v["class_vector"], serde_json::json!([1, 0, 0]));

    let v = json(&run(&[
        "group",
        path(&fixture("groups", "pell")),
        "null-entropy",
    ]));
    assert_eq!(v["verdict"], "no");
    assert_eq!(v["witness_word"], serde_json::json!([0]));

    let v = json(&run(&[
        "group",
        path(&fixture("groups", "para")),
        "null-subset",
        "--word-bound",
        "2",
    ]));
    let elements = v["elements"].as_array().unwrap();
    assert!(!elements.is_empty());
    for e in elements {
        let identity = e["word"].as_array().unwrap().is_empty();
        assert!(identity || e["class"] == "parabolic", "{e}");
    }
}

#[test]
fn group_phi_on_pell_powers() {
    let v = json(&run(&[
        "group",
        path(&fixture("groups", "pell_powers")),
        "phi",
    ]));
    assert_eq!(v["is_discrete_cyclic"], true);
    assert_eq!(v["exponents"], serde_json::json!([1, 2, -1]));
    assert_eq!(v["lambda0"]["min_poly"], serde_json::json!([1, -6, 1]));
}

#[test]
fn equal_powers_examples() {
    let pell = fixture("isometries", "pell");
    let v = json(&run(&[
        "equal-powers",
        path(&pell),
        path(&fixture("isometries", "pell_squared")),
    ]));
    assert_eq!(
        (v["found"].clone(), v["t1"].clone(), v["t2"].clone()),
        (true.into(), 2.into(), 1.into())
    );
    let v = json(&run(&[
        "equal-powers",
        path(&pell),
        path(&fixture("isometries", "pell_cubed")),
    ]));
    assert_eq!((v["t1"].clone(), v["t2"].clone()), (3.into(), 1.into()));

    let out = run(&[
        "equal-powers",
        path(&fixture("isometries", "pell3")),
        path(&fixture("isometries", "pell3_conj")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["found"], false);
    assert_eq!(v["reason"], "no common polarizing ray");
}

#[test]
fn exit_codes() {
    let pell = fixture("isometries", "pell");
    // Lattice mismatch.
    let out = run(&[
        "equal-powers",
        path(&pell),
        path(&fixture("isometries", "pell3")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // Search bound too small for the relation.
    let out = run(&[
        "equal-powers",
        path(&pell),
        path(&fixture("isometries", "pell_cubed")),
        "--exponent-bound",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["found"], false);
    // Bad flag value.
    let out = run(&[
        "group",
        path(&fixture("groups", "pell")),
        "phi",
        "--word-bound",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Missing file.
    assert_eq!(
        run(&["classify", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
    // Wrong document kind.
    assert_eq!(
        run(&["classify", path(&fixture("groups", "pell"))])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn invalid_fixtures_are_rejected_with_a_location() {
    for name in ["e8_neg", "not_isometry", "cone_swap"] {
        let p = fixture("invalid", name);
        let out = run(&["validate", path(&p)]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty());
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(path(&p)), "{err}");
    }
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{\n  \"rank\": 2,\n  \"gram\": [[0, 1], [1, 0]\n}\n").unwrap();
    let out = run(&["validate", path(&p)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line"), "{err}");

    std::fs::write(
        &p,
        r#"{"rank": 2, "gram": [[0, 1], [2, 0]], "cone_ref": [1, 1]}"#,
    )
    .unwrap();
    let out = run(&["validate", path(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("gram"));
}

#[test]
fn relative_lattice_paths_resolve_next_to_the_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("mine.json"),
        r#"{"rank": 2, "gram": [[0, 1], [1, 0]], "cone_ref": [1, 1]}"#,
    )
    .unwrap();
    let iso = dir.path().join("g.json");
    std::fs::write(
        &iso,
        r#"{"lattice": "mine.json", "matrix": [[2, 0], [0, 1]]}"#,
    )
    .unwrap();
    // Not an isometry of U, so the lattice resolved and validation ran.
    let out = run(&["validate", path(&iso)]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(
        &iso,
        r#"{"lattice": "mine.json", "matrix": [[0, 1], [1, 0]]}"#,
    )
    .unwrap();
    let out = run(&["validate", path(&iso)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn precision_env_and_flag() {
    let pell = fixture("isometries", "pell");
    let coarse = bin()
        .env("HYPERLAT_PRECISION", "1/16")
        .args(["classify", path(&pell)])
        .output()
        .unwrap();
    let fine = run(&["classify", path(&pell)]);
    let flag = run(&["classify", "--precision", "1/16", path(&pell)]);
    assert_eq!(coarse.stdout, flag.stdout);
    assert_ne!(coarse.stdout, fine.stdout);
    let bad = bin()
        .env("HYPERLAT_PRECISION", "-3")
        .args(["classify", path(&pell)])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn output_is_one_line_of_sorted_json() {
    let out = run(&["classify", path(&fixture("isometries", "lehmer_coxeter"))]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with('\n') && text.trim_end().lines().count() == 1);
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["salem_kind"], "salem");
}
