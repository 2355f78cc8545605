//! Command-level tests driving `run` directly.

use grpmat_cli::{run, EXIT_INPUT, EXIT_OK, EXIT_SCALE, EXIT_USAGE, EXIT_VERIFY};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["grpmat".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn verify_z4_passes() {
    let (code, out, _) = invoke(&["verify", "--group", "Z4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("solutions: 4, isomorphic: yes"));
    assert!(out.contains("result: PASS"));
}

#[test]
fn verify_all_cyclic_groups_pass() {
    for name in ["Z1", "Z2", "Z3", "Z5", "Z6", "Z7", "Z8"] {
        let (code, out, _) = invoke(&["verify", "--group", name]);
        assert_eq!(code, EXIT_OK, "{name}: {out}");
        assert!(out.contains("result: PASS"), "{name}");
    }
}

#[test]
fn verify_v4_reports_the_excess_solutions() {
    let (code, out, err) = invoke(&["verify", "--group", "V4"]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.contains("solutions: 8, isomorphic: no"), "{out}");
    assert!(err.contains("8 structured solutions, expected 4"), "{err}");
}

#[test]
fn iso_z4_v4() {
    let (code, out, _) = invoke(&["iso", "--g1", "Z4", "--g2", "V4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("isomorphic: no; canonical matrices differ"), "{out}");
    assert!(out.contains("agreement: yes"));
}

#[test]
fn iso_detects_relabeled_group() {
    let dir = std::env::temp_dir().join("grpmat-cli-iso");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z4_relabeled.json");
    // Z4 with the ordering e, a^2, a, a^3
    std::fs::write(
        &path,
        r#"{"n":4,"table":[[1,2,3,4],[2,4,][3,1]]}"#,
    )
    .unwrap();
    // malformed on purpose first: the parser must reject it
    let (code, _, err) = invoke(&["iso", "--g1", "Z4", "--g2", &format!("@{}", path.display())]);
    assert_eq!(code, EXIT_INPUT, "{err}");

    std::fs::write(
        &path,
        r#"{"n":4,"table":[[1,2,3,4],[2,3,4,1],[3,4,1,2],[4,1,2,3]]}"#,
    )
    .unwrap();
    let (code, out, _) = invoke(&["iso", "--g1", "Z4", "--g2", &format!("@{}", path.display())]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("isomorphic: yes; canonical matrices equal"), "{out}");
}

#[test]
fn iso_disagreement_is_reported() {
    // the recorded canonical collision: Z2xZ4 vs Q8
    let (code, out, _) = invoke(&["iso", "--g1", "Z2xZ4", "--g2", "Q8"]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.contains("canonical: equal"), "{out}");
    assert!(out.contains("brute force: not isomorphic"), "{out}");
    assert!(out.contains("agreement: no"), "{out}");
}

#[test]
fn census_small_orders() {
    let (code, out, _) = invoke(&["census", "--order", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("count: 2"), "{out}");
    assert!(out.contains("matrix 2:"));

    let (code, out, _) = invoke(&["census", "--order", "8"]);
    assert_eq!(code, EXIT_VERIFY, "the order-8 census misses one class");
    assert!(out.contains("count: 4"), "{out}");

    let (code, _, _) = invoke(&["census", "--order", "9"]);
    assert_eq!(code, EXIT_SCALE);
}

#[test]
fn build_then_solve_roundtrip() {
    let dir = std::env::temp_dir().join("grpmat-cli-build");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z4.bmat");
    let path_arg = path.display().to_string();
    let (code, out, _) = invoke(&["build", "--group", "Z4", "--out", &path_arg]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("n=4 mode=strict rows=12"), "{out}");

    let (code, out, _) = invoke(&["solve", "--b", &path_arg]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("solutions: 4"), "{out}");
    assert!(out.contains("sigma 2: (1 2 3 4)"), "{out}");
    assert!(out.contains("linear dimension: 112"), "{out}");
    assert!(out.contains("structured contained: yes"), "{out}");

    // byte determinism
    let (_, again, _) = invoke(&["solve", "--b", &path_arg]);
    assert_eq!(out, again);

    let (code, json, _) = invoke(&["solve", "--b", &path_arg, "--report", "json"]);
    assert_eq!(code, EXIT_OK);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["schema"], 1);
    assert_eq!(value["solution_count"], 4);
    assert_eq!(value["labeling_bijective"], true);
    assert!(value.get("x").is_none());

    let (_, with_x, _) = invoke(&["solve", "--b", &path_arg, "--report", "json", "--emit-x"]);
    let value: serde_json::Value = serde_json::from_str(&with_x).unwrap();
    assert_eq!(value["x"].as_array().unwrap().len(), 4);
}

#[test]
fn build_extended_and_solve() {
    let dir = std::env::temp_dir().join("grpmat-cli-ext");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z4_extended.bmat");
    let path_arg = path.display().to_string();
    let (code, out, _) = invoke(&[
        "build", "--group", "Z4", "--mode", "extended", "--out", &path_arg,
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("mode=extended rows=16"), "{out}");

    // the forced diagonal block is all zero; the solutions are unchanged
    let (code, out, _) = invoke(&["solve", "--b", &path_arg]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("solutions: 4"), "{out}");

    let path_s3 = dir.join("s3.bmat");
    let s3_arg = path_s3.display().to_string();
    let (code, _, _) = invoke(&["build", "--group", "S3", "--out", &s3_arg]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = invoke(&["solve", "--b", &s3_arg]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("solutions: 1"), "{out}");
}

#[test]
fn build_canonical_s3_is_strict() {
    let dir = std::env::temp_dir().join("grpmat-cli-canon");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3_canonical.bmat");
    let path_arg = path.display().to_string();
    let (code, out, _) = invoke(&["build", "--group", "S3", "--canonical", "--out", &path_arg]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("mode=strict"), "{out}");
    assert!(out.contains("ordering: 1 5 6 2 4 3"), "{out}");

    // strict-mode request on the standard ordering carries the diagonal error
    let path2 = dir.join("s3_strict.bmat");
    let (code, _, err) = invoke(&[
        "build",
        "--group",
        "S3",
        "--mode",
        "strict",
        "--out",
        &path2.display().to_string(),
    ]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(err.contains("column 4"), "{err}");
    assert!(err.contains("(23)"), "{err}");
}

#[test]
fn cohomology_report() {
    let (code, out, _) = invoke(&["cohomology", "--group", "Z4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(
        out.contains("d z1: 1 * w1^3 + 1 * x2^4 w1 w2 + 1 * x1^4 x2^2 y1 y2 + -1 * x1^5 x2 y1 y3 + 1 * x1^6 y2 y3 + 1 * x1^15"),
        "{out}"
    );
    assert!(out.contains("monomials 120: 69"), "{out}");
    assert!(out.contains("quotient: 51"), "{out}");
    assert!(out.contains("sigma independent: yes"));
    assert!(out.contains("b-matrix consistent: yes"));
    assert!(out.contains("result: PASS"));

    let (code, _, _) = invoke(&["cohomology", "--group", "Z6"]);
    assert_eq!(code, EXIT_SCALE);
}

#[test]
fn usage_errors() {
    let (code, _, err) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());

    let (code, _, _) = invoke(&["verify", "--group", "Z99"]);
    assert_eq!(code, EXIT_USAGE, "unknown catalog name is a usage error");

    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("census"));
}

#[test]
fn input_errors() {
    let (code, _, err) = invoke(&["solve", "--b", "/nonexistent/path.bmat"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("cannot read"));

    let dir = std::env::temp_dir().join("grpmat-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.bmat");
    std::fs::write(&path, "# n=4\n# mode=strict\n# rows=11 cols=4\n").unwrap();
    let (code, _, err) = invoke(&["solve", "--b", &path.display().to_string()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("layout mismatch"), "{err}");
}
