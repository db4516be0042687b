//! End-to-end tests of the `bihom` binary: command surface, report
//! formats, determinism, and the 0/1/2 exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bihom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bihom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn code_of(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn path_str(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Runs `gen` writing to a file and returns the path.
fn gen_file(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.push("--out");
    full.push(path_str(&path));
    let out = bihom(&full);
    assert_eq!(code_of(&out), 0, "gen failed: {}", stderr_of(&out));
    path
}

#[test]
fn gen_families_and_check_pass() {
    let dir = TempDir::new().unwrap();
    let zero = gen_file(&dir, "zero.json", &["zero", "--n", "3"]);
    let out = bihom(&["check", path_str(&zero), "bhnp"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("suite bhnp: PASS"));

    let nil = gen_file(&dir, "nil.json", &["nilpotent", "--m", "2", "--a", "-1", "--b", "-1"]);
    let text = std::fs::read_to_string(&nil).unwrap();
    assert!(text.contains("\"derivation\""));

    // Deterministic output: generating twice gives identical bytes.
    let again = gen_file(&dir, "nil2.json", &["nilpotent", "--m", "2", "--a", "-1", "--b", "-1"]);
    assert_eq!(text, std::fs::read_to_string(&again).unwrap());
}

#[test]
fn gen_zero_empty_carrier_passes_everything() {
    let dir = TempDir::new().unwrap();
    let zero = gen_file(&dir, "empty.json", &["zero", "--n", "0"]);
    for suite in ["bhnp", "bihom-assoc", "left-bihom-assoc", "classical-np"] {
        let out = bihom(&["check", path_str(&zero), suite]);
        assert_eq!(code_of(&out), 0, "suite {suite}: {}", stderr_of(&out));
    }
}

#[test]
fn derivation_pipeline_matches_documented_example() {
    let dir = TempDir::new().unwrap();
    let poly = gen_file(&dir, "p3.json", &["truncated-poly", "--n", "3", "--a", "-1", "--b", "1"]);
    let bundle = dir.path().join("p3-bhnp.json");
    let out = bihom(&[
        "construct",
        "derivation-bhnp",
        path_str(&poly),
        "--verify",
        "--out",
        path_str(&bundle),
    ]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));

    let out = bihom(&["check", path_str(&bundle), "bhnp"]);
    assert_eq!(code_of(&out), 0);

    // The unital derivation bundle is not left BiHom-associative: exit 1
    // with a witness triple in the report.
    let out = bihom(&["check", path_str(&bundle), "left-bihom-assoc"]);
    assert_eq!(code_of(&out), 1);
    let text = stdout_of(&out);
    assert!(text.contains("FAIL left_bihom_assoc"));
    assert!(text.contains("witness ("));
}

#[test]
fn check_json_format_and_witness_cap() {
    let dir = TempDir::new().unwrap();
    let poly = gen_file(&dir, "p3.json", &["truncated-poly", "--n", "3", "--a", "-1", "--b", "1"]);
    let bundle = dir.path().join("bhnp.json");
    let out = bihom(&[
        "construct",
        "derivation-bhnp",
        path_str(&poly),
        "--out",
        path_str(&bundle),
    ]);
    assert_eq!(code_of(&out), 0);

    let out = bihom(&[
        "check",
        path_str(&bundle),
        "left-bihom-assoc",
        "--format",
        "json",
        "--max-witnesses",
        "1",
    ]);
    assert_eq!(code_of(&out), 1);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["suite"], serde_json::json!("left-bihom-assoc"));
    assert_eq!(doc["passed"], serde_json::json!(false));
    let first = &doc["checks"][0];
    assert_eq!(first["witnesses"].as_array().unwrap().len(), 1);
    assert_eq!(first["truncated"], serde_json::json!(true));

    // Byte-stable reports: same invocation, same bytes.
    let again = bihom(&[
        "check",
        path_str(&bundle),
        "left-bihom-assoc",
        "--format",
        "json",
        "--max-witnesses",
        "1",
    ]);
    assert_eq!(stdout_of(&out), stdout_of(&again));
}

#[test]
fn construct_tensor_and_bracket_round_trip() {
    let dir = TempDir::new().unwrap();
    let poly = gen_file(&dir, "p2.json", &["truncated-poly", "--n", "2", "--a", "-1", "--b", "-1"]);
    let bundle = dir.path().join("p2-bhnp.json");
    assert_eq!(
        code_of(&bihom(&[
            "construct",
            "derivation-bhnp",
            path_str(&poly),
            "--out",
            path_str(&bundle)
        ])),
        0
    );

    let tensor = dir.path().join("t.json");
    let out = bihom(&[
        "construct",
        "tensor",
        path_str(&bundle),
        path_str(&bundle),
        "--verify",
        "--out",
        path_str(&tensor),
    ]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    let out = bihom(&["check", path_str(&tensor), "bhnp"]);
    assert_eq!(code_of(&out), 0);

    let bracket = dir.path().join("br.json");
    assert_eq!(
        code_of(&bihom(&[
            "construct",
            "bracket",
            path_str(&bundle),
            "--out",
            path_str(&bracket)
        ])),
        0
    );
    let out = bihom(&["check", path_str(&bracket), "bihom-lie"]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    // Provenance records the construction.
    let text = std::fs::read_to_string(&bracket).unwrap();
    assert!(text.contains("\"construction\": \"bracket\""));
}

#[test]
fn construct_perturbations_with_auto_element() {
    let dir = TempDir::new().unwrap();
    let poly = gen_file(&dir, "p2.json", &["truncated-poly", "--n", "2", "--a", "-1", "--b", "-1"]);
    let bundle = dir.path().join("p2-bhnp.json");
    assert_eq!(
        code_of(&bihom(&[
            "construct",
            "derivation-bhnp",
            path_str(&poly),
            "--out",
            path_str(&bundle)
        ])),
        0
    );
    for kind in ["perturb-thm1", "perturb-thm2", "perturb-mu"] {
        let out_path = dir.path().join(format!("{kind}.json"));
        let out = bihom(&[
            "construct",
            kind,
            path_str(&bundle),
            "--element",
            "auto",
            "--verify",
            "--out",
            path_str(&out_path),
        ]);
        assert_eq!(code_of(&out), 0, "{kind}: {}", stderr_of(&out));
    }
    let both = dir.path().join("double.json");
    let out = bihom(&[
        "construct",
        "perturb-double",
        path_str(&bundle),
        "--element",
        "1,0",
        "--element-b",
        "auto",
        "--verify",
        "--out",
        path_str(&both),
    ]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
}

#[test]
fn yau_twist_takes_inline_and_file_matrices() {
    let dir = TempDir::new().unwrap();
    let poly = gen_file(&dir, "p2.json", &["truncated-poly", "--n", "2", "--a", "-1", "--b", "-1"]);
    let bundle = dir.path().join("p2-bhnp.json");
    assert_eq!(
        code_of(&bihom(&[
            "construct",
            "derivation-bhnp",
            path_str(&poly),
            "--out",
            path_str(&bundle)
        ])),
        0
    );
    let sign = r#"[["1","0"],["0","-1"]]"#;
    let matrix_path = dir.path().join("sign.json");
    std::fs::write(&matrix_path, sign).unwrap();
    let at_arg = format!("@{}", path_str(&matrix_path));
    let out = bihom(&[
        "construct",
        "yau-twist",
        path_str(&bundle),
        "--ta",
        sign,
        "--tb",
        &at_arg,
        "--verify",
    ]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    // Output went to stdout and parses as a file.
    let file = bihom::format::AlgebraFile::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(file.dim, 2);
}

#[test]
fn usage_and_validation_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let zero = gen_file(&dir, "zero.json", &["zero", "--n", "2"]);

    // Unknown suite.
    assert_eq!(code_of(&bihom(&["check", path_str(&zero), "no-such-suite"])), 2);
    // Unknown construction kind.
    assert_eq!(code_of(&bihom(&["construct", "no-such-kind", path_str(&zero)])), 2);
    // Unknown generator family.
    assert_eq!(code_of(&bihom(&["gen", "no-such-family", "--n", "1"])), 2);
    // Missing generator parameter.
    assert_eq!(code_of(&bihom(&["gen", "truncated-poly"])), 2);
    // Missing file.
    assert_eq!(code_of(&bihom(&["check", "/nonexistent.json", "bhnp"])), 2);
    // Clap-level usage error.
    assert_eq!(code_of(&bihom(&["check"])), 2);

    // Suite needs a product the file lacks.
    let poly = gen_file(&dir, "p2.json", &["truncated-poly", "--n", "2", "--a", "-1", "--b", "-1"]);
    let out = bihom(&["check", path_str(&poly), "bhnp"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("SuiteInapplicable"));

    // bihom-lie needs a bracket, a star bundle is not enough.
    let bundle = dir.path().join("bhnp.json");
    assert_eq!(
        code_of(&bihom(&[
            "construct",
            "derivation-bhnp",
            path_str(&poly),
            "--out",
            path_str(&bundle)
        ])),
        0
    );
    assert_eq!(code_of(&bihom(&["check", path_str(&bundle), "bihom-lie"])), 2);

    // classical-np rejects non-identity maps.
    let out = bihom(&["check", path_str(&bundle), "classical-np"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("NotClassical"));
}

#[test]
fn validation_of_bundle_data_exits_2() {
    let dir = TempDir::new().unwrap();
    let zero = gen_file(&dir, "zero.json", &["zero", "--n", "2"]);
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&zero).unwrap()).unwrap();
    // Non-commuting maps: alpha nilpotent shift, beta a generic diagonal.
    doc["alpha"] = serde_json::json!([["0", "1"], ["0", "0"]]);
    doc["beta"] = serde_json::json!([["1", "0"], ["0", "2"]]);
    let bad = dir.path().join("bad-maps.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = bihom(&["check", path_str(&bad), "bhnp"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("maps_commute"));
}

#[test]
fn singular_maps_and_missing_fixed_points_exit_2() {
    let dir = TempDir::new().unwrap();
    // alpha = diag(1, 0) is a valid algebra endomorphism of the truncated
    // polynomial ring but not invertible.
    let poly = gen_file(&dir, "p2.json", &["truncated-poly", "--n", "2", "--a", "0", "--b", "1"]);
    let bundle = dir.path().join("bhnp.json");
    assert_eq!(
        code_of(&bihom(&[
            "construct",
            "derivation-bhnp",
            path_str(&poly),
            "--out",
            path_str(&bundle)
        ])),
        0
    );
    let out = bihom(&["construct", "bracket", path_str(&bundle)]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("Singular"));

    // Nilpotent carrier with scale 2: the squared maps fix nothing, so
    // `--element auto` has nothing to pick.
    let nil = gen_file(&dir, "nil.json", &["nilpotent", "--m", "2", "--a", "2", "--b", "1"]);
    let nil_bundle = dir.path().join("nil-bhnp.json");
    assert_eq!(
        code_of(&bihom(&[
            "construct",
            "derivation-bhnp",
            path_str(&nil),
            "--out",
            path_str(&nil_bundle)
        ])),
        0
    );
    let out = bihom(&["construct", "perturb-thm1", path_str(&nil_bundle), "--element", "auto"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("NotFixed"));
}

#[test]
fn malformed_files_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ definitely not json").unwrap();
    assert_eq!(code_of(&bihom(&["check", path_str(&bad), "bhnp"])), 2);

    // Unknown key.
    let zero = gen_file(&dir, "zero.json", &["zero", "--n", "1"]);
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&zero).unwrap()).unwrap();
    doc["extra"] = serde_json::json!(true);
    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, doc.to_string()).unwrap();
    assert_eq!(code_of(&bihom(&["check", path_str(&unknown), "bhnp"])), 2);

    // Non-canonical rational.
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&zero).unwrap()).unwrap();
    doc["alpha"] = serde_json::json!([["2/4"]]);
    let noncanon = dir.path().join("noncanon.json");
    std::fs::write(&noncanon, doc.to_string()).unwrap();
    assert_eq!(code_of(&bihom(&["check", path_str(&noncanon), "bhnp"])), 2);
}
