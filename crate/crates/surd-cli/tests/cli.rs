//! End-to-end tests of the `surd` binary: worked invocations with pinned
//! stdout, the exit-code contract, JSON report round-trips, and problem-file
//! validation.

use std::path::Path;
use std::process::{Command, Output};

use surd_cli::format::ProblemFile;
use surd_cli::report::{
    AdjoinRootReport, ExtendGradingReport, HomReport, TensorReport, ValidateReport,
};

fn surd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surd")).args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Parses a JSON report, re-serializes it, and checks the bytes survive,
/// proving the emitted schema is the one the library reads.
fn assert_round_trip<T: serde::de::DeserializeOwned + serde::Serialize>(path: &Path) {
    let text = std::fs::read_to_string(path).expect("report written");
    let parsed: T = serde_json::from_str(&text).expect("report re-parses");
    let mut again = serde_json::to_string_pretty(&parsed).expect("serializes");
    again.push('\n');
    assert_eq!(again, text);
}

const OMEGA_FILE: &str = r#"{
  "version": 1,
  "groups": {
    "B": {"free_rank": 0, "invariant_factors": ["2"]},
    "Z2": {"free_rank": 0, "invariant_factors": ["2"]},
    "F": {"free_rank": 1, "invariant_factors": [], "labels": ["ω"]}
  },
  "homs": {
    "chi": {"source": "B", "target": "Z2", "matrix": {"rows": 1, "cols": 1, "entries": ["1"]}}
  },
  "cocycles": {
    "c": {"base": "B", "fiber": "F", "table": [[["1"], ["1"], ["1"]]]}
  },
  "modules": {
    "M": {"grading_group": "B", "components": [[["0"], 1, "A0"], [["1"], 1, "A1"]]},
    "N": {"grading_group": "B", "components": [[["0"], 1, "B0"], [["1"], 1, "B1"]]}
  },
  "signs": {
    "eps": {"parity": "chi"},
    "bad": {"grading": "B", "values": "Z2", "table": [[["0"], ["1"], ["1"]]]}
  }
}
"#;

#[test]
fn em_maps_of_the_integers_in_degree_three_is_z_mod_two() {
    let out = surd(&["em-maps", "--source", "Z", "--target", "Z", "--k", "3"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "Z/2\n");
}

#[test]
fn adjoining_a_square_root_of_five_prints_the_table() {
    let out = surd(&["adjoin-root", "--model", "sphere:5", "--alpha", "5", "--n", "2"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("basis: 1, x"), "{text}");
    assert!(text.contains("x·x = 5"), "{text}");
}

#[test]
fn adjoining_a_square_root_of_three_is_obstructed() {
    let out = surd(&["adjoin-root", "--model", "sphere:3", "--alpha", "3", "--n", "2"]);
    assert_eq!(code_of(&out), 2);
    let text = stdout_of(&out);
    assert!(text.contains("obstruction nonzero"), "{text}");
    assert!(!text.contains("basis:"), "{text}");
}

#[test]
fn the_obstructed_report_still_reaches_the_json_path() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("root.json");
    let out = surd(&[
        "adjoin-root",
        "--model",
        "sphere:3",
        "--alpha",
        "3",
        "--n",
        "2",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 2);
    let text = std::fs::read_to_string(&json).unwrap();
    let report: AdjoinRootReport = serde_json::from_str(&text).unwrap();
    assert!(!report.obstruction.vanishes);
    assert_eq!(report.obstruction.lift_count.as_deref(), Some("0"));
    assert!(report.algebra.is_none());
    assert_round_trip::<AdjoinRootReport>(&json);
}

#[test]
fn hom_reports_group_and_generators() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("hom.json");
    let out = surd(&[
        "hom",
        "--source",
        "Z/4",
        "--target",
        "Z/6+Z",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("Hom(Z/4, Z/6 ⊕ Z) = Z/2\n"), "{text}");
    let report: HomReport =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.group.invariant_factors, vec!["2".to_string()]);
    assert_eq!(report.basis.len(), 1);
    assert_round_trip::<HomReport>(&json);
}

#[test]
fn strict_unit_exit_codes_follow_the_mod_four_character() {
    let ok = surd(&["strict-unit", "--model", "sphere:5", "--alpha", "5"]);
    assert_eq!(code_of(&ok), 0);
    let bad = surd(&["strict-unit", "--model", "sphere:5", "--alpha", "-1"]);
    assert_eq!(code_of(&bad), 2);
    assert!(stdout_of(&bad).contains("nonzero"));
}

#[test]
fn extend_grading_distinguishes_twisted_and_untwisted_lines() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("extend.json");

    let twisted = surd(&[
        "extend-grading",
        "--model",
        "local-ring:Z/2:1",
        "--alpha",
        "1",
        "--n",
        "2",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&twisted), 2);
    let text = stdout_of(&twisted);
    assert!(text.contains("extended group: Z (inclusion [2])"), "{text}");
    assert!(text.contains("extensions: 0"), "{text}");
    let report: ExtendGradingReport =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(report.extensions.is_empty());
    assert_round_trip::<ExtendGradingReport>(&json);

    let untwisted =
        surd(&["extend-grading", "--model", "local-ring:Z/2", "--alpha", "1", "--n", "2"]);
    assert_eq!(code_of(&untwisted), 0);
    let text = stdout_of(&untwisted);
    assert!(text.contains("extensions: 2"), "{text}");
}

#[test]
fn pushout_of_doubling_and_scaling_by_six() {
    let out = surd(&[
        "pushout",
        "--source",
        "Z",
        "--left-target",
        "Z",
        "--left-matrix",
        "2",
        "--right-target",
        "Z",
        "--right-matrix",
        "6",
    ]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).starts_with("pushout: Z/2 ⊕ Z\n"));
}

#[test]
fn tensor_check_reproduces_the_omega_twisted_square() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("omega.json");
    std::fs::write(&file, OMEGA_FILE).unwrap();
    let json = dir.path().join("tensor.json");

    let out = surd(&[
        "tensor-check",
        "--input",
        file.to_str().unwrap(),
        "--left",
        "M",
        "--right",
        "N",
        "--cocycle",
        "c",
        "--sign",
        "eps",
        "--tau-prime",
        "chi",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_of(&out);
    assert!(text.contains("degree (0): rank 2 — A0⊗B0 ⊕ ω·A1⊗B1"), "{text}");
    assert!(text.contains("degree (1): rank 2 — A0⊗B1 ⊕ A1⊗B0"), "{text}");
    assert!(text.contains("c((1), (1)) = ω, sign -1"), "{text}");
    assert!(text.contains("associativity: ok"), "{text}");
    assert!(text.contains("symmetry: ok"), "{text}");

    let report: TensorReport =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(report.ok);
    assert_eq!(report.summands.len(), 4);
    let twisted: Vec<_> = report.summands.iter().filter(|s| s.2 == "ω").collect();
    assert_eq!(twisted.len(), 1);
    assert_eq!(twisted[0].0, vec!["1".to_string()]);
    assert_eq!(twisted[0].3, "-1");
    assert_round_trip::<TensorReport>(&json);
}

#[test]
fn tensor_check_rejects_a_non_biadditive_sign_table() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("omega.json");
    std::fs::write(&file, OMEGA_FILE).unwrap();

    let out = surd(&[
        "tensor-check",
        "--input",
        file.to_str().unwrap(),
        "--left",
        "M",
        "--right",
        "N",
        "--cocycle",
        "c",
        "--sign",
        "bad",
    ]);
    assert_eq!(code_of(&out), 2);
    let text = stdout_of(&out);
    assert!(text.contains("symmetry:"), "{text}");
    assert!(text.contains("violation"), "{text}");
}

#[test]
fn validate_accepts_the_omega_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("omega.json");
    std::fs::write(&file, OMEGA_FILE).unwrap();
    let out = surd(&["validate", "--input", file.to_str().unwrap()]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "ok\n");
}

#[test]
fn validate_names_a_broken_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(
        &file,
        r#"{
  "version": 1,
  "groups": {
    "B": {"free_rank": 0, "invariant_factors": ["3"]},
    "F": {"free_rank": 0, "invariant_factors": ["3"]}
  },
  "cocycles": {
    "c": {"base": "B", "fiber": "F", "table": [[["1"], ["1"], ["1"]]]}
  }
}
"#,
    )
    .unwrap();
    let json = dir.path().join("validate.json");
    let out = surd(&["validate", "--input", file.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert_eq!(code_of(&out), 64);
    let text = stdout_of(&out);
    assert!(text.contains("violation: cocycle c:"), "{text}");
    let report: ValidateReport =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(!report.ok);
    assert_round_trip::<ValidateReport>(&json);
}

#[test]
fn validate_names_dangling_references() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("dangling.json");
    std::fs::write(
        &file,
        r#"{
  "version": 1,
  "elements": {"alpha": {"group": "missing", "coords": ["1"]}}
}
"#,
    )
    .unwrap();
    let out = surd(&["validate", "--input", file.to_str().unwrap()]);
    assert_eq!(code_of(&out), 64);
    assert!(stdout_of(&out).contains("unknown group \"missing\""));
}

#[test]
fn validate_rejects_unknown_fields_and_bad_json() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("odd.json");
    std::fs::write(&file, r#"{"version": 1, "grups": {}}"#).unwrap();
    let out = surd(&["validate", "--input", file.to_str().unwrap()]);
    assert_eq!(code_of(&out), 64);
    assert!(stdout_of(&out).contains("not a valid problem file"));

    std::fs::write(&file, "{ not json").unwrap();
    let out = surd(&["validate", "--input", file.to_str().unwrap()]);
    assert_eq!(code_of(&out), 64);
}

#[test]
fn the_problem_file_schema_round_trips_through_the_library_type() {
    let parsed: ProblemFile = serde_json::from_str(OMEGA_FILE).unwrap();
    let text = serde_json::to_string(&parsed).unwrap();
    let again: ProblemFile = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, again);
}

#[test]
fn malformed_flags_and_expressions_exit_sixty_four() {
    let out = surd(&["hom", "--source", "Q", "--target", "Z"]);
    assert_eq!(code_of(&out), 64);
    let out = surd(&["em-maps", "--source", "Z", "--target", "Z", "--k", "7"]);
    assert_eq!(code_of(&out), 64);
    let out = surd(&["no-such-command"]);
    assert_eq!(code_of(&out), 64);
    let out = surd(&["adjoin-root", "--model", "sphere:5", "--alpha", "7", "--n", "2"]);
    assert_eq!(code_of(&out), 64, "7 does not factor over the model primes");
    let out = surd(&["adjoin-root", "--model", "sphere:5", "--alpha", "5", "--n", "0"]);
    assert_eq!(code_of(&out), 64);
}

#[test]
fn help_exits_zero() {
    let out = surd(&["--help"]);
    assert_eq!(code_of(&out), 0);
}

#[test]
fn reports_are_byte_for_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("omega.json");
    std::fs::write(&file, OMEGA_FILE).unwrap();

    let run = |json: &Path| {
        let out = surd(&[
            "tensor-check",
            "--input",
            file.to_str().unwrap(),
            "--left",
            "M",
            "--right",
            "N",
            "--cocycle",
            "c",
            "--parity",
            "chi",
            "--json",
            json.to_str().unwrap(),
        ]);
        (stdout_of(&out), std::fs::read(json).unwrap())
    };
    let a = run(&dir.path().join("a.json"));
    let b = run(&dir.path().join("b.json"));
    assert_eq!(a, b);
}
