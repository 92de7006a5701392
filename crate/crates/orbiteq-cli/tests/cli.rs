//! Behavioral tests for the command-line front-end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn orbiteq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbiteq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn base_shift_files() -> Vec<String> {
    vec![
        fixture("sft_f2.json"),
        fixture("map_sigma_f2.json"),
        fixture("map_id_f2.json"),
        fixture("action_shift_f2.json"),
    ]
}

#[test]
fn freeness_of_the_shift_verifies() {
    let mut args = vec!["verify".into(), "freeness".into()];
    args.extend(base_shift_files());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = orbiteq(&refs);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn duplicated_generators_fail_freeness_with_witness_pair() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let mut args = vec!["verify".to_string(), "freeness".to_string()];
    args.push(fixture("sft_f2.json"));
    args.push(fixture("map_sigma_f2.json"));
    args.push(fixture("action_dup.json"));
    args.push("--out".into());
    args.push(report.to_string_lossy().into_owned());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = orbiteq(&refs);
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("m=1,0") && text.contains("n=0,1"), "{text}");
}

#[test]
fn groupoid_axioms_verify_on_the_shift() {
    let mut args = vec!["verify".to_string(), "groupoid-axioms".to_string()];
    args.extend(base_shift_files());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = orbiteq(&refs);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn collapse_action_fails_axioms() {
    let args = vec![
        "verify".to_string(),
        "action".to_string(),
        fixture("sft_f2.json"),
        fixture("map_collapse.json"),
        fixture("action_collapse.json"),
    ];
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = orbiteq(&refs);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("surjective"));
}

#[test]
fn shift_coe_kinds_verify_and_refute() {
    let mut ok = vec!["verify".to_string(), "shift-coe".to_string()];
    ok.extend(base_shift_files());
    ok.push(fixture("shift_coe_identity.json"));
    let refs: Vec<&str> = ok.iter().map(String::as_str).collect();
    assert_eq!(orbiteq(&refs).status.code(), Some(0));

    let mut bad = vec!["verify".to_string(), "shift-coe".to_string()];
    bad.extend(base_shift_files());
    bad.push(fixture("shift_coe_wrong.json"));
    let refs: Vec<&str> = bad.iter().map(String::as_str).collect();
    assert_eq!(orbiteq(&refs).status.code(), Some(1));
}

#[test]
fn convert_csoe_to_coe_and_verify_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_doc = dir.path().join("coe.json");
    let mut args = vec!["convert".to_string(), "csoe-to-coe".to_string()];
    args.extend(base_shift_files());
    args.push(fixture("csoe_identity.json"));
    args.push("--depth".into());
    args.push("5".into());
    args.push("--out".into());
    args.push(out_doc.to_string_lossy().into_owned());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = orbiteq(&refs);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_doc).unwrap();
    assert!(text.contains("\"schema\": \"coe/v1\""));
    assert!(text.contains("\"verification\""));

    // The emitted document loads and verifies on its own.
    let mut args = vec!["verify".to_string(), "coe".to_string()];
    args.extend(base_shift_files());
    args.push(out_doc.to_string_lossy().into_owned());
    args.push("--depth".into());
    args.push("5".into());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = orbiteq(&refs);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

fn convert(kind: &str, inputs: &[String], out: &PathBuf) -> Output {
    let mut args = vec!["convert".to_string(), kind.to_string()];
    args.extend(inputs.to_vec());
    args.push("--depth".into());
    args.push("5".into());
    args.push("--out".into());
    args.push(out.to_string_lossy().into_owned());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    orbiteq(&refs)
}

#[test]
fn path_count_roundtrip_is_stable_after_normalization() {
    let dir = tempfile::tempdir().unwrap();
    let coe1 = dir.path().join("coe1.json");
    let shift1 = dir.path().join("shift1.json");
    let coe2 = dir.path().join("coe2.json");
    let shift2 = dir.path().join("shift2.json");

    let mut inputs = base_shift_files();
    inputs.push(fixture("shift_coe_identity.json"));
    assert_eq!(convert("shift-to-semigroup", &inputs, &coe1).status.code(), Some(0));

    let mut inputs = base_shift_files();
    inputs.push(coe1.to_string_lossy().into_owned());
    assert_eq!(convert("semigroup-to-shift", &inputs, &shift1).status.code(), Some(0));

    let mut inputs = base_shift_files();
    inputs.push(shift1.to_string_lossy().into_owned());
    assert_eq!(convert("shift-to-semigroup", &inputs, &coe2).status.code(), Some(0));

    let mut inputs = base_shift_files();
    inputs.push(coe2.to_string_lossy().into_owned());
    assert_eq!(convert("semigroup-to-shift", &inputs, &shift2).status.code(), Some(0));

    // After one normalization pass the roundtrip is the identity on bytes,
    // up to the document names that carry the conversion trail.
    let s1 = std::fs::read_to_string(&shift1).unwrap().replace("shift-ident-coe", "N");
    let s2 = std::fs::read_to_string(&shift2)
        .unwrap()
        .replace("shift-ident-coe-shift-coe", "N");
    assert_eq!(s1, s2);
}

#[test]
fn group_conversion_requires_homeomorphisms() {
    let dir = tempfile::tempdir().unwrap();
    let out_doc = dir.path().join("out.json");
    let mut inputs = base_shift_files();
    inputs.push(fixture("group_coe_on_shift.json"));
    let out = convert("group-to-semigroup", &inputs, &out_doc);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("homeomorphisms"));
}

#[test]
fn inspect_prints_schema_and_rejects_garbage() {
    let out = orbiteq(&["inspect", &fixture("sft_f2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("sft/v1"));

    let out = orbiteq(&["inspect", &fixture("does_not_exist.json")]);
    assert_eq!(out.status.code(), Some(2));

    let out = orbiteq(&["inspect", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_refuses_refuted_source() {
    let dir = tempfile::tempdir().unwrap();
    let out_doc = dir.path().join("out.json");
    let mut inputs: Vec<String> = [
        "sft_f2.json",
        "sft_f2x2.json",
        "map_sigma_f2.json",
        "map_sigma_f2x2.json",
        "map_phi2.json",
        "map_phi2_inv.json",
        "action_shift_f2.json",
        "action_shift_f2x2.json",
        "csoe_phi2_corrupt.json",
    ]
    .iter()
    .map(|f| fixture(f))
    .collect();
    inputs.push("--depth".into());
    let mut args = vec!["convert".to_string(), "csoe-to-coe".to_string()];
    args.extend(inputs[..inputs.len() - 1].to_vec());
    args.push("--depth".into());
    args.push("5".into());
    args.push("--out".into());
    args.push(out_doc.to_string_lossy().into_owned());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = orbiteq(&refs);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out_doc.exists(), "no document is written for a refuted source");
}

#[test]
fn invalid_config_is_exit_two() {
    let out = orbiteq(&["verify", "csoe", "--depth", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
