use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("porigami").chain(args.iter().copied());
    let code = porigami::cli::run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_json(args: &[&str]) -> Value {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let (code, out, err) = run(&argv);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn wollmilchsau_stratum_text() {
    let (code, out, _) = run(&["origami", "stratum", &data("wollmilchsau.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "H(4 x 1), genus 3, 4 singularities of multiplicity 2\n"
    );
}

#[test]
fn stratum_json_fields() {
    let v = run_json(&["origami", "stratum", &data("d8_rs.json")]);
    assert_eq!(v["genus"], 3);
    assert_eq!(v["singularities"], 4);
    assert_eq!(v["stratum"], "H(4 x 1)");
}

#[test]
fn property_c_on_a_family() {
    let v = run_json(&[
        "group",
        "property-c",
        "--family",
        "strata",
        "--p",
        "2",
        "--n",
        "3",
        "--k",
        "1",
    ]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["orders"], serde_json::json!([2]));
    let w = run_json(&[
        "group",
        "property-c",
        "--family",
        "counterexample",
        "--p",
        "2",
        "--all",
    ]);
    assert_eq!(w["holds"], false);
}

#[test]
fn search_is_reproducible() {
    let args = [
        "search",
        "counterexample",
        "--p",
        "2",
        "--r",
        "4",
        "--seed",
        "3",
    ];
    let a = run_json(&args);
    assert_eq!(a, run_json(&args));
    assert_eq!(a["found"], true);
}

#[test]
fn origami_equality_across_files() {
    let same = run_json(&[
        "origami",
        "equal",
        &data("d8_rs.json"),
        &data("d8_rinv_s.json"),
    ]);
    assert_eq!(same["equal"], true);
    let swapped = run_json(&[
        "origami",
        "equal",
        &data("d8_rs.json"),
        &data("d8_s_r.json"),
    ]);
    assert_eq!(swapped["equal"], false);
}

#[test]
fn todd_coxeter_from_file() {
    let v = run_json(&["present", "tc", &data("d16.tc")]);
    assert_eq!(v["cosets"], 16);
    assert!(v["generators"]["r"].as_str().unwrap().starts_with('('));
}

#[test]
fn render_to_file_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g3.svg");
    let out = path.to_string_lossy().into_owned();
    let (code, stdout, err) = run(&[
        "origami", "render", "--family", "strata", "--p", "3", "--n", "3", "--k", "1", "--out",
        &out,
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.is_empty());
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/g3_3_1.svg");
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        std::fs::read_to_string(golden).unwrap()
    );
}

#[test]
fn cylinders_and_towers_print_tables() {
    let (code, out, _) = run(&["origami", "cylinders", &data("wollmilchsau.json")]);
    assert_eq!(code, 0);
    assert!(out.trim_start().starts_with("direction"));
    assert_eq!(out.lines().count(), 3);
    let (code, out, _) = run(&["tower", "wollmilchsau", "--from", "1", "--to", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("tower wollmilchsau"));
}

#[test]
fn input_errors_exit_four() {
    let (code, _, err) = run(&["group", "info", &data("broken.json")]);
    assert_eq!(code, 4);
    assert!(err.starts_with("error:"));
}

#[test]
fn binary_honours_cap_overrides() {
    let bin = env!("CARGO_BIN_EXE_porigami");
    let status = Command::new(bin)
        .args(["present", "tc", &data("d16.tc")])
        .env("PORIGAMI_CAPS", "1000:8:1000")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    let status = Command::new(bin)
        .args(["present", "tc", &data("d16.tc")])
        .env("PORIGAMI_CAPS", "lots")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let ok = Command::new(bin)
        .args(["present", "tc", &data("d16.tc")])
        .env_remove("PORIGAMI_CAPS")
        .output()
        .unwrap();
    assert!(ok.status.success());
}
