use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permdesign").chain(args.iter().copied());
    let code = permdesign_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds_at_ten_prints_ninety() {
    let (code, out, _) = run(&["bounds", "--n", "10", "--t", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("sm bound: 90\n"), "{out}");
    assert!(out.contains("cor2 bound (t=2): 82\n"));
    let v = json(&["bounds", "--n", "10", "--t", "2", "--format", "json"]);
    assert_eq!(v["sm"], "90/1");
    assert_eq!(v["cor2_t2"], "82/1");
}

#[test]
fn verify_affine_report_schema() {
    let v = json(&[
        "verify",
        &data("affine5.perms"),
        "--t",
        "2",
        "--format",
        "json",
    ]);
    for key in [
        "n",
        "size",
        "frequencies",
        "moments",
        "dual_frequencies",
        "criteria",
        "bounds",
        "transitivity",
    ] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(v["n"], 5);
    assert_eq!(v["size"], 20);
    assert_eq!(
        v["frequencies"],
        serde_json::json!(["1/20", "0/1", "0/1", "0/1", "3/4", "1/5"])
    );
    assert_eq!(v["criteria"]["moments"], true);
    assert_eq!(v["criteria"]["dual"], true);
    assert_eq!(v["criteria"]["tcrit"], true);
    assert_eq!(v["bounds"]["sm"], "20/1");
    assert_eq!(v["bounds"]["meets_sm_equality"], true);
    assert_eq!(v["transitivity"]["max_t"], 2);
    assert_eq!(v["transitivity"]["sharp"], true);
    assert_eq!(v["transitivity"]["is_group"], true);
    let moment = &v["moments"][0];
    for key in ["i", "value", "space_value", "equal"] {
        assert!(moment.get(key).is_some(), "moment entry lacks {key}");
    }
    assert_eq!(v["dual_frequencies"][1]["k"], 2);
}

#[test]
fn dual_frequencies_are_null_above_half() {
    let v = json(&[
        "verify",
        &data("latin5.perms"),
        "--t",
        "3",
        "--format",
        "json",
    ]);
    assert!(v["dual_frequencies"].is_null());
    assert_eq!(v["criteria"]["dual"], "n/a");
    assert_eq!(v["criteria"]["tcrit"], "n/a");
    assert_eq!(v["criteria"]["moments"], false);
}

#[test]
fn exit_codes() {
    let order5 = data("latin5.perms");
    assert_eq!(run(&["verify", &order5, "--t", "1", "--strict"]).0, 0);
    assert_eq!(run(&["verify", &order5, "--t", "2"]).0, 0);
    assert_eq!(run(&["verify", &order5, "--t", "2", "--strict"]).0, 1);
    let (code, _, err) = run(&["verify", "/nonexistent/file.perms", "--t", "1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "), "{err}");
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["verify", &order5]).0, 2);
    assert_eq!(run(&["bounds", "--n", "3", "--t", "4"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.perms");
    std::fs::write(&file, "n=3\n123\n1 1 2\n").unwrap();
    let (code, _, err) = run(&["verify", path_str(&file), "--t", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn charlier_and_orthogonality() {
    assert_eq!(run(&["charlier", "--k", "1"]).1, "x - 1\n");
    assert_eq!(run(&["charlier", "--k", "2"]).1, "x^2 - 3x + 1\n");
    let v = json(&["charlier", "--k", "2", "--format", "json"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "-3", "1"]));
    let (code, out, _) = run(&["orthogonality", "--n", "8", "--strict"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("all pass: true\n"));
    assert!(
        out.contains("r=3 s=3 value=6/1 expected=6/1 PASS\n"),
        "{out}"
    );
}

#[test]
fn construct_matches_checked_in_data() {
    for (args, file) in [
        (vec!["construct", "affine", "--q", "5"], "affine5.perms"),
        (vec!["construct", "latin5"], "latin5.perms"),
        (vec!["construct", "pgl2", "--q", "5"], "pgl2_5.perms"),
        (
            vec!["construct", "twisted-affine-9"],
            "twisted_affine9.perms",
        ),
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out, std::fs::read_to_string(data(file)).unwrap(), "{file}");
    }
}

#[test]
fn closure_and_convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.perms");
    std::fs::write(&gens, "n=4\n2341\n").unwrap();
    let cyclic = dir.path().join("z4.perms");
    let (code, _, err) = run(&[
        "construct",
        "closure",
        "--generators",
        path_str(&gens),
        "--out",
        path_str(&cyclic),
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(
        std::fs::read_to_string(&cyclic).unwrap(),
        run(&["construct", "cyclic", "--n", "4"]).1
    );
    let square = dir.path().join("z4.latin");
    assert_eq!(
        run(&[
            "convert",
            path_str(&cyclic),
            "--to",
            "latin",
            "--out",
            path_str(&square)
        ])
        .0,
        0
    );
    let (code, back, _) = run(&["convert", path_str(&square), "--to", "perms"]);
    assert_eq!(code, 0);
    assert_eq!(back, std::fs::read_to_string(&cyclic).unwrap());
    assert_eq!(
        run(&["convert", &data("z3.latin"), "--to", "perms"]).1,
        "n=3\n123\n231\n312\n"
    );
}

#[test]
fn output_is_identical_across_runs_and_workers() {
    let pgl = data("pgl2_5.perms");
    let first = run(&[
        "verify",
        &pgl,
        "--t",
        "3",
        "--format",
        "json",
        "--workers",
        "1",
    ]);
    for workers in ["1", "2", "8"] {
        let again = run(&[
            "verify",
            &pgl,
            "--t",
            "3",
            "--format",
            "json",
            "--workers",
            workers,
        ]);
        assert_eq!(again, first);
    }
    let freq = run(&["freq", &pgl, "--workers", "1"]);
    assert_eq!(run(&["freq", &pgl, "--workers", "8"]), freq);
    let sharp = run(&[
        "search", "sharp", "--n", "5", "--t", "2", "--format", "json",
    ]);
    assert_eq!(sharp.0, 0);
    for workers in ["2", "8"] {
        let again = run(&[
            "search",
            "sharp",
            "--n",
            "5",
            "--t",
            "2",
            "--format",
            "json",
            "--workers",
            workers,
        ]);
        assert_eq!(again, sharp);
    }
    let v: Value = serde_json::from_str(&sharp.1).unwrap();
    assert_eq!(v["status"], "found");
    assert_eq!(v["size"], 20);
}

#[test]
fn min_design_search_certificates() {
    let v = json(&[
        "search",
        "min-design",
        "--n",
        "3",
        "--t",
        "2",
        "--max-size",
        "5",
    ]);
    assert_eq!(v["status"], "exhausted");
    assert_eq!(v["certificate"]["nodes"], 31);
    let (code, _, _) = run(&[
        "search",
        "min-design",
        "--n",
        "3",
        "--t",
        "2",
        "--max-size",
        "5",
        "--strict",
    ]);
    assert_eq!(code, 1);
    let v = json(&[
        "search",
        "min-design",
        "--n",
        "3",
        "--t",
        "2",
        "--max-size",
        "6",
    ]);
    assert_eq!(v["status"], "found");
    assert_eq!(v["design"].as_array().unwrap().len(), 6);
}

#[test]
fn budget_environment_override() {
    let bin = env!("CARGO_BIN_EXE_permdesign");
    let args = [
        "search",
        "min-design",
        "--n",
        "3",
        "--t",
        "2",
        "--max-size",
        "6",
    ];
    let output = Command::new(bin)
        .args(args)
        .env("PERMDESIGN_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["status"], "inconclusive");
    assert_eq!(v["certificate"]["budget"], 10);

    let output = Command::new(bin)
        .args(args)
        .args(["--budget", "1000"])
        .env("PERMDESIGN_BUDGET", "10")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["status"], "found");
    assert_eq!(v["certificate"]["budget"], 1000);

    let output = Command::new(bin)
        .args(["search", "sharp", "--n", "5", "--t", "2", "--strict"])
        .env("PERMDESIGN_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        "inconclusive: node budget exceeded\n"
    );
}
