use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use chios_cli::reports::{DimsReport, ExpandReport, GroebnerReport, LtIdealReport, VerifyReport};
use serde::de::DeserializeOwned;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.display().to_string()
}

fn chios(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chios"))
        .args(args)
        .env_remove("CHIOS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = chios(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json<T: DeserializeOwned>(args: &[&str]) -> T {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).expect("report parses")
}

fn temp_file(suffix: &str, contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn dimension_table() {
    let vec = data("six_point.vec");
    let out = stdout(&["--input", &vec, "dims"]);
    assert!(out.contains("ℓ=2: 11+4+0=15\n"));
    assert!(out.contains("ℓ=3: 6+10+4=20\n"));
    let report: DimsReport = json(&["--input", &vec, "dims"]);
    assert_eq!(report.rows[3].dependent, 4);
}

#[test]
fn expansions_for_each_map() {
    let vec = data("six_point.vec");
    let alt = format!("file:{}", data("alternate_basis.json"));
    let cases = [
        ("os", "nbc", "1,5,6", "e_{1,5,6} = -e_{1,2,5} + e_{1,2,6}\n"),
        (
            "ot",
            "nbc",
            "1,5,6",
            "e_{1,5,6} = 3/2 e_{1,2,5} - 1/2 e_{1,2,6}\n",
        ),
        (
            "ot",
            "nbc",
            "2,3,5",
            "e_{2,3,5} = -e_{1,2,5} + 2 e_{1,3,5}\n",
        ),
        (
            "cordovil",
            "nbc",
            "1,5,6",
            "e_{1,5,6} = e_{1,2,5} - e_{1,2,6}\n",
        ),
        ("os", &alt, "1,2,6", "e_{1,2,6} = e_{1,2,5} + e_{1,5,6}\n"),
        (
            "ot",
            &alt,
            "1,2,6",
            "e_{1,2,6} = 3 e_{1,2,5} - 2 e_{1,5,6}\n",
        ),
        (
            "cordovil",
            &alt,
            "1,2,6",
            "e_{1,2,6} = e_{1,2,5} - e_{1,5,6}\n",
        ),
    ];
    for (chi, basis, target, want) in cases {
        let out = stdout(&[
            "--input", &vec, "--chi", chi, "expand", "--basis", basis, "--target", target,
        ]);
        assert_eq!(out, want, "{chi} {basis} {target}");
    }
    let report: ExpandReport = json(&[
        "--input", &vec, "--chi", "ot", "expand", "--target", "1,5,6",
    ]);
    assert!(report.oracle_agrees);
    assert_eq!(report.expansion.len(), 2);
}

#[test]
fn groebner_and_leading_terms() {
    let circ = data("six_point.circ");
    let report: GroebnerReport = json(&["--input", &circ, "groebner", "--order", "pi:2,3,4,5,6,1"]);
    assert_eq!(report.elements.len(), 5);
    assert!(report
        .elements
        .iter()
        .any(|g| g.circuit == vec![2, 3, 4, 5]));
    let lt: LtIdealReport = json(&["--input", &circ, "lt-ideal"]);
    assert_eq!(
        lt.leading_monomials,
        vec![
            vec![2, 3],
            vec![4, 5],
            vec![4, 6],
            vec![5, 6],
            vec![2, 4, 6],
            vec![3, 4, 5],
            vec![3, 5, 6]
        ]
    );
    assert_eq!(lt.generators.len(), 4);
}

#[test]
fn both_input_kinds_give_the_same_answers() {
    for verb in [
        &["nbc"][..],
        &["groebner", "--universal"],
        &["canonical-basis", "--degree", "2"],
    ] {
        let mut a = vec!["--input".to_string(), data("six_point.vec")];
        let mut b = vec!["--input".to_string(), data("six_point.circ")];
        a.extend(verb.iter().map(|s| s.to_string()));
        b.extend(verb.iter().map(|s| s.to_string()));
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let b: Vec<&str> = b.iter().map(String::as_str).collect();
        assert_eq!(stdout(&a), stdout(&b));
    }
}

#[test]
fn residues_with_each_sigma_notation() {
    let vec = data("six_point.vec");
    let base = [
        "--input",
        vec.as_str(),
        "residue",
        "--word",
        "1,2,5",
        "--target",
        "2,3,5",
    ];
    let plain = stdout(&base);
    assert_eq!(plain, "p_(1,2,5)(e_{2,3,5}) = -1\n");
    for sigma in ["oneline:1,3,2", "cycle:(23)", "cycle:(2,3)"] {
        let mut args = base.to_vec();
        args.extend(["--sigma", sigma]);
        assert_eq!(stdout(&args), "p_(1,5,2)(e_{2,3,5}) = -1\n");
    }
    let u23 = temp_file(".circ", "3 1\n1 2 3\n");
    let path = u23.path().display().to_string();
    let zero = stdout(&[
        "--input", &path, "residue", "--word", "1,3", "--target", "1,2",
    ]);
    assert_eq!(zero, "p_(1,3)(e_{1,2}) = 0\n");
    let nonzero = stdout(&[
        "--input", &path, "residue", "--word", "3,1", "--target", "1,2",
    ]);
    assert_ne!(nonzero, "p_(3,1)(e_{1,2}) = 0\n");
}

#[test]
fn diagonal_checks() {
    let vec = data("six_point.vec");
    let out = stdout(&[
        "--input",
        &vec,
        "diagonal-check",
        "--file",
        &data("alternate_basis.json"),
    ]);
    assert!(out.starts_with("diagonal basis: yes"));
    let shared = temp_file(
        ".json",
        r#"{"entries": [{"set": [1,2,4], "sigma": [1,2,3]}, {"set": [1,2,5], "sigma": [1,2,3]},
            {"set": [1,5,6], "sigma": [1,2,3]}, {"set": [1,3,4], "sigma": [1,2,3]},
            {"set": [1,3,5], "sigma": [1,2,3]}, {"set": [1,3,6], "sigma": [1,2,3]}]}"#,
    );
    let out = chios(&[
        "--input",
        &vec,
        "diagonal-check",
        "--file",
        &shared.path().display().to_string(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("diagonal basis: no"));
}

#[test]
fn exact_sequence_dimensions() {
    let out = stdout(&[
        "--input",
        &data("six_point.vec"),
        "--chi",
        "ot",
        "exact-seq",
        "--element",
        "6",
    ]);
    assert!(out.contains("ℓ=3: 6 = 4 + 2  ok\n"));
    assert!(out.ends_with("exact at 6: yes\n"));
}

#[test]
fn verify_passes_on_the_six_points_and_a_free_matroid() {
    for chi in ["os", "ot", "cordovil"] {
        let report: VerifyReport =
            json(&["--input", &data("six_point.vec"), "--chi", chi, "verify"]);
        assert!(report.passed, "{chi}: {report:?}");
    }
    let free = temp_file(".circ", "3 0\n");
    let report: VerifyReport = json(&["--input", &free.path().display().to_string(), "verify"]);
    assert!(report.passed);
}

#[test]
fn output_is_deterministic() {
    let vec = data("six_point.vec");
    for args in [
        vec![
            "--input",
            &vec,
            "--chi",
            "ot",
            "groebner",
            "--universal",
            "--format",
            "json",
        ],
        vec!["--input", &vec, "verify", "--format", "json"],
        vec!["--input", &vec, "--order", "pi:6,5,4,3,2,1", "nbc"],
    ] {
        assert_eq!(chios(&args).stdout, chios(&args).stdout);
    }
}

#[test]
fn exit_codes() {
    let vec = data("six_point.vec");
    let circ = data("six_point.circ");
    let bad = temp_file(".vec", "2 2\n1 0\n1/0 1\n");
    let out = chios(&["--input", &bad.path().display().to_string(), "dims"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(
        chios(&["--input", &circ, "--chi", "ot", "dims"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        chios(&["--input", &vec, "expand", "--target", "1,2,3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        chios(&["--input", &vec, "expand", "--target", "1,x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        chios(&["--input", &vec, "exact-seq", "--element", "9"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        chios(&["--input", "/nonexistent/file.vec", "dims"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(chios(&["dims"]).status.code(), Some(2));
    assert_eq!(
        chios(&["--input", &vec, "frobnicate"]).status.code(),
        Some(2)
    );
}
