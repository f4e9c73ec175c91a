//! End-to-end tests of the binary: subcommand output, exit-status contract,
//! record round-tripping, and run determinism.

use sosgap_core::hermitian::squared_norm_form;
use sosgap_core::instance::{write_hermitian_form, write_poly_map};
use sosgap_core::poly::{PolyMap, Polynomial};
use sosgap_core::rank::tensor_with_z;
use sosgap_core::sphere::{standard_linear_embedding, whitney_map};
use std::path::Path;
use std::process::{Command, Output};

fn sosgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sosgap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn write_temp(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn gaps_table_for_seven() {
    let out = sosgap(&["gaps", "--n", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("kappa0=3"));
    assert!(text.contains("I_3=[17,17]"));
    assert!(text.contains("D_n=17"));
}

#[test]
fn classify_gap_example() {
    let out = sosgap(&["classify", "--n", "2", "--r", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("Gap"));

    let out = sosgap(&["classify", "--n", "2", "--r", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Band(1)"));
    assert!(text.contains("above max"));
}

#[test]
fn check_sos_tensor_instance() {
    let dir = tempfile::tempdir().unwrap();
    // F = (z1) in 3 variables: P = F (x) z has rank 3, inside band 1
    let f = PolyMap::new(3, vec![Polynomial::coordinate(3, 0)]).unwrap();
    let p = tensor_with_z(&f);
    let path = write_temp(dir.path(), "p.inst", &write_poly_map(&p));
    let out = sosgap(&["check-sos", &path]);
    assert!(out.status.success(), "exit: {:?}", out.status);
    let text = stdout(&out);
    assert!(text.contains("identity holds"));
    assert!(text.contains("rank r = 3"));
    assert!(text.contains("Band(1)"), "expected band classification: {text}");

    // at n = 2 the full coordinate tensor has rank 3, above the threshold
    let p = tensor_with_z(&PolyMap::coordinates(2));
    let path = write_temp(dir.path(), "p2.inst", &write_poly_map(&p));
    let out = sosgap(&["check-sos", &path]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("AboveMax"));
}

#[test]
fn check_sos_identity_free_instance() {
    let dir = tempfile::tempdir().unwrap();
    let p = PolyMap::new(2, vec![Polynomial::coordinate(2, 0)]).unwrap();
    let path = write_temp(dir.path(), "p.inst", &write_poly_map(&p));
    let out = sosgap(&["check-sos", &path]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("identity does not hold"));
}

#[test]
fn malformed_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        dir.path(),
        "bad.inst",
        r#"{"n": 1, "components": [[{"e": [1], "re": "0.5", "im": "0"}]]}"#,
    );
    let out = sosgap(&["check-sos", &path]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"), "stderr: {err}");

    let out = sosgap(&["check-sos", "/nonexistent/path.inst"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_subcommand_is_an_input_error() {
    // argument errors share the input-error status; 2 is reserved for
    // counterexample candidates
    let out = sosgap(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = sosgap(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn decompose_hermitian_file() {
    let dir = tempfile::tempdir().unwrap();
    // |z1|^2 - |z2|^2
    let text = r#"{"n": 2, "terms": [
        {"a": [1,0], "b": [1,0], "re": "1", "im": "0"},
        {"a": [0,1], "b": [0,1], "re": "-1", "im": "0"}
    ]}"#;
    let path = write_temp(dir.path(), "h.inst", text);
    let out = sosgap(&["decompose", &path]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(q+, q-) = (1, 1)"));
}

#[test]
fn tensor_rank_window() {
    let dir = tempfile::tempdir().unwrap();
    let f = PolyMap::coordinates(2);
    let fpath = write_temp(dir.path(), "f.inst", &write_poly_map(&f));
    let out = sosgap(&["tensor", "--f", &fpath]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("linear rank 3"));

    let g = PolyMap::new(2, vec![Polynomial::coordinate(2, 0)]).unwrap();
    let gpath = write_temp(dir.path(), "g.inst", &write_poly_map(&g));
    let out = sosgap(&["tensor", "--f", &fpath, "--g", &gpath, "--profile", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rank window"), "{text}");
    assert!(text.contains("t = 0"), "{text}");
}

#[test]
fn map_verify_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let w = whitney_map(2);
    let path = write_temp(dir.path(), "w.inst", &write_poly_map(w.map()));
    let out = sosgap(&["map", "verify", &path]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("proper"));
    assert!(text.contains("q = "));

    let l = standard_linear_embedding(4, 7).unwrap();
    let path = write_temp(dir.path(), "l.inst", &write_poly_map(l.map()));
    let out = sosgap(&["map", "report", &path]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("in gap interval 1"));
    assert!(text.contains("holds"));

    // an improper map is a consistent verify outcome, not an input error
    let bad = PolyMap::new(
        2,
        vec![
            Polynomial::coordinate(2, 0),
            Polynomial::coordinate(2, 1),
            Polynomial::coordinate(2, 0),
        ],
    )
    .unwrap();
    let path = write_temp(dir.path(), "bad.inst", &write_poly_map(&bad));
    let out = sosgap(&["map", "verify", &path]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("not proper"));
}

/// Without the assumed rank bound, the flat codimension can exceed the gap
/// bound; the CLI surfaces that as exit status 2 so automation can alarm.
#[test]
fn violated_bound_exits_two() {
    let out = sosgap(&[
        "degeneracy", "--n", "4", "--dims", "0,6", "--codim", "6", "--skip-sos-assumption",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("VIOLATED"));

    // same sequence with the assumption enforced is a hypothesis error
    let out = sosgap(&["degeneracy", "--n", "4", "--dims", "0,6", "--codim", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn thread_cap_does_not_change_reports() {
    let args = [
        "search", "--target", "huang", "--n", "2", "--degree", "2", "--trials", "30",
        "--seed", "11", "--format", "records",
    ];
    let free = sosgap(&args);
    let capped = Command::new(env!("CARGO_BIN_EXE_sosgap"))
        .args(args)
        .env("SOSGAP_THREADS", "1")
        .output()
        .expect("binary runs");
    assert!(free.status.success() && capped.status.success());
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| !l.contains("\"record\":\"manifest\""))
            .map(|l| l.to_string())
            .collect()
    };
    assert_eq!(strip(&stdout(&free)), strip(&stdout(&capped)));
}

#[test]
fn degeneracy_worked_example() {
    let out = sosgap(&[
        "degeneracy", "--n", "7", "--dims", "0,7,14", "--kappa", "3", "--codim", "17",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("k = 2"));
    assert!(text.contains("flat codimension 16 <= bound 16: holds"));
}

#[test]
fn search_exhaustive_small_budget() {
    let out = sosgap(&[
        "search", "--target", "huang", "--n", "2", "--degree", "2", "--exhaustive",
        "--coeffs", "0,1", "--max-components", "3",
    ]);
    assert!(out.status.success(), "candidates would exit 2");
    let text = stdout(&out);
    assert!(text.contains("candidates 0"), "{text}");
}

#[test]
fn search_random_deterministic_records() {
    let args = [
        "search", "--target", "gh-band", "--n", "3", "--degree", "2", "--trials", "40",
        "--seed", "7", "--format", "records",
    ];
    let a = sosgap(&args);
    let b = sosgap(&args);
    assert!(a.status.success());
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| !l.contains("\"record\":\"manifest\""))
            .map(|l| l.to_string())
            .collect()
    };
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)), "same seed must give identical reports");
}

#[test]
fn records_roundtrip_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let p = tensor_with_z(&PolyMap::coordinates(2));
    let ppath = write_temp(dir.path(), "p.inst", &write_poly_map(&p));
    let h = squared_norm_form(&PolyMap::coordinates(2));
    let hpath = write_temp(dir.path(), "h.inst", &write_hermitian_form(&h));
    let runs: Vec<Vec<&str>> = vec![
        vec!["gaps", "--n", "5", "--format", "records"],
        vec!["classify", "--n", "4", "--r", "5", "--format", "records"],
        vec!["check-sos", &ppath, "--format", "records"],
        vec!["decompose", &hpath, "--format", "records"],
        vec![
            "search", "--target", "huang", "--n", "2", "--degree", "1", "--trials", "10",
            "--seed", "3", "--format", "records",
        ],
        vec!["degeneracy", "--n", "4", "--dims", "0,4", "--kappa", "2", "--format", "records"],
    ];
    for args in runs {
        let out = sosgap(&args);
        assert!(out.status.success(), "args {args:?}");
        for line in stdout(&out).lines() {
            let parsed: serde_json::Value =
                serde_json::from_str(line).unwrap_or_else(|e| panic!("line not JSON ({e}): {line}"));
            let reserialized = parsed.to_string();
            let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
            assert_eq!(parsed, reparsed, "round trip changed the record");
        }
    }
}

#[test]
fn shipped_corpus_verifies() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    for name in [
        "identity_s2.inst",
        "linear_s2_s5.inst",
        "linear_s4_s7.inst",
        "whitney_s1.inst",
        "whitney_s2.inst",
        "whitney_s3.inst",
        "whitney_s4.inst",
    ] {
        let path = corpus.join(name).display().to_string();
        let out = sosgap(&["map", "verify", &path]);
        assert!(out.status.success(), "{name}");
        assert!(stdout(&out).contains("proper: S^"), "{name} must certify");
    }
    let path = corpus.join("improper_repeat.inst").display().to_string();
    let out = sosgap(&["map", "verify", &path]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("not proper"));

    let path = corpus.join("cubes_n2.inst").display().to_string();
    let out = sosgap(&["check-sos", &path]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(q+, q-) = (2, 1)"), "{text}");
}

#[test]
fn both_format_emits_text_and_records() {
    let out = sosgap(&["gaps", "--n", "4", "--format", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("n=4")));
    assert!(text.lines().any(|l| l.starts_with('{')));
}
