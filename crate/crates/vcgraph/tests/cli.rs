//! End-to-end checks of the binary: artifacts, exit codes, and the
//! shipped witness data files.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_vcgraph")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vcgraph-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin()).args(args).output().expect("runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn vcdim_certificate_round_trips_through_verify() {
    let dir = scratch("cert");
    let cert = dir.join("j72.json");
    let (code, out, _) = run(&[
        "vcdim",
        "--family",
        "johnson",
        "--params",
        "7,2",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("vc_dimension: 4"), "{out}");

    let (code, out, _) = run(&["verify", "--file", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("1/1 witness tables verified"), "{out}");
}

#[test]
fn corrupted_certificate_fails_verify_with_exit_1() {
    let dir = scratch("corrupt");
    let cert = dir.join("j63.json");
    let (code, _, _) = run(&[
        "vcdim",
        "--family",
        "johnson",
        "--params",
        "6,3",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    // Swap the witnesses of two rows; masks stay complete, traces break.
    let rows = doc["witnesses"].as_array_mut().unwrap();
    let w0 = rows[0]["witness_label"].clone();
    let w9 = rows[9]["witness_label"].clone();
    rows[0]["witness_label"] = w9;
    rows[9]["witness_label"] = w0;
    std::fs::write(&cert, serde_json::to_string(&doc).unwrap()).unwrap();

    let (code, out, _) = run(&["verify", "--file", cert.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAILED"), "{out}");
}

#[test]
fn shipped_witness_files_match_builtins_and_verify() {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/witnesses");
    let mut names: Vec<_> = std::fs::read_dir(&data)
        .expect("data/witnesses exists")
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    assert_eq!(names.len(), 5, "five shipped witness files");
    let builtins = vcgraph::witness::builtin_witnesses();
    for path in names {
        let raw = std::fs::read_to_string(&path).unwrap();
        let imported = vcgraph::witness::import_witness(&raw).unwrap();
        assert!(
            builtins.contains(&imported),
            "{} drifted from the built-in table",
            path.display()
        );
        let (code, out, _) = run(&["verify", "--file", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{}: {out}", path.display());
    }
}

#[test]
fn rook_certificate_round_trips_through_verify() {
    let dir = scratch("rook-cert");
    let cert = dir.join("r25.json");
    let (code, out, _) = run(&[
        "vcdim",
        "--family",
        "rook",
        "--params",
        "2,5",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("vc_dimension: 3"), "{out}");
    let (code, out, _) = run(&["verify", "--file", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn gen_artifact_matches_stdout() {
    let dir = scratch("gen");
    let path = dir.join("k4.txt");
    let (code, out, _) = run(&[
        "gen",
        "--family",
        "complete",
        "--params",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
}

#[test]
fn density_out_is_csv() {
    let dir = scratch("density");
    let path = dir.join("rook.csv");
    let (code, _, _) = run(&[
        "density",
        "--family",
        "rook",
        "--params",
        "2,5",
        "--nmax",
        "4",
        "--exact",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,pi,mode,witness"));
    // Pinned oracle values for R(2,5): 1, 2, 4, 8, 10.
    let pis: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(pis, vec!["1", "2", "4", "8", "10"]);
}

#[test]
fn shatter_negative_answer_is_exit_0() {
    let (code, out, _) = run(&[
        "shatter",
        "--family",
        "hamming",
        "--params",
        "2,2",
        "--set",
        "0-0,1-1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("shattered: false"), "{out}");
}

#[test]
fn classify_figure_quad_is_case_xv() {
    let (code, out, _) = run(&[
        "classify",
        "--family",
        "johnson",
        "--params",
        "7,2",
        "--quad",
        "1-2:1-3,1-4,1-5,1-6",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("case: XV"), "{out}");
    assert!(out.contains("shatters: true"), "{out}");
}

#[test]
fn conflicting_modes_exit_2() {
    let (code, _, _) = run(&[
        "density", "--family", "rook", "--params", "3,3", "--nmax", "3", "--exact", "--budget",
        "10",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_0() {
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

/// Golden snapshot of the versioned JSON schema. If this changes, bump
/// `schema_version` rather than silently reshaping the document.
#[test]
fn vcdim_json_schema_is_stable() {
    let (code, out, _) = run(&["vcdim", "--family", "complete", "--params", "3", "--json"]);
    assert_eq!(code, 0);
    let expected = r#"{
  "certificate": {
    "base_set": [
      1
    ],
    "graph": {
      "family": "complete",
      "params": [
        3
      ]
    },
    "schema_version": 1,
    "source": "search certificate",
    "witnesses": [
      {
        "subset_mask": 0,
        "witness_label": 1
      },
      {
        "subset_mask": 1,
        "witness_label": 0
      }
    ]
  },
  "command": "vcdim",
  "graph": {
    "family": "complete",
    "params": [
      3
    ]
  },
  "neighborhoods": "open",
  "schema_version": 1,
  "vc_dimension": 1
}
"#;
    assert_eq!(out, expected);
}

#[test]
fn oracle_check_johnson_exits_0() {
    let (code, out, _) = run(&["oracle-check", "--family", "johnson", "--params", "7,2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("ok   distance formula vs BFS"), "{out}");
}
