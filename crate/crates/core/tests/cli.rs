//! End-to-end tests of the `hypervis` binary.

use std::path::Path;
use std::process::Command;

use hypervis::cli::{tables_text, Which};
use hypervis::constructions::KnownValues;
use hypervis::cube::VertexSet;
use hypervis::visibility::{verify, VariantKind};

const BIN: &str = env!("CARGO_BIN_EXE_hypervis");

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn tables_match_renderers() {
    let kv = KnownValues::embedded();
    for (which, name, text) in [
        (Which::Summary, "summary", kv.render_summary()),
        (Which::Total, "total", kv.render_total()),
        (Which::Exact, "exact", kv.render_exact()),
    ] {
        let (code, out, _) = run(&["tables", "--which", name]);
        assert_eq!(code, 0);
        assert_eq!(out, text);
        assert_eq!(tables_text(which), text);
    }
    let (_, all, _) = run(&["tables"]);
    assert_eq!(all, tables_text(Which::All));
}

#[test]
fn total_table_lists_every_value() {
    let (_, out, _) = run(&["tables", "--which", "total"]);
    let expected = [
        (3, 2),
        (4, 4),
        (5, 4),
        (6, 8),
        (7, 16),
        (8, 32),
        (9, 40),
        (10, 80),
        (11, 144),
        (12, 288),
        (13, 512),
        (14, 1024),
        (15, 2048),
        (16, 4096),
    ];
    let rows: Vec<(u32, u64)> = out
        .lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            Some((it.next()?.parse().ok()?, it.next()?.parse().ok()?))
        })
        .collect();
    assert_eq!(rows, expected);
}

#[test]
fn summary_table_rows() {
    let (_, out, _) = run(&["tables", "--which", "summary"]);
    for row in [
        "116-118", "222-236", "432-472", "820-944", "72-80", "462-640", "210-464",
    ] {
        assert!(out.contains(row), "missing {row}");
    }
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.txt");
    let (code, _, _) = run(&[
        "construct",
        "--h",
        "8",
        "--kind",
        "layer-pair",
        "--i",
        "3",
        "--out",
        p(&f),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.starts_with("# layer-pair h=8 i=3 gap=3 size=84\n"));
    let set = VertexSet::parse_text(&text, Some(8)).unwrap();
    assert_eq!(set.len(), 84);
    assert!(verify(&set, VariantKind::Mutual.into()).ok);
    let (code, out, _) = run(&["verify", "--h", "8", "--variant", "mutual", "--set", p(&f)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.trim(), "ok: mutual set of size 84 in Q_8");
    let (code, out, _) = run(&["verify", "--h", "8", "--variant", "total", "--set", p(&f)]);
    assert_eq!(code, 1);
    assert!(out.starts_with("fail: "));
}

#[test]
fn construct_code_total() {
    let (code, out, _) = run(&["construct", "--h", "8", "--kind", "code-total"]);
    assert_eq!(code, 0);
    let set = VertexSet::parse_text(&out, Some(8)).unwrap();
    assert_eq!(set.len(), 32);
    assert!(verify(&set, VariantKind::Total.into()).ok);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("dual8.txt");
    std::fs::write(&good, "0000\n0001\n0010\n0101\n1010\n1101\n1110\n1111\n").unwrap();
    assert_eq!(
        run(&["verify", "--h", "4", "--variant", "dual", "--set", p(&good)]).0,
        0
    );
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "000\n001\n010\n011\n").unwrap();
    let (code, out, _) = run(&[
        "verify",
        "--h",
        "3",
        "--variant",
        "mutual",
        "--set",
        p(&bad),
        "--all-witnesses",
    ]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("witness: ")));
    let (code, _, err) = run(&[
        "verify",
        "--h",
        "4",
        "--variant",
        "mutual",
        "--set",
        p(&bad),
    ]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "));
}

#[test]
fn verify_json_keys() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.txt");
    std::fs::write(&f, "000\n111\n").unwrap();
    let (code, out, _) = run(&[
        "verify",
        "--h",
        "3",
        "--variant",
        "mutual",
        "--set",
        p(&f),
        "--json",
    ]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    for key in ["h", "variant", "size", "status", "elapsed_ms"] {
        assert!(j.get(key).is_some(), "missing {key}");
    }
    assert_eq!(j["status"], "ok");
}

#[test]
fn search_json_keys() {
    let (code, out, _) = run(&["search", "--h", "3", "--variant", "dual", "--json"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(j["size"], 4);
    assert_eq!(j["status"], "optimal");
    assert!(j.get("elapsed_ms").is_some());
}

#[test]
fn encode_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("q3.cnf");
    let set = dir.path().join("q3.txt");
    let (code, _, _) = run(&[
        "encode",
        "--h",
        "3",
        "--variant",
        "mutual",
        "--ell",
        "6",
        "--out",
        p(&cnf),
    ]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["solve", p(&cnf)]);
    assert_eq!((code, out.trim()), (1, "s UNSATISFIABLE"));
    run(&[
        "encode",
        "--h",
        "3",
        "--variant",
        "mutual",
        "--ell",
        "5",
        "--out",
        p(&cnf),
    ]);
    let (code, out, _) = run(&["solve", p(&cnf), "--set-out", p(&set)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("s SATISFIABLE\n"));
    let m = VertexSet::parse_text(&std::fs::read_to_string(&set).unwrap(), Some(3)).unwrap();
    assert!(m.len() >= 5);
    assert!(verify(&m, VariantKind::Mutual.into()).ok);
}

#[test]
fn binary_acts_as_external_solver() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("q4.cnf");
    run(&[
        "encode",
        "--h",
        "4",
        "--variant",
        "outer",
        "--ell",
        "6",
        "--out",
        p(&cnf),
    ]);
    let cmd = format!("{BIN} solve --competition {{cnf}}");
    let (code, out, _) = run(&[
        "solve",
        p(&cnf),
        "--solver",
        "external",
        "--solver-cmd",
        &cmd,
    ]);
    assert_eq!(code, 0, "{out}");
    run(&[
        "encode",
        "--h",
        "4",
        "--variant",
        "outer",
        "--ell",
        "7",
        "--out",
        p(&cnf),
    ]);
    let (code, _, _) = run(&[
        "solve",
        p(&cnf),
        "--solver",
        "external",
        "--solver-cmd",
        &cmd,
    ]);
    assert_eq!(code, 1);
    let (code, out, _) = run(&[
        "search",
        "--h",
        "3",
        "--variant",
        "outer",
        "--solver",
        "external",
        "--solver-cmd",
        &cmd,
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("result: size 4 status optimal"));
}

#[test]
fn search_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("best.txt");
    let (code, out, _) = run(&[
        "search",
        "--h",
        "4",
        "--variant",
        "mutual",
        "--mode",
        "two-phase",
        "--pattern",
        "k12-star",
        "--out",
        p(&f),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("phase1: size 8"));
    assert!(out.contains("result: size 9 status optimal"));
    let meta = hypervis::solve::read_metadata(&hypervis::solve::sidecar_path(&f)).unwrap();
    assert_eq!(meta.get("size").map(String::as_str), Some("9"));
    let set = VertexSet::parse_text(&std::fs::read_to_string(&f).unwrap(), Some(4)).unwrap();
    assert_eq!(set.len(), 9);
}

#[test]
fn encode_lp_and_dimacs_are_deterministic() {
    let args = [
        "encode",
        "--h",
        "3",
        "--variant",
        "dual",
        "--format",
        "lp",
        "--ell",
        "4",
    ];
    let (c1, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(a, b);
    assert!(a.contains("Maximize") && a.contains("Binary") && a.trim_end().ends_with("End"));
    let args = [
        "encode",
        "--h",
        "4",
        "--variant",
        "mutual",
        "--forbid",
        "k12-star",
        "--neighborhood-cap",
    ];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn bounds_output() {
    let (code, out, _) = run(&["bounds", "--h", "8", "--variant", "mutual", "--json"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(j["upper"], 118);
    assert!(j["lower"].as_u64().unwrap() >= 84);
}
