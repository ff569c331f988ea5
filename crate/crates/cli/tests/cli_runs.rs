use std::path::Path;
use std::process::Command;

use arcbie::config::{Config, Preconditioner, Problem};
use arcbie::experiments::{build_preconditioner, build_problem, print_symbol, solve, solve_once};
use arcbie::report::{Cell, Report};
use arcbie_core::curve::make_segment;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arcbie"))
}

fn write_config(dir: &Path, json: &str) -> std::path::PathBuf {
    let p = dir.join("config.json");
    std::fs::write(&p, json).unwrap();
    p
}

#[test]
fn verify_symbols_writes_reports_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"depth": 4}"#);
    let out = dir.path().join("out");
    let status = bin()
        .args(["verify-symbols", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let csv = std::fs::read_to_string(out.join("report.csv")).unwrap();
    assert!(csv.starts_with("experiment,curve,k,N,quantity,value,threshold,pass\n"));
    assert!(csv.contains("order N - sqrt(D)/2"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert!(json["details"]["theorems"]["checks"].as_array().unwrap().len() == 6);
}

#[test]
fn bad_config_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for text in [r#"{"n": 3}"#, r#"{"unknown_field": 1}"#, "not json"] {
        let cfg = write_config(dir.path(), text);
        let status = bin().args(["solve", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap().status;
        assert_eq!(status.code(), Some(2), "{text}");
    }
}

#[test]
fn failing_check_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // an impossible off-diagonal bound
    let cfg = write_config(dir.path(), r#"{"n": 64, "thresholds": {"laplace_offdiag": 0.0, "laplace_rel": 0.0}}"#);
    let status = bin()
        .args(["verify-laplace", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(1));
}

#[test]
fn solve_dumps_matrices_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = Config { k: 3.0, n: 32, dump_matrices: true, problem: Problem::Neumann, ..Config::default() };
    let r = solve(&cfg, Some(dir.path())).unwrap();
    assert!(r.all_pass());
    let system = std::fs::read_to_string(dir.path().join("system.csv")).unwrap();
    let mut lines = system.lines();
    assert_eq!(lines.next().unwrap(), "# 32,32,U,U,3,segment,128");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 64);
    assert_eq!(system.lines().count(), 33);
    assert!(dir.path().join("preconditioner.csv").exists());
    assert_eq!(r.details["solve"]["residual_history"][0], 1.0);
}

#[test]
fn preconditioners_reach_tolerance() {
    let seg = make_segment();
    for problem in [Problem::Dirichlet, Problem::Neumann] {
        let (a, b) = build_problem(&seg, 4.0, 128, 512, problem, [0.6, 0.8]).unwrap();
        for pre in [Preconditioner::None, Preconditioner::LaplaceDiag, Preconditioner::Parametrix] {
            let p = build_preconditioner(&seg, 4.0, 128, problem, pre).unwrap();
            assert_eq!(p.is_none(), pre == Preconditioner::None);
            let rep = solve_once(&a, &b, p.as_ref(), 1e-8, 128);
            assert!(rep.converged, "{problem:?} {}", pre.name());
            // true residual, not only the preconditioned one
            let ax = a.apply(&rep.solution);
            let res: f64 = ax.iter().zip(&b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
            let bn: f64 = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            assert!(res / bn < 1e-6, "{problem:?} {}: {}", pre.name(), res / bn);
        }
    }
}

#[test]
fn print_symbol_reports_all_symbols() {
    let r = print_symbol(&Config { depth: 3, ..Config::default() }).unwrap();
    for name in ["sigma_S", "sigma_V", "sigma_N", "sqrt(D)", "sigma_S a1", "sigma_S a2"] {
        assert!(r.details.contains_key(name), "{name}");
    }
    let rows = r.details["sigma_S"].as_array().unwrap();
    assert_eq!(rows[0]["exponent"], -1);
    assert_eq!(rows[0]["coefficient"], "1/2");
}

#[test]
fn report_summary_lists_failures() {
    let c = Cell::new("x", "segment", 1.0, 8);
    let r = Report { rows: vec![c.at_most("a", 2.0, 1.0), c.at_least("b", 2.0, 1.0), c.info("c", 0.0)], ..Default::default() };
    assert!(!r.all_pass());
    assert_eq!(r.failures().len(), 1);
    let s = r.summary();
    assert!(s.contains("2 checks, 1 failed"));
    assert!(s.contains("FAIL x segment"));
}

fn json_blocks(text: &str) -> Vec<String> {
    text.split("```json\n").skip(1).map(|b| b.split("```").next().unwrap().to_string()).collect()
}

#[test]
fn readme_examples_parse() {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    let blocks = json_blocks(&readme);
    assert_eq!(blocks.len(), 2);
    for line in blocks[0].lines() {
        let spec: arcbie_core::curve::CurveSpec = serde_json::from_str(line).unwrap();
        spec.build().unwrap();
    }
    let cfg = Config::from_json(&blocks[1]).unwrap();
    assert_eq!(cfg.problem, Problem::Neumann);
    assert!(cfg.dump_matrices);
}

#[test]
fn schema_lists_every_config_field() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/config.schema.json")).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    let cfg = serde_json::to_value(Config::default()).unwrap();
    let props = schema["properties"].as_object().unwrap();
    let fields = cfg.as_object().unwrap();
    assert_eq!(props.len(), fields.len());
    for key in fields.keys() {
        assert!(props.contains_key(key), "{key}");
    }
    let th = schema["properties"]["thresholds"]["properties"].as_object().unwrap();
    assert_eq!(th.len(), fields["thresholds"].as_object().unwrap().len());
}
