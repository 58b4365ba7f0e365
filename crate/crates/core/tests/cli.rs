use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use fpgraph::cli::{run, Cli, Outcome};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .display()
        .to_string()
}

fn fpgraph(args: &[&str]) -> Outcome {
    let cli = Cli::try_parse_from(std::iter::once("fpgraph").chain(args.iter().copied())).unwrap();
    run(&cli)
}

fn status(args: &[&str]) -> i32 {
    fpgraph(args).status
}

#[test]
fn corpus_exit_statuses() {
    let c22 = corpus("example_2_2.instance");
    let c23 = corpus("example_2_3.instance");
    let c27 = corpus("example_2_7.instance");
    let lit = corpus("example_2_2_literal.instance");
    let cases: &[(&[&str], i32)] = &[
        (&["validate", &c22], 0),
        (&["validate", &lit], 1),
        (&["certify", "--kind", "psi1", &c22], 2),
        (&["certify", "--kind", "psi1", "--undirected-lift", &c22], 2),
        (&["certify", "--kind", "psi1", &c23], 1),
        // Loops, connectivity and range containment fail on the half-line.
        (&["certify", "--kind", "psi2", &c27], 2),
        (&["certify", "--kind", "psi2", &c22], 64),
        (&["certify", "--kind", "psi1", &lit], 3),
        (&["solve", "--start", "1", &c22], 0),
        (&["solve", "--start", "{3}", &c22], 1),
        (&["solve", "--start", "{1,2}", "--picard", "t", &c22], 0),
        (&["solve", "--start", "[0,5]", &c27], 0),
        (&["solve", "--start", "{9}", &c22], 64),
        (&["enumerate", &c23], 0),
        (&["gauge", &corpus("example_2_3.gauge")], 1),
        (&["validate", &corpus("no_such.instance")], 3),
    ];
    for (args, want) in cases {
        assert_eq!(status(args), *want, "fpgraph {}", args.join(" "));
    }
}

#[test]
fn machine_reports_carry_status_and_exact_rationals() {
    let out = fpgraph(&[
        "--format",
        "machine",
        "certify",
        "--kind",
        "psi1",
        &corpus("example_2_2.instance"),
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "fpgraph-report/1");
    assert_eq!(doc["exit_status"], out.status);
    assert_eq!(doc["overall"], "certified-with-caveats");
    let records = doc["sweeps"][0]["records"].as_array().unwrap();
    assert_eq!(records.len(), 208);
    assert!(records
        .iter()
        .all(|r| r["lhs"].is_string() && r["bound"].is_string()));
    let checks = doc["checks"].as_array().unwrap();
    let range = checks
        .iter()
        .find(|c| c["name"] == "range_containment")
        .unwrap();
    assert_eq!(range["verdict"], "refuted");
}

#[test]
fn machine_reports_are_deterministic() {
    for args in [
        vec![
            "--format",
            "machine",
            "certify",
            "--kind",
            "psi1",
            "--undirected-lift",
        ],
        vec!["--format", "machine", "enumerate"],
    ] {
        for f in ["example_2_2.instance", "example_2_3.instance"] {
            let path = corpus(f);
            let mut a = args.clone();
            a.push(&path);
            assert_eq!(fpgraph(&a), fpgraph(&a));
        }
    }
}

#[test]
fn missing_table_row_is_located() {
    let text = std::fs::read_to_string(corpus("example_2_2.instance")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["maps"]["S"]["table"].as_array_mut().unwrap().remove(3);
    let path = std::env::temp_dir().join(format!("fpgraph-cli-{}.instance", std::process::id()));
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = fpgraph(&["validate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status, 3);
    assert!(out.stderr.contains("maps.S.table"), "{}", out.stderr);
}

#[test]
fn binary_maps_usage_errors_to_64() {
    let bin = env!("CARGO_BIN_EXE_fpgraph");
    let bad = Command::new(bin)
        .args(["certify", "--kind", "psi9", "x"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(64));
    let ok = Command::new(bin)
        .args(["solve", "--start", "1", &corpus("example_2_2.instance")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("coincidence-found"));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
