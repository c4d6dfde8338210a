use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clap::Parser;
use isodyn::cli::{builtin, parse_csv, run, Cli, Scenario, BUILTIN_NAMES};

fn isodyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isodyn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("isodyn-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn shipped_scenario_files_match_builtins() {
    for name in BUILTIN_NAMES {
        let path = scenario_dir().join(format!("{name}.json"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let expected = builtin(name).unwrap();
        assert_eq!(Scenario::from_json(&text).unwrap(), expected, "{name}");
        assert_eq!(text, expected.to_json() + "\n", "{name}: regenerate with the export_scenarios example");
        assert_eq!(Scenario::load(path.to_str().unwrap()).unwrap(), expected);
    }
}

#[test]
fn count_prints_the_torsion_count() {
    let o = isodyn(&["count", "--scenario", "mult-by-2", "--l", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["3", "49", "49"]), "{out}");
    assert!(stderr(&o).is_empty());
}

#[test]
fn file_and_builtin_give_the_same_report_body() {
    let path = scenario_dir().join("gaussian-cm.json");
    let a = isodyn(&["growth", "--scenario", "gaussian-cm", "--lmax", "6", "--format", "csv"]);
    let b = isodyn(&["growth", "--scenario", path.to_str().unwrap(), "--lmax", "6", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn csv_output_reparses_to_the_report() {
    let cases: &[&[&str]] = &[
        &["growth", "--scenario", "gaussian-cm", "--lmax", "10", "--format", "csv"],
        &["compare", "--scenario", "silverman-sumdiff", "--format", "csv"],
        &["quotient", "--scenario", "bielliptic-quotient", "--lmax", "2", "--format", "csv"],
        &["subvariety", "--scenario", "diagonal-subvariety", "--lmax", "8", "--format", "csv"],
        &["verify", "--all", "--scenario", "silverman-sumdiff", "--format", "csv"],
        &["enumerate", "--scenario", "mult-by-3", "--format", "csv"],
    ];
    for args in cases {
        let o = isodyn(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let parsed = parse_csv(&stdout(&o)).unwrap();

        let cli = Cli::try_parse_from(std::iter::once("isodyn").chain(args.iter().copied())).unwrap();
        let report = run(&cli).unwrap();
        assert_eq!(parsed.len(), report.tables.len(), "{args:?}");
        for (p, t) in parsed.iter().zip(&report.tables) {
            assert_eq!(p.header, t.header, "{args:?}");
            assert_eq!(p.rows, t.rows, "{args:?}");
            if report.tables.len() > 1 {
                assert_eq!(p.title, t.title);
            }
        }
    }
}

#[test]
fn growth_csv_has_header_and_exact_ratios() {
    let o = isodyn(&["growth", "--scenario", "gaussian-cm", "--lmax", "10", "--format", "csv"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("l,exact_count,asymptote,ratio,ratio_approx"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10);
    assert!(rows[9].starts_with("10,1025,1024,1025/1024,"), "{}", rows[9]);
}

#[test]
fn degenerate_iterate_exits_with_two() {
    let o = isodyn(&["count", "--scenario", "unpolarizable-1x4", "--l", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("degenerate"), "{}", stderr(&o));
}

#[test]
fn budget_refusal_exits_with_two() {
    let o = isodyn(&["enumerate", "--scenario", "mult-by-5-g2", "--l", "2", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn brute_force_over_budget_is_a_warning() {
    let o = isodyn(&["count", "--scenario", "mult-by-3-g2", "--l", "3", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("456976"));
    assert!(stderr(&o).contains("warning: l = 3: brute force skipped"), "{}", stderr(&o));
}

#[test]
fn validation_errors_exit_with_one() {
    let o = isodyn(&["count", "--scenario", "no-such-scenario"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no-such-scenario"));

    let bad = scratch("bad.json");
    let text = builtin("gaussian-cm").unwrap().to_json().replace("\"1\", \"1\"]", "\"1\", \"1/2\"]");
    std::fs::write(&bad, text).unwrap();
    let o = isodyn(&["count", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("endomorphism.matrix[1][1]"), "{}", stderr(&o));

    let o = isodyn(&["quotient", "--scenario", "mult-by-2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no action"));

    let o = isodyn(&["count", "--scenario", "mult-by-2", "--l", "0"]);
    assert_eq!(o.status.code(), Some(1));

    let o = isodyn(&["bogus"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("growth.csv");
    let o = isodyn(&[
        "growth",
        "--scenario",
        "mult-by-2",
        "--lmax",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().nth(3), Some("3,49,64,49/64,0.765625000000"));
}

#[test]
fn verify_all_reports_polarization() {
    let o = isodyn(&["verify", "--all", "--scenario", "silverman-sumdiff"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.contains("multiplier_q")).unwrap();
    assert_eq!(line.split_whitespace().last(), Some("2"));
    assert!(!stderr(&o).contains("check failed"));
}

#[test]
fn help_exits_with_zero() {
    let o = isodyn(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["count", "enumerate", "growth", "compare", "quotient", "subvariety", "verify", "scenarios"] {
        assert!(stdout(&o).contains(sub), "{sub}");
    }
}
