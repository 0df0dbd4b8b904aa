use std::collections::BTreeSet;
use std::fs;
use std::process::{Command, Output};

use clap::CommandFactory;
use goose_cli::{Cli, OUT_DIR_ENV};

fn goose(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goose"))
        .args(args)
        .env_remove(OUT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Every long flag of every subcommand, including global ones.
fn accepted_flags() -> BTreeSet<String> {
    let cli = Cli::command();
    let mut flags = BTreeSet::new();
    let mut visit = |cmd: &clap::Command| {
        for arg in cmd.get_arguments() {
            if let Some(long) = arg.get_long() {
                flags.insert(format!("--{long}"));
            }
        }
    };
    visit(&cli);
    for sub in cli.get_subcommands() {
        visit(sub);
    }
    flags
}

#[test]
fn every_flag_has_help_and_appears_in_readme() {
    let cli = Cli::command();
    cli.clone().debug_assert();
    for sub in cli.get_subcommands() {
        assert!(sub.get_about().is_some(), "{} lacks a description", sub.get_name());
        for arg in sub.get_arguments() {
            if matches!(arg.get_id().as_str(), "help" | "version") {
                continue;
            }
            assert!(arg.get_help().is_some(), "{} --{:?} lacks help", sub.get_name(), arg.get_long());
        }
    }

    let readme = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    let start = readme.find("## Command line").expect("command line section");
    let end = readme[start..].find("### Configuration").map_or(readme.len(), |e| start + e);
    let readme = &readme[start..end];
    let accepted = accepted_flags();
    for flag in &accepted {
        if flag == "--help" || flag == "--version" {
            continue;
        }
        assert!(readme.contains(flag.as_str()), "README does not document {flag}");
    }
    let documented: BTreeSet<String> = readme
        .split(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '_'))
        .filter(|w| w.strip_prefix("--").is_some_and(|r| r.starts_with(|c: char| c.is_ascii_alphabetic())))
        .map(String::from)
        .collect();
    for flag in documented {
        assert!(accepted.contains(&flag), "README documents unknown flag {flag}");
    }
}

#[test]
fn unknown_flags_are_rejected_with_usage() {
    let o = goose(&["run", "--problem", "F1", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn list_is_sorted_and_complete() {
    let o = goose(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let ids: Vec<&str> = text.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(text.lines().any(|l| l.starts_with("F18 ") && l.ends_with("fmin 3")));
    assert!(text.lines().any(|l| l.starts_with("CEC01 ") && l.contains("dim 9 ")));
}

#[test]
fn run_smoke_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = goose(&["run", "--problem", "F1", "--iters", "1", "--runs", "1", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("F1"));
    assert!(dir.path().join("F1_seed0/summary.json").exists());

    let o = goose(&["run", "--problem", "NOPE", "--out", out]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("F18"));
    assert!(stderr(&o).contains("welded_beam"));
}

#[test]
fn seeded_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &str| {
        goose(&["run", "--problem", "F16", "--iters", "20", "--runs", "4", "--seed", "9", "--trace", "full_history", "--out", out])
    };
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert!(args(a.to_str().unwrap()).status.success());
    assert!(goose(&["--workers", "1", "run", "--problem", "F16", "--iters", "20", "--runs", "4", "--seed", "9", "--trace", "full_history", "--out", b.to_str().unwrap()]).status.success());
    for name in ["summary.json", "convergence.csv", "traces/goose_F16_run000.json"] {
        let path = format!("F16_seed9/{name}");
        assert_eq!(fs::read(a.join(&path)).unwrap(), fs::read(b.join(&path)).unwrap(), "{name}");
    }
}

#[test]
fn output_directory_defaults_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_goose"))
        .args(["run", "--problem", "F17", "--iters", "2", "--runs", "2"])
        .env(OUT_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("F17_seed0/convergence.csv").exists());
}

#[test]
fn engineer_presets() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = goose(&["engineer", "--problem", "igg", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("igg: 12 agents, 150 iterations, 30 runs"));

    let o = goose(&["engineer", "--problem", "eld", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("eld: 30 agents, 1000 iterations, 50 runs"));
    assert!(dir.path().join("eld_seed0/comparison.csv").exists());
}

#[test]
fn engineer_reads_eld_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("eld.toml");
    fs::write(
        &cfg,
        "demand = 100.0\n[[units]]\na = 0.01\nb = 2.0\nc = 10.0\np_min = 10.0\np_max = 80.0\n\
         [[units]]\na = 0.02\nb = 1.0\nc = 5.0\np_min = 10.0\np_max = 80.0\n",
    )
    .unwrap();
    let out = dir.path().to_str().unwrap();
    let o = goose(&["engineer", "--problem", "eld", "--config", cfg.to_str().unwrap(), "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    fs::write(&cfg, "demand = 100.0\nunits = []\n").unwrap();
    let o = goose(&["engineer", "--problem", "eld", "--config", cfg.to_str().unwrap(), "--out", out]);
    assert!(!o.status.success());
}

#[test]
fn compare_saved_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(goose(&["run", "--problem", "F18", "--iters", "50", "--runs", "3", "--out", out]).status.success());
    let report = dir.path().join("F18_seed0/summary.json");
    let o = goose(&["compare", "--report", report.to_str().unwrap(), "--table", "T2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("F18"));
    assert!(stdout(&o).contains("rank"));
    let o = goose(&["compare", "--report", report.to_str().unwrap(), "--table", "T99"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("T18"));
}

#[test]
fn selftest_exit_code_reflects_criteria() {
    let o = goose(&["selftest"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("criterion")).collect();
    assert_eq!(lines.len(), 15);
    let any_fail = lines.iter().any(|l| l.contains("[FAIL]"));
    assert_eq!(o.status.success(), !any_fail);
}
