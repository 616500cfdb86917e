//! End-to-end checks of the command-line binary: exit codes, output shape,
//! and reproducibility.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_purepair"))
}

fn write_tmp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("purepair-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn usage_error_is_exit_1() {
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn detect_hole_on_c5() {
    let path = write_tmp("c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let out = bin()
        .args(["detect", "--graph", path.to_str().unwrap(), "--hole", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "hole 5: witness 0 1 2 3 4");
}

#[test]
fn check_structure_ok_and_violation() {
    let graph = write_tmp("p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    let good = write_tmp("lv_good.txt", "levelling 4\n0\n1\n2\n3\n");
    let bad = write_tmp("lv_bad.txt", "levelling 3\n0\n2\n3\n");
    let g = graph.to_str().unwrap();
    let ok = bin()
        .args(["check-structure", "--graph", g, "--structure", good.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with("ok:"));
    let bad = bin()
        .args(["check-structure", "--graph", g, "--structure", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn gen_is_reproducible_and_feeds_back() {
    let run = || {
        bin()
            .args(["gen", "--family", "gnp", "--n", "12", "--p", "0.4", "--seed", "9"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let path = write_tmp("g12.txt", &String::from_utf8(a.stdout).unwrap());
    let out = bin()
        .args(["find-pure-pair", "--graph", path.to_str().unwrap(), "--mode", "exact"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("objective"), "missing objective in: {text}");
}

#[test]
fn fixture_gen_writes_valid_levellings() {
    let spec = write_tmp("fix.txt", "s=1\nt=1\nb1=5\nb2=5\nmatching=1\n");
    let dir = std::env::temp_dir().join("purepair-cli-tests");
    let gpath = dir.join("fix_graph.txt");
    let l1 = dir.join("fix_lv1.txt");
    let l2 = dir.join("fix_lv2.txt");
    let out = bin()
        .args([
            "gen", "--family", "fixture",
            "--spec", spec.to_str().unwrap(),
            "--seed", "3",
            "--out", gpath.to_str().unwrap(),
            "--lv1-out", l1.to_str().unwrap(),
            "--lv2-out", l2.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    for lv in [&l1, &l2] {
        let check = bin()
            .args([
                "check-structure",
                "--graph", gpath.to_str().unwrap(),
                "--structure", lv.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert_eq!(check.status.code(), Some(0), "levelling failed re-validation");
    }
}

#[test]
fn pipeline_embeds_planted_cycle() {
    let path = write_tmp("c6.txt", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    let out = bin()
        .args([
            "pipeline",
            "--graph", path.to_str().unwrap(),
            "--pattern", "c6",
            "--c", "0.5",
            "--eps", "0.3",
            "--mode", "permissive",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("embedding"), "missing embedding in: {text}");
}

#[test]
fn experiment_emits_sorted_csv() {
    let out = bin()
        .args([
            "experiment",
            "--family", "comparability",
            "--sizes", "14,10",
            "--trials", "2",
            "--seed", "5",
            "--budget", "50000",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "n,trial,seed,objective,fox_bound,asym_feasible,runtime_ms");
    assert_eq!(lines.len(), 5);
    let keys: Vec<(u64, u64)> = lines[1..]
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted, "rows not sorted by (n, trial)");
}
