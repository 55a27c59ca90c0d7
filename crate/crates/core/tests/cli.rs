// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn amtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amtree")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, body: &[u8]) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn tree_real_two_leaves() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w.txt", b"1.2\n0.3");
    for algo in ["new", "sorted", "auto"] {
        let v = json(&amtree(&["tree", &f, "--algo", algo]));
        assert!((v["alpha"].as_f64().unwrap() - 2.2).abs() < 1e-12);
        assert_eq!(v["depths"], serde_json::json!([1, 1]));
        assert_eq!(v["parent_array"], serde_json::json!([2, 2, -1]));
        assert_eq!(v["n"], 2);
        assert_eq!(v["d"], 2);
        assert!(v["instrumentation"].is_object());
    }
}

#[test]
fn tree_int_ten_weights() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "y.txt", b"4\n5\n2\n2\n2\n1\n2\n3\n6\n4");
    let v = json(&amtree(&["tree", "--int", &f, "--dump-level-tree"]));
    assert_eq!(v["alpha"], 8);
    assert_eq!(v["level_tree"]["cost"], 8);
    let out = amtree(&["--pretty", "tree", "--int", &f]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("alpha    8"));
}

#[test]
fn tree_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "e.txt", b"");
    assert_eq!(amtree(&["tree", &empty]).status.code(), Some(2));
    let bad = write(dir.path(), "b.txt", b"1\n2\nthree\n");
    let out = amtree(&["tree", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(amtree(&["tree", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(amtree(&["tree", "--int", &write(dir.path(), "f.txt", b"1.5")]).status.code(), Some(2));
}

#[test]
fn code_then_stats() {
    let dir = tempfile::tempdir().unwrap();
    let sample = write(dir.path(), "s.txt", b"aab");
    let book = dir.path().join("cb.json");
    let v = json(&amtree(&["code", &sample, "--out", book.to_str().unwrap()]));
    assert_eq!(v["symbols"], 2);
    let expected_bound = 1.0 + (2.0f64 / 3.0).log2();
    assert!((v["bound"].as_f64().unwrap() - expected_bound).abs() < 1e-12);

    let r = json(&amtree(&["stats", "--code", book.to_str().unwrap(), &sample]));
    assert_eq!(r["avg_len"], 1.0);
    assert_eq!(r["relative_entropy"], 0.0);
    let h = r["entropy"].as_f64().unwrap();
    assert!((r["excess"].as_f64().unwrap() - (1.0 - h)).abs() < 1e-12);
    assert!(r["excess"].as_f64().unwrap() <= r["bound"].as_f64().unwrap() + 1e-9);
}

#[test]
fn stats_point_mass_target() {
    let dir = tempfile::tempdir().unwrap();
    let sample = write(dir.path(), "s.txt", b"ab");
    let target = write(dir.path(), "t.txt", b"aaaa");
    let book = dir.path().join("cb.json");
    json(&amtree(&["code", &sample, "--out", book.to_str().unwrap()]));
    let r = json(&amtree(&["stats", "--code", book.to_str().unwrap(), &target]));
    assert_eq!(r["avg_len"], 1.0);
    assert_eq!(r["entropy"], 0.0);
    assert_eq!(r["relative_entropy"], 1.0);
}

#[test]
fn unknown_symbol_and_smoothing() {
    let dir = tempfile::tempdir().unwrap();
    let sample = write(dir.path(), "s.txt", b"ab");
    let target = write(dir.path(), "t.txt", b"abc");
    let book = dir.path().join("cb.json");
    json(&amtree(&["code", &sample, "--out", book.to_str().unwrap()]));
    let out = amtree(&["stats", "--code", book.to_str().unwrap(), &target]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"c\""));

    json(&amtree(&["code", &sample, "--smoothing", "add-one", "--alphabet", "bytes", "--out", book.to_str().unwrap()]));
    let r = json(&amtree(&["stats", "--code", book.to_str().unwrap(), &target]));
    assert!(r["excess"].as_f64().unwrap() <= r["bound"].as_f64().unwrap() + 1e-9);
}

#[test]
fn zero_count_in_csv_sample_is_an_error_without_smoothing() {
    let dir = tempfile::tempdir().unwrap();
    let sample = write(dir.path(), "s.csv", b"label,count\nx,3\ny,0\n");
    let out = amtree(&["code", "--csv", &sample]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&amtree(&["code", "--csv", "--smoothing", "add-one", &sample]));
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["label"], "y");
}

#[test]
fn bench_is_deterministic() {
    let args = ["bench", "--n", "2000", "--d", "3", "--trials", "4", "--seed", "9", "--deterministic"];
    let a = amtree(&args);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    let b = amtree(&threaded);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,d,algo,wall_ns,sets,undos,finds,unions"));
    assert_eq!(lines.count(), 8);
    assert_eq!(amtree(&["bench", "--n", "3", "--d", "4"]).status.code(), Some(2));
}
