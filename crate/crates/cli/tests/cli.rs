use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const STAR6: &str = "p ds 6 5\ne 0 1\ne 0 2\ne 0 3\ne 0 4\ne 0 5\n";
const P4: &str = "p ds 4 3\ne 0 1\ne 1 2\ne 2 3\n";
const C4: &str = "p ds 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domgreedy")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_examples() {
    let dir = TempDir::new().unwrap();
    let star = write(dir.path(), "star6.gr", STAR6);
    let p4 = write(dir.path(), "p4.gr", P4);
    let c4 = write(dir.path(), "c4.gr", C4);

    let doc = json(&run(&["solve", "--algo", "classical", s(&star)]));
    assert_eq!(doc["size"], 1);

    let doc = json(&run(&["solve", "--algo", "fixed", "--i", "2", s(&p4)]));
    assert_eq!(doc["size"], 2);
    assert_eq!(doc["dominating_set"], serde_json::json!([1, 2]));
    assert_eq!(doc["i"], 2);

    let doc = json(&run(&["solve", "--algo", "auto", s(&c4)]));
    assert_eq!(doc["size"], 2);
    assert_eq!(doc["t_detected"], 3);
    assert_eq!(doc["witness"]["left"].as_array().unwrap().len(), 2);
    assert_eq!(doc["witness"]["right"].as_array().unwrap().len(), 2);
}

#[test]
fn solve_with_targets_and_hybrid() {
    let dir = TempDir::new().unwrap();
    let p4 = write(dir.path(), "p4.gr", P4);
    let targets = write(dir.path(), "t.txt", "0\n");
    let doc = json(&run(&["solve", "--algo", "classical", "--targets", s(&targets), s(&p4)]));
    assert_eq!(doc["dominating_set"], serde_json::json!([0]));

    let doc = json(&run(&["solve", "--algo", "hybrid", "--i", "2", s(&p4)]));
    assert_eq!(doc["algorithm"], "hybrid");
    assert!(doc["hybrid_prefix"].is_u64());
}

#[test]
fn solve_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let p4 = write(dir.path(), "p4.gr", P4);
    let broken = write(dir.path(), "broken.gr", "p ds 3 2\ne 0 1\n");
    assert_eq!(run(&["solve", s(&broken)]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--algo", "fixed", s(&p4)]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--algo", "fixed", "--i", "1", s(&p4)]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--algo", "nope", s(&p4)]).status.code(), Some(1));
    assert_eq!(run(&["solve", s(&dir.path().join("missing.gr"))]).status.code(), Some(1));
    let out = run(&["solve", s(&broken)]);
    assert!(!out.stderr.is_empty());
}

#[test]
fn exact_examples_and_guard() {
    let dir = TempDir::new().unwrap();
    let star = write(dir.path(), "star6.gr", STAR6);
    let p4 = write(dir.path(), "p4.gr", P4);
    assert_eq!(json(&run(&["exact", s(&p4)]))["opt_size"], 2);
    assert_eq!(json(&run(&["exact", s(&star)]))["opt_size"], 1);

    let big = dir.path().join("g40.gr");
    assert!(run(&["gen", "gnp", "--n", "40", "--p", "0.1", "--seed", "3", "--out", s(&big)]).status.success());
    let out = run(&["exact", s(&big)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
    assert!(json(&run(&["exact", "--force", s(&big)]))["opt_size"].as_u64().unwrap() > 0);

    let doc = json(&run(&["exact", "--budget", "1", s(&p4)]));
    assert_eq!(doc["exceeds_budget"], 1);
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let p4 = write(dir.path(), "p4.gr", P4);
    let c4 = write(dir.path(), "c4.gr", C4);
    let good = write(dir.path(), "good.txt", "1 2\n");
    let bad = write(dir.path(), "bad.txt", "0\n");

    let out = run(&["verify", s(&p4), "--ds", s(&good)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "OK");

    let out = run(&["verify", s(&p4), "--ds", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out).trim(), "FAIL: undominated {2,3}");

    let as_json = write(dir.path(), "ds.json", "[1, 2]");
    assert!(run(&["verify", s(&p4), "--ds", s(&as_json)]).status.success());

    let witness = write(dir.path(), "w.json", r#"{"left": [0, 2], "right": [1, 3]}"#);
    assert!(run(&["verify", s(&c4), "--witness", s(&witness)]).status.success());
    let not_witness = write(dir.path(), "nw.json", r#"{"left": [0, 1], "right": [2, 3]}"#);
    assert_eq!(run(&["verify", s(&c4), "--witness", s(&not_witness)]).status.code(), Some(2));

    assert_eq!(run(&["verify", s(&p4)]).status.code(), Some(1));
}

#[test]
fn solve_output_verifies() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.gr");
    assert!(run(&["gen", "d_degenerate", "--n", "30", "--d", "3", "--seed", "5", "--out", s(&g)]).status.success());
    for algo in ["classical", "auto"] {
        let doc = json(&run(&["solve", "--algo", algo, s(&g)]));
        let ds = write(dir.path(), "ds.json", &doc["dominating_set"].to_string());
        assert!(run(&["verify", s(&g), "--ds", s(&ds)]).status.success());
    }
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "random_tree", "--n", "12", "--seed", "4"]);
    let b = run(&["gen", "random_tree", "--n", "12", "--seed", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("p ds 12 11"));

    let sc = json(&run(&[
        "gen",
        "intersection_one_sc",
        "--universe",
        "8",
        "--sets",
        "4",
        "--max-set-size",
        "3",
        "--seed",
        "11",
    ]));
    assert_eq!(sc["universe"].as_array().unwrap().len(), 8);

    assert_eq!(run(&["gen", "gnp", "--n", "5", "--p", "1.5", "--seed", "1"]).status.code(), Some(1));
}

#[test]
fn reduce_examples() {
    let dir = TempDir::new().unwrap();
    let sc = write(dir.path(), "sc.json", r#"{"universe": [1, 2, 3, 4], "sets": [[1, 2], [3, 4], [1, 3]]}"#);
    let graph = dir.path().join("r.gr");
    let map = dir.path().join("map.json");
    let out = run(&["reduce", s(&sc), "--out", s(&graph), "--map", s(&map), "--check-free"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no K_{3,3}"));
    assert!(fs::read_to_string(&graph).unwrap().starts_with("p ds 9 10"));
    let map: Value = serde_json::from_str(&fs::read_to_string(&map).unwrap()).unwrap();
    assert_eq!(map["vertices"].as_array().unwrap().len(), 9);

    let bad = write(dir.path(), "bad.json", r#"{"universe": [1, 2, 3], "sets": [[1, 2, 3], [1, 2]]}"#);
    let out = run(&["reduce", s(&bad), "--out", s(&dir.path().join("x.gr"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sets 0 and 1"));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn bench_grids_hybrid_ratio_dominates() {
    let specs: Vec<String> = (2..=6).flat_map(|w| (2..=6).map(move |h| format!("grid:{w}:{h}"))).collect();
    let out = run(&[
        "bench",
        "--gen",
        &specs.join(","),
        "--algos",
        "classical,fixed:2,hybrid:2",
        "--with-exact",
        "--max-n",
        "36",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 75);
    for chunk in rows.chunks(3) {
        let (classical, hybrid) = (&chunk[0], &chunk[2]);
        assert_eq!(classical[3], "classical");
        assert_eq!(hybrid[3], "hybrid");
        let ratio = |r: &Vec<String>| r[7].parse::<f64>().unwrap();
        assert!(ratio(hybrid) <= ratio(classical));
        assert!(chunk.iter().all(|r| r[11] == "true"));
    }
}

#[test]
fn bench_edge_cases() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let out = run(&["bench", "--graphs", s(&empty), "--algos", "classical"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);

    let out = run(&["bench", "--gen", "random_tree:20:1,random_tree:30:2", "--algos", "auto"]);
    for row in csv_rows(&stdout(&out)) {
        assert_eq!(row[8], "2");
    }

    // an unreadable instance becomes an error row
    let graphs = dir.path().join("graphs");
    fs::create_dir(&graphs).unwrap();
    write(&graphs, "a.gr", P4);
    write(&graphs, "b.gr", "not a graph");
    let out = run(&["bench", "--graphs", s(&graphs), "--algos", "classical,auto"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][0], "a.gr");
    assert!(!rows[2][12].is_empty() && !rows[3][12].is_empty());
}

#[test]
fn bench_csv_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let args = |out: &Path| {
        vec![
            "bench".to_owned(),
            "--gen".to_owned(),
            "gnp:25:0.2:1,grid:4:4,d_degenerate:20:2:9,intersection_one_sc:10:5:3:2".to_owned(),
            "--algos".to_owned(),
            "classical,fixed:2,fixed:3,auto,hybrid,hybrid:2".to_owned(),
            "--with-exact".to_owned(),
            "--out".to_owned(),
            s(out).to_owned(),
        ]
    };
    for path in [&a, &b] {
        let argv = args(path);
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        assert!(run(&argv).status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn help_and_version_exit_zero() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}
