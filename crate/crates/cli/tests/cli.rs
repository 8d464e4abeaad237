use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn lowstretch(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowstretch"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    assert!(!o.status.success());
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) {
    fs::write(dir.path().join(name), text).unwrap();
}

#[test]
fn c4_tree_and_stretch() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c4.txt", "4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n");
    for algo in ["unweighted", "weighted", "improved"] {
        let out = stdout(&lowstretch(&["tree", "c4.txt", "--algo", algo, "-o", "t.json"], dir.path()));
        assert!(out.is_empty());
        let tree: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
        assert_eq!(tree["edge_ids"].as_array().unwrap().len(), 3);
        assert_eq!(tree["algorithm"], algo);

        let report: serde_json::Value =
            serde_json::from_str(&stdout(&lowstretch(&["stretch", "c4.txt", "t.json"], dir.path()))).unwrap();
        assert_eq!(report["average"], 1.5);
        assert_eq!(report["max"], 3.0);
    }

    let csv = stdout(&lowstretch(&["stretch", "c4.txt", "t.json", "--csv", "--akpw"], dir.path()));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("edge_id,u,v,length,tree_dist,stretch"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn tree_as_edge_list() {
    let dir = TempDir::new().unwrap();
    write(&dir, "p.txt", "3 3\n0 1 2\n1 2 1\n0 1 1\n");
    let out = stdout(&lowstretch(&["tree", "p.txt", "--format", "edgelist"], dir.path()));
    assert!(out.contains("# edge_ids 1 2\n"));
    assert!(out.contains("\n3 2\n1 2 1\n0 1 1\n"), "{out}");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    write(&dir, "bad.txt", "# comment\n3 2\n0 1 1\n1 x 1\n");
    let err = stderr(&lowstretch(&["tree", "bad.txt"], dir.path()));
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("bad vertex id `x`"), "{err}");

    write(&dir, "neg.txt", "2 1\n0 1 -1\n");
    let err = stderr(&lowstretch(&["tree", "neg.txt"], dir.path()));
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn disconnected_input_is_rejected() {
    let dir = TempDir::new().unwrap();
    write(&dir, "dis.txt", "4 2\n0 1 1\n2 3 1\n");
    for args in [&["tree", "dis.txt"][..], &["decompose", "dis.txt", "--epsilon", "0.5"]] {
        let err = stderr(&lowstretch(args, dir.path()));
        assert!(err.contains("disconnected"), "{err}");
    }
}

#[test]
fn unweighted_builder_rejects_weights() {
    let dir = TempDir::new().unwrap();
    write(&dir, "w.txt", "2 1\n0 1 2.5\n");
    let err = stderr(&lowstretch(&["tree", "w.txt", "--algo", "unweighted"], dir.path()));
    assert!(err.contains("non-unit"), "{err}");
}

#[test]
fn generated_graphs_round_trip() {
    let dir = TempDir::new().unwrap();
    let a = stdout(&lowstretch(&["gen", "--kind", "random:40:90", "--seed", "7", "--max-length", "50"], dir.path()));
    let b = stdout(&lowstretch(&["gen", "--kind", "random:40:90", "--seed", "7", "--max-length", "50"], dir.path()));
    assert_eq!(a, b);
    assert!(a.contains("# seed 7\n"));
    assert!(a.contains("# rng chacha8"));
    assert!(a.contains("\n40 90\n"));
    write(&dir, "g.txt", &a);

    stdout(&lowstretch(&["tree", "g.txt", "--root", "5", "-o", "t.json"], dir.path()));
    let par = stdout(&lowstretch(&["tree", "g.txt", "--root", "5", "--parallel"], dir.path()));
    assert_eq!(fs::read_to_string(dir.path().join("t.json")).unwrap(), par);
    let report: serde_json::Value =
        serde_json::from_str(&stdout(&lowstretch(&["stretch", "g.txt", "t.json"], dir.path()))).unwrap();
    assert!(report["average"].as_f64().unwrap() >= 1.0);
}

#[test]
fn decompose_writes_parts() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c4.txt", "4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n");
    let sd: serde_json::Value = serde_json::from_str(&stdout(&lowstretch(
        &["decompose", "c4.txt", "--epsilon", "0.5", "--t", "2"],
        dir.path(),
    )))
    .unwrap();
    assert_eq!(sd["parts"], serde_json::json!([[0], [1, 2], [3]]));
    assert_eq!(sd["index_mapping"].as_array().unwrap().len(), 2);

    let err = stderr(&lowstretch(&["decompose", "c4.txt", "--epsilon", "0.9"], dir.path()));
    assert!(err.contains("epsilon"), "{err}");
}

#[test]
fn smoke_bench_passes() {
    let dir = TempDir::new().unwrap();
    stdout(&lowstretch(&["bench", "--suite", "smoke", "-o", "b.csv"], dir.path()));
    let csv = fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert!(csv.starts_with("# lowstretch bench csv v1\n"));
    assert_eq!(csv.lines().count(), 2 + 1 + 8);
}
