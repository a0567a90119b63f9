use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerspine"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn gen_lists_graphs() {
    let o = run(&["gen", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("# graph").count(), 4);
    let o = run(&["gen", "--n", "5", "--simple"]);
    assert_eq!(stdout(&o).matches("# graph").count(), 1);
    assert_eq!(code(&run(&["gen", "--n", "9"])), 3);
}

#[test]
fn framings_of_k5() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k5.txt");
    fs::write(
        &path,
        "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",
    )
    .unwrap();
    let o = run(&["framings", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("# graph 0: 200 framings"));
    assert_eq!(out.lines().count(), 201);

    fs::write(&path, "2 3\n0 1\n0 1\n0 1\n").unwrap();
    assert_eq!(
        code(&run(&["framings", "--input", path.to_str().unwrap()])),
        2
    );
}

#[test]
fn census_writes_outputs_and_enforces_limits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "census",
        "--n-min",
        "3",
        "--n-max",
        "5",
        "--jobs",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("n=4 graphs=10 classes=5"));
    for f in [
        "census-3.jsonl",
        "census-4.jsonl",
        "census-5.jsonl",
        "manifest.json",
        "quarantine.jsonl",
    ] {
        assert!(out.join(f).exists(), "{f}");
    }
    let o = run(&[
        "census",
        "--n-min",
        "4",
        "--n-max",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);

    let o = run(&[
        "verify",
        "--input",
        out.join("census-5.jsonl").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&[
        "verify",
        "--input",
        out.join("census-3.jsonl").to_str().unwrap(),
    ]);
    assert!(stdout(&o).contains("not applicable (n < 4)"));
}

fn first_code(out: &Path) -> String {
    let text = fs::read_to_string(out.join("census-5.jsonl")).unwrap();
    let rec: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    rec["framed_code"].as_str().unwrap().to_string()
}

#[test]
fn export_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert_eq!(
        code(&run(&[
            "census",
            "--n-min",
            "5",
            "--n-max",
            "5",
            "--out",
            out.to_str().unwrap()
        ])),
        0
    );
    let fc = first_code(&out);
    let o = run(&["export", "--record", &fc, "--format", "tri-json"]);
    assert_eq!(code(&o), 0);
    let tri = dir.path().join("t.json");
    fs::write(&tri, stdout(&o)).unwrap();
    assert_eq!(code(&run(&["verify", "--input", tri.to_str().unwrap()])), 0);

    let mut doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    doc["tets"][0]["faces"][0]["corner_map"]
        .as_array_mut()
        .unwrap()
        .swap(0, 1);
    fs::write(&tri, doc.to_string()).unwrap();
    let o = run(&["verify", "--input", tri.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL manifold_ok"));

    assert_eq!(
        code(&run(&["export", "--record", &fc, "--format", "regina"])),
        2
    );
    assert_eq!(code(&run(&["export", "--record", "0badc0de"])), 2);
}

#[test]
fn volume_and_path_count() {
    let o = run(&["volume", "--n-max", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("n,theta,edge_length,tet_volume,total_volume\n4,"));
    assert_eq!(code(&run(&["volume", "--n-max", "3"])), 2);

    let o = run(&["path-count", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"n":3,"computed":15,"formula":15,"match":true}"#
    );
    assert_eq!(code(&run(&["path-count", "--n", "6"])), 3);
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(code(&run(&["census", "--n-min", "4"])), 2);
    assert_eq!(code(&run(&["verify", "--input", "/nonexistent/file"])), 2);
}
