use deckforge::deck::compute_deck;
use deckforge::graph::{basic_family, Family, Graph};
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn deckforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deckforge")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_deckforge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fam(kind: Family, p: &[usize]) -> Graph {
    basic_family(kind, p).unwrap()
}

fn write_deck(dir: &Path, name: &str, g: &Graph, k: usize) -> String {
    let path = dir.join(name);
    fs::write(&path, compute_deck(g, k).unwrap().to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn deck_of_five_vertex_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = fam(Family::Cycle, &[4]).disjoint_union(&Graph::empty(1).unwrap()).unwrap();
    let input = dir.path().join("five.g6");
    fs::write(&input, format!("{}\n", g.graph6())).unwrap();
    let out = dir.path().join("deck.json");
    let o = deckforge(&["deck", "--k", "3", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["cards"].as_array().unwrap().len(), 3);
    assert_eq!(json["n"], 5);
    // stdin and stdout give the same bytes
    let piped = with_stdin(&["deck", "--k", "3"], &g.graph6());
    assert_eq!(stdout(&piped), fs::read_to_string(&out).unwrap());
}

#[test]
fn compare_reports_equal_and_different() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_deck(dir.path(), "a.json", &fam(Family::CompleteMultipartite, &[7, 4, 3]), 3);
    let b = write_deck(dir.path(), "b.json", &fam(Family::CompleteMultipartite, &[6, 6, 1, 1]), 3);
    let o = deckforge(&["compare", "--a", &a, "--b", &b]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "EQUAL");
    let c = write_deck(dir.path(), "c.json", &fam(Family::CompleteMultipartite, &[6, 6, 1, 1]), 4);
    let o = deckforge(&["compare", "--a", &a, "--b", &c]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "DIFFERENT");
}

#[test]
fn reconstruction_returns_the_canonical_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let two = fam(Family::Cycle, &[4]).disjoint_union(&fam(Family::Spider, &[2, 1, 1])).unwrap();
    let d = write_deck(dir.path(), "comp.json", &two, 6);
    let o = deckforge(&["reconstruct-components", "--in", &d]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["graph6"], two.canonical().graph6());

    let k743 = fam(Family::CompleteMultipartite, &[7, 4, 3]);
    let d = write_deck(dir.path(), "mp.json", &k743, 4);
    let o = deckforge(&["reconstruct-multipartite", "--in", &d]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["parts"], serde_json::json!([7, 4, 3]));
    assert_eq!(json["graph6"], k743.canonical().graph6());
    let d = write_deck(dir.path(), "cu.json", &k743.complement(), 4);
    let o = deckforge(&["reconstruct-multipartite", "--in", &d]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["class"], "clique_union");
    assert_eq!(json["graph6"], k743.complement().canonical().graph6());

    let bridge = deckforge::suite::cubic_bridge_graph();
    let d = write_deck(dir.path(), "reg.json", &bridge, 6);
    let o = deckforge(&["reconstruct-regular", "--in", &d, "--r", "3"]);
    assert_eq!(stdout(&o).trim(), bridge.canonical().graph6());

    let g = fam(Family::Cycle, &[6]);
    let d = write_deck(dir.path(), "deg.json", &g, 4);
    let o = deckforge(&["reconstruct-degrees", "--in", &d]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["sequence"], serde_json::json!([2, 2, 2, 2, 2, 2]));
}

#[test]
fn graph6_survives_every_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    for g in deckforge::search::enumerate_graphs(5).unwrap() {
        let canon = g.canonical().graph6();
        // the full deck holds the graph itself
        let o = with_stdin(&["deck", "--k", "5"], &g.graph6());
        let path = dir.path().join("full.json");
        fs::write(&path, stdout(&o)).unwrap();
        let o = deckforge(&["reconstruct-components", "--in", path.to_str().unwrap()]);
        let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(json["graph6"], canon.as_str());
    }
}

#[test]
fn families_and_max_recon() {
    let o = deckforge(&["gen-family", "path_shift", "--params", "3,3,4", "--verify"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    let g = deckforge::graph::parse_graph6(lines[0]).unwrap();
    let h = deckforge::graph::parse_graph6(lines[1]).unwrap();
    assert_eq!(compute_deck(&g, 3).unwrap(), compute_deck(&h, 3).unwrap());
    assert_eq!(lines[2], "k=3");
    assert!(lines[3].starts_with("holds"));
    // outside the bounds
    assert_eq!(deckforge(&["gen-family", "path_shift", "--params", "4,3,4"]).status.code(), Some(2));
    // C_4 against 2P_2: different edge counts
    let o = deckforge(&["gen-family", "maxdeg2_general", "--params", "3,-4,0,2,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = deckforge(&["gen-family", "maxdeg2_general", "--params", "3,-8,0,-4,-4", "--verify"]);
    assert!(o.status.success());

    let o = with_stdin(&["max-recon"], &fam(Family::Cycle, &[6]).graph6());
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn exit_codes() {
    assert_eq!(deckforge(&["deck"]).status.code(), Some(2));
    assert_eq!(deckforge(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(with_stdin(&["deck", "--k", "3"], "not graph6 at all").status.code(), Some(3));
    assert_eq!(with_stdin(&["reconstruct-components"], "{\"n\": 3").status.code(), Some(3));
    assert_eq!(with_stdin(&["deck", "--k", "9"], "Dl?").status.code(), Some(2));
    assert_eq!(deckforge(&["verify-paper", "--only", "99"]).status.code(), Some(2));
    assert_eq!(deckforge(&["search-pairs", "--n", "11", "--k", "3"]).status.code(), Some(2));
    assert_eq!(deckforge(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_pairs_writes_classes_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |resume: bool| {
        let mut args = vec!["--jobs", "2", "search-pairs", "--n", "6", "--k", "3"];
        if resume {
            args.push("--resume");
        }
        let o = Command::new(env!("CARGO_BIN_EXE_deckforge"))
            .args(&args)
            .env("DECKFORGE_CACHE", dir.path())
            .output()
            .unwrap();
        assert!(o.status.success());
        (stdout(&o), String::from_utf8(o.stderr).unwrap())
    };
    let (first, _) = run(false);
    assert!(fs::read_dir(dir.path()).unwrap().count() > 0);
    let (second, note) = run(true);
    assert_eq!(first, second);
    assert!(!note.contains(" 0 of"), "{note}");
    for line in first.lines() {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["n"], 6);
        assert!(rec["class"].as_array().unwrap().len() >= 2);
    }
}

#[test]
fn verify_paper_is_deterministic() {
    let args = ["verify-paper", "--only", "1,5,12,13", "--no-time", "--seed", "3"];
    let a = deckforge(&args);
    let b = deckforge(&args);
    assert_eq!(a.stdout, b.stdout);
    // the degree-list clause of check 5 does not hold
    assert_eq!(a.status.code(), Some(1));
    let text = stdout(&a);
    assert!(text.contains("[PASS] 1 ") && text.contains("[FAIL] 5 ") && text.contains("[PASS] 12"));
    assert!(deckforge(&["verify-paper", "--only", "1,13"]).status.success());
}
