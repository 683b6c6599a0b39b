use std::process::{Command, Output};

use revpair::export;

fn revpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revpair"))
        .args(args)
        .env_remove("RSP_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = revpair(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn pairs_for_one_multiplier() {
    assert_eq!(
        stdout(&["pairs", "--base", "18", "--a", "7", "--max-digits", "20"]),
        "2483D8\n2483D9E483D8\n2483D9E483D9E483D8\n"
    );
}

#[test]
fn pairs_for_a_base() {
    assert_eq!(
        stdout(&["pairs", "--base", "10", "--max-digits", "6"]),
        "(2,2)\n(2,47)\n(2,497)\n(2,4997)\n(2,49997)\n(2,499997)\n(3,24)\n(9,9)\n"
    );
    assert_eq!(
        stdout(&["pairs", "--base", "16", "--max-digits", "4"]),
        "(2,2)\n(2,6B)\n(2,6FB)\n(2,6FFB)\n(F,F)\n"
    );
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["pairs", "--base", "18", "--max-digits", "7", "--format", "json"])).unwrap();
    let rendered: Vec<&str> = json["pairs"].as_array().unwrap().iter().map(|p| p["render"].as_str().unwrap()).collect();
    assert_eq!(rendered, ["(2,2)", "(3,37)", "(4,25)", "(7,2483D8)", "(B,1961DC5)", "(H,H)"]);
}

#[test]
fn multiplier_spellings() {
    let hex = stdout(&["pairs", "--base", "18", "--a", "b", "--max-digits", "7"]);
    assert_eq!(hex, stdout(&["pairs", "--base", "18", "--a", "11", "--max-digits", "7"]));
    assert_eq!(hex, "1961DC5\n");
    let decimal = stdout(&["automaton", "--base", "150", "--a", "31"]);
    assert_eq!(decimal, stdout(&["automaton", "--base", "150", "--a", "(31)"]));
    assert_eq!(
        stdout(&["regex", "--base", "16", "--a", "2", "--decimal"]),
        stdout(&["regex", "--base", "16", "--a", "2"])
    );
    assert_eq!(revpair(&["regex", "--base", "16", "--a", "F", "--decimal"]).status.code(), Some(2));
}

#[test]
fn automaton_text() {
    assert_eq!(
        stdout(&["automaton", "--base", "18", "--a", "7"]),
        "Automaton with base = 18 and a = 7\n  States: 7\n  Transitions: 7\n  Accepting: 2\n  Trimmed: false\n"
    );
    assert_eq!(
        stdout(&["automaton", "--base", "150", "--a", "31", "--trim"]),
        "Automaton with base = 150 and a = (31)\n  States: 1\n  Transitions: 0\n  Accepting: 0\n  Trimmed: true\n"
    );
}

#[test]
fn automaton_json_round_trips() {
    for (base, a) in [("18", "7"), ("27", "10"), ("150", "31")] {
        for trim in [false, true] {
            let mut args = vec!["automaton", "--base", base, "--a", a, "--format", "json"];
            if trim {
                args.push("--trim");
            }
            let text = stdout(&args);
            let dfa = export::from_json(&text).unwrap();
            let mut direct = revpair::RspAutomaton::build(a.parse().unwrap(), base.parse().unwrap()).unwrap();
            if trim {
                direct = direct.trim();
            }
            assert_eq!(dfa, direct);
            assert_eq!(export::to_json(&dfa) + "\n", text);
        }
    }
}

#[test]
fn automaton_dot_and_out_file() {
    let dot = stdout(&["automaton", "--base", "27", "--a", "10", "--format", "dot"]);
    assert!(dot.contains("fillcolor=yellow"));
    assert!(dot.contains("shape=doublecircle, fillcolor=lightblue"));
    assert!(dot.contains("rankdir=LR"));

    let dir = std::env::temp_dir().join(format!("revpair-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a27.dot");
    let out = revpair(&["automaton", "--base", "27", "--a", "10", "--format", "dot", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), dot);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn regex_output() {
    assert_eq!(stdout(&["regex", "--base", "10", "--a", "3"]), "(2,4)\n");
    assert_eq!(stdout(&["regex", "--base", "10", "--a", "4"]), "∅\n");
}

#[test]
fn analysis_commands() {
    let omega = stdout(&["omega", "--a-max", "10"]);
    let rows: Vec<&str> = omega.lines().skip(1).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(rows, ["1/3", "1/8", "4/15", "3/24", "13/35", "4/48", "22/63", "12/80", "26/99"]);

    assert_eq!(stdout(&["conjecture", "--max-base", "512"]), "2 3 4 5 6 7 8 9 12 15 21\n");

    let ratio = stdout(&["--jobs", "2", "ratio", "--max-base", "512"]);
    assert!(ratio.starts_with("2 0/1 0.0000\n3 1/1 1.0000\n"));
    assert!(ratio.ends_with("mean = 0.1354\nvariance = 0.0097\n"));

    let json: serde_json::Value = serde_json::from_str(&stdout(&["participation", "--a", "7", "--format", "json"])).unwrap();
    assert_eq!(json["omega"], "4/48");
    assert_eq!(json["omega_reduced"], "1/12");
    assert_eq!(json["residues"], serde_json::json!([6, 18, 20, 26]));
}

#[test]
fn deterministic_output() {
    let args = ["pairs", "--base", "18", "--max-digits", "13", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let one = stdout(&["--jobs", "1", "conjecture", "--max-base", "200"]);
    assert_eq!(one, stdout(&["--jobs", "4", "conjecture", "--max-base", "200"]));
}

#[test]
fn exit_codes() {
    assert_eq!(revpair(&["automaton", "--base", "10", "--a", "10"]).status.code(), Some(2));
    assert_eq!(revpair(&["pairs", "--base", "1", "--max-digits", "3"]).status.code(), Some(2));
    assert_eq!(revpair(&["pairs", "--base", "10", "--max-digits", "0"]).status.code(), Some(2));
    assert_eq!(revpair(&["omega", "--a-max", "4", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(revpair(&["regex", "--base", "10", "--a", "zz"]).status.code(), Some(2));
    assert_eq!(revpair(&["frobnicate"]).status.code(), Some(2));
    let out = revpair(&["automaton", "--base", "10", "--a", "2", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}
