use revspy::game::Transcript;
use std::process::{Command, Output};

fn revspy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revspy")).args(args).env_remove("REVSPY_STATE_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn solve_examples() {
    let o = revspy(&["solve", "--graph", "cycle:4", "--m", "2", "--r", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "sigma=2"), "{}", stdout(&o));

    let o = revspy(&["solve", "--graph", "star:4", "--m", "2", "--r", "3"]);
    assert!(stdout(&o).lines().any(|l| l == "sigma=1"), "{}", stdout(&o));

    let o = revspy(&["solve", "--graph", "hypercube:2", "--m", "2", "--r", "3", "--s", "1"]);
    assert!(stdout(&o).contains("s=1 winner=revolutionaries"), "{}", stdout(&o));
}

#[test]
fn solve_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("solve.json");
    let o = revspy(&["solve", "--graph", "path:4", "--m", "2", "--r", "4", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["sigma"], 2);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["table"].as_array().unwrap().last().unwrap()["winner"], "spies");
}

#[test]
fn exit_codes() {
    let o = revspy(&["solve", "--graph", "cube:3", "--m", "2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse_error"));
    let o = revspy(&["solve", "--graph", "cycle:4", "--m", "two", "--r", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = Command::new(env!("CARGO_BIN_EXE_revspy"))
        .args(["solve", "--graph", "cycle:8", "--m", "2", "--r", "4"])
        .env("REVSPY_STATE_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = revspy(&["--state-cap", "100", "solve", "--graph", "cycle:8", "--m", "2", "--r", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_documents_flags() {
    let o = revspy(&["--help"]);
    let text = stdout(&o);
    assert!(text.contains("REVSPY_STATE_CAP") && text.contains("family:params"));
    for cmd in ["solve", "duel", "verify", "serve"] {
        assert!(text.contains(cmd));
        assert!(revspy(&[cmd, "--help"]).status.success());
    }
}

#[test]
fn duel_brackets_the_m2_threshold() {
    let base = ["duel", "--graph", "bipartite:20,20", "--m", "2", "--r", "10", "--rev", "rev.bipartite-m2", "--spy", "spy.bipartite-m2", "--horizon", "200"];
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let mut args = base.to_vec();
    args.extend(["--s", "7", "--out", path.to_str().unwrap()]);
    let o = revspy(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("spies survive 200 rounds"));
    assert!(stdout(&o).contains(", 0 failed"));
    let t = Transcript::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t.rounds.len(), 200);

    let mut args = base.to_vec();
    args.extend(["--s", "6"]);
    let text = stdout(&revspy(&args));
    let round: u32 = text.split("win in round ").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!(round <= 2, "{text}");
}

#[test]
fn no_spies_lose_at_once() {
    for (graph, m) in [("cycle:5", 2), ("hypercube:3", 3), ("star:4", 2), ("random:12,0.4,3", 3)] {
        let m = m.to_string();
        let o = revspy(&["duel", "--graph", graph, "--m", &m, "--r", &m, "--s", "0", "--rev", "rev.single-threat", "--spy", "spy.random"]);
        assert!(stdout(&o).contains("revolutionaries win in round 0"), "{graph}: {}", stdout(&o));
    }
}

#[test]
fn mismatch_is_reported_before_play() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = revspy(&[
        "duel", "--graph", "hypercube:3", "--m", "2", "--r", "4", "--s", "2", "--rev", "rev.random", "--spy", "spy.bipartite-m2", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("strategy_mismatch"));
    assert!(stdout(&o).is_empty());
    assert!(!path.exists());
}

#[test]
fn identical_args_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = revspy(&[
            "duel", "--graph", "random:14,0.3,9", "--m", "2", "--r", "4", "--s", "2", "--rev", "rev.random", "--spy", "spy.random", "--seed", "17",
            "--horizon", "60", "--out", path.to_str().unwrap(),
        ]);
        (o.stdout, std::fs::read(path).unwrap())
    };
    assert_eq!(run("a.json"), run("b.json"));
    let solve = || revspy(&["solve", "--graph", "tree:5,2", "--m", "2", "--r", "3"]).stdout;
    assert_eq!(solve(), solve());
}

#[test]
fn verify_builtin_suites() {
    let o = revspy(&["verify", "--suite", "solver-oracle"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.json");
    let o = revspy(&["verify", "--suite", "table1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["entries"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_suite_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };

    let empty = write("empty.json", r#"{"experiments": []}"#);
    let o = revspy(&["verify", "--suite", &empty]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));

    let out = dir.path().join("results.json");
    let good = write(
        "good.json",
        &format!(
            r#"{{"output": {:?}, "experiments": [{{"name": "star", "graph": "star:6", "m": [2], "r": [4, 5], "s": [2],
                "pairings": [["rev.random", "spy.dominating-vertex"], ["*", "spy.dominating-vertex"]], "horizon": 50, "seeds": [0, 1],
                "expect": "spies", "skip_not_applicable": true}}]}}"#,
            out.to_str().unwrap()
        ),
    );
    let o = revspy(&["verify", "--suite", &good]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("2/2 passed"));
    assert!(out.exists());

    let losing = write(
        "losing.json",
        r#"{"experiments": [{"name": "bare", "graph": "cycle:6", "m": [2], "r": [2], "s": [0],
            "pairings": [["rev.single-threat", "spy.random"]], "horizon": 5, "seeds": [0], "expect": "spies"}]}"#,
    );
    let o = revspy(&["verify", "--suite", &losing]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));

    let invalid = write(
        "invalid.json",
        r#"{"experiments": [{"name": "x", "graph": "cycle:6", "m": [], "r": [2], "s": [0], "pairings": [["rev.random", "spy.random"]], "horizon": 5, "seeds": [0]}]}"#,
    );
    assert_eq!(revspy(&["verify", "--suite", &invalid]).status.code(), Some(2));
    let garbled = write("garbled.json", "{");
    assert_eq!(revspy(&["verify", "--suite", &garbled]).status.code(), Some(2));
    assert_eq!(revspy(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn generate_and_list() {
    let o = revspy(&["generate", "--graph", "path:3"]);
    let g = revspy::Graph::from_text(&stdout(&o)).unwrap();
    assert_eq!((g.n(), g.edge_count()), (3, 2));
    let o = revspy(&["strategies"]);
    assert_eq!(stdout(&o).lines().count(), 28);
}
