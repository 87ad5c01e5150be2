use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn run_env(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quditbench"));
    cmd.args(args).env_remove("QUDITBENCH_SEED");
    if let Some(s) = seed {
        cmd.env("QUDITBENCH_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const SUBCOMMANDS: [&str; 13] = [
    "dj",
    "bv",
    "lpn",
    "ebv",
    "ebv-lwe",
    "keyrec",
    "ind-game",
    "relabel-classical",
    "relabel-quantum",
    "qft-check",
    "channels",
    "code3",
    "numbers",
];

#[test]
fn every_subcommand_has_help() {
    for sub in SUBCOMMANDS {
        let o = run(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        let text = stdout(&o);
        assert!(text.contains("Usage: quditbench"), "{sub}: {text}");
        assert!(text.contains("--seed"), "{sub}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["qft-check", "--bogus"][..],
        &["qft-check", "--q", "9..3"],
        &["qft-check", "--q", "1"],
        &["nope"],
        &[],
        &["ind-game", "--scheme", "prf", "--adversary", "key-recovery"],
        &["ebv-lwe", "--eta", "q/7"],
        &["channels", "--p", "1.5"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn bound_violations_exit_1_and_list_cells() {
    let o = run(&["qft-check", "--q", "3,7", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("q=3") && err.contains("q=7"), "{err}");
    assert!(stdout(&o).contains(",false"));

    let o = run(&["keyrec", "--n", "4", "--q", "23", "--trials", "20", "--m", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("key-recovery"));
}

#[test]
fn spec_examples_pass() {
    let o = run(&["qft-check", "--q", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);

    let o = run(&["keyrec", "--n", "8", "--q", "23", "--eta", "1", "--delta", "0.01", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(row.starts_with("key-recovery,8,23,1,2125,100,"), "{row}");

    let o = run(&["ebv", "--q", "2..16", "--n", "1..3", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 15 * 3);
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = ["ind-game", "--scheme", "lwe", "--trials", "200", "--seed", "11", "--format", "json"];
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_str(&stdout(o)).unwrap();
        assert!(v["wall_time_s"].is_number());
        v.as_object_mut().unwrap().remove("wall_time_s");
        v
    };
    assert_eq!(strip(&run(&args)), strip(&run(&args)));

    let csv = ["relabel-quantum", "--n", "4", "--m", "2", "--mu", "2", "--t", "1", "--draws", "8", "--seed", "3"];
    assert_eq!(run(&csv).stdout, run(&csv).stdout);
    let other = ["relabel-quantum", "--n", "4", "--m", "2", "--mu", "2", "--t", "1", "--draws", "8", "--seed", "4"];
    assert_ne!(run(&csv).stdout, run(&other).stdout);
}

#[test]
fn seed_comes_from_environment_unless_flagged() {
    let base = ["lpn", "--n", "3", "--eta", "0.25", "--secrets", "4"];
    let from_env = run_env(&base, Some("17"));
    let mut flagged = base.to_vec();
    flagged.extend(["--seed", "17"]);
    assert_eq!(from_env.stdout, run(&flagged).stdout);
    assert_ne!(from_env.stdout, run(&base).stdout);
    let mut override_env = base.to_vec();
    override_env.extend(["--seed", "0"]);
    assert_eq!(run_env(&override_env, Some("17")).stdout, run(&base).stdout);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qft.conf");
    std::fs::write(&path, "# sweep\nq = 3..4\n\ntol=1e-9\n").unwrap();
    let p = path.to_str().unwrap();

    let o = run(&["qft-check", "--config", p, "--format", "json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["q"], "3..4");
    assert_eq!(v["config"]["tol"], 1e-9);
    assert_eq!(v["cells"].as_array().unwrap().len(), 2);

    let o = run(&["qft-check", "--q", "5", "--config", p]);
    assert_eq!(stdout(&o).lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect::<Vec<_>>(), ["5"]);

    let flags = dir.path().join("flags.conf");
    std::fs::write(&flags, "exact = true\nq=3\nn=1\nsecrets=2\n").unwrap();
    let o = run(&["ebv", "--config", flags.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains(",exact,true"));

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "nonsense=1\n").unwrap();
    assert_eq!(run(&["qft-check", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["qft-check", "--config", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn output_and_transcript_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.csv");
    let log = dir.path().join("t.jsonl");
    let o = run(&[
        "ind-game",
        "--scheme",
        "lwe",
        "--adversary",
        "challenge-decryptor",
        "--trials",
        "25",
        "--output",
        report.to_str().unwrap(),
        "--transcripts",
        log.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&report).unwrap();
    assert!(csv.contains("challenge-decryptor,cca1,25,0,25,"), "{csv}");
    let lines: Vec<Value> =
        std::fs::read_to_string(&log).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 25);
    assert!(lines.iter().all(|t| t["aborted"].is_string() && t["win"] == false));
    assert_eq!(lines[7]["trial"], 7);
}

#[test]
fn json_mirrors_csv() {
    let args = ["relabel-classical", "--n", "1..3", "--m", "2", "--t", "1,8"];
    let csv = stdout(&run(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&run(&json_args))).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let columns: Vec<&str> = v["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(header, columns);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), lines.count());
    assert_eq!(cells[0]["ci99"], "exact");
    // (1/2)(1 − 2^{−3}) + 1/4
    assert_eq!(cells[0]["win_prob_exact"], "11/16");
    assert_eq!(v["pass"], true);
}
