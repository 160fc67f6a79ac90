use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fident(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fident"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str], code: i32) -> Value {
    let out = fident(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}\nstderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const IDENTITY_3: &str = r#"{"matrix": [["1","0","0"],["0","1","0"],["0","0","1"]]}"#;

#[test]
fn replay_power_centralizer_passes() {
    let r = report(&["replay", "thm21", "--algebra", "T2", "--n", "3", "--gamma", "1"], 0);
    assert_eq!(r["theorem"], "thm21");
    assert_eq!(r["solution_dim"], 1);
    let steps = r["traces"][0]["steps"].as_array().unwrap();
    assert!(steps.len() > 10);
    assert!(steps.iter().all(|s| s["pass"] == true));
}

#[test]
fn every_theorem_replays_on_t3() {
    for theorem in ["thm21", "cor22", "thm25", "cor-final"] {
        let r = report(&["replay", theorem, "--algebra", "T3", "--n", "3", "--gamma", "2"], 0);
        assert!(r["solution_dim"].as_u64().unwrap() >= 1, "{theorem}");
    }
}

#[test]
fn solve_degree_two_centralizer_identity() {
    let r = report(
        &[
            "identity",
            "solve",
            "--algebra",
            "T2",
            "--n",
            "2",
            "--text",
            "Psi(X^2)=g*X*Omega(X)=g*Omega(X)*X",
            "--central",
            "g=1",
            "--constrain",
            "Omega(1) in Z",
        ],
        0,
    );
    assert_eq!(r["dim"], 1);
    assert_eq!(r["n"], 2);
    assert_eq!(r["side_constraints"][0], "Omega(1) in Z");
    assert_eq!(r["unknowns"], serde_json::json!(["Psi", "Omega"]));
    assert_eq!(r["basis"][0]["Psi"], r["basis"][0]["Omega"]);
}

#[test]
fn degree_one_identity_is_an_input_error() {
    let out = fident(&["identity", "solve", "--algebra", "T2", "--text", "Psi(X) = Omega(X)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("n must exceed 1"));
}

#[test]
fn expectations_are_reported() {
    let pairs = report(
        &[
            "identity", "solve", "--algebra", "TriM2x1", "--shape", "power-centralizer", "--n", "3",
            "--gamma", "2", "--constrain", "Omega(1) in Z", "--expect", "central-pairs",
        ],
        0,
    );
    assert_eq!(pairs["verification"]["comparison"]["relation"], "equal");

    let general = report(
        &[
            "identity", "solve", "--algebra", "T2", "--shape", "symmetric-generalized", "--n", "2",
            "--constrain", "Omega(1) in Z", "--expect", "generalized",
        ],
        0,
    );
    assert_eq!(general["dim"], 3);

    let tied = report(
        &[
            "identity", "solve", "--algebra", "T2", "--shape", "symmetric-generalized", "--n", "3",
            "--constrain", "Omega(1) in Z", "--constrain", "Psi = Omega", "--expect", "central-pairs",
        ],
        0,
    );
    assert_eq!(tied["dim"], 1);
}

#[test]
fn wrong_expectation_fails_verification() {
    let r = report(
        &[
            "identity", "solve", "--algebra", "T2", "--shape", "symmetric-generalized", "--n", "2",
            "--constrain", "Omega(1) in Z", "--expect", "central-pairs",
        ],
        1,
    );
    assert_eq!(r["verification"]["comparison"]["result"], "fail");
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &str| {
        vec![
            "identity".to_string(), "solve".into(), "--algebra".into(), "T3".into(), "--shape".into(),
            "shifted-centralizer".into(), "--n".into(), "3".into(), "--gamma".into(), "2".into(),
            "--constrain".into(), "Omega(1) in Z".into(), "--out".into(), out.to_string(),
        ]
    };
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let args = args(path.to_str().unwrap());
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(fident(&refs).status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn built_algebra_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.json");
    let out = fident(&["algebra", "build", "--kind", "T3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let from_file = report(&["algebra", "info", "--algebra", path.to_str().unwrap()], 0);
    let builtin = report(&["algebra", "info", "--algebra", "T3"], 0);
    assert_eq!(from_file["fingerprint"], builtin["fingerprint"]);
    assert_eq!(from_file["center"]["dim"], 1);
    assert!(from_file.get("faithfulness").is_none());
    assert_eq!(builtin["faithfulness"]["left"], true);
}

#[test]
fn triangular_spec_builds_t2() {
    let dir = tempfile::tempdir().unwrap();
    let scalar = r#"{"dim": 1, "unit": ["1"], "structure": [[["1"]]]}"#;
    let spec = format!(
        r#"{{"A": {scalar}, "B": {scalar}, "M": {{"dimM": 1, "left_action": [[["1"]]], "right_action": [[["1"]]]}}}}"#
    );
    let spec_path = write(dir.path(), "spec.json", &spec);
    let out_path = dir.path().join("alg.json");
    let out = fident(&["algebra", "build", "--spec", &spec_path, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let built = report(&["algebra", "info", "--algebra", &spec_path], 0);
    let t2 = report(&["algebra", "info", "--algebra", "T2"], 0);
    assert_eq!(built["fingerprint"], t2["fingerprint"]);
    assert_eq!(built["center"]["formula"], "equal");
}

#[test]
fn verify_and_classify_fixed_maps() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.json", IDENTITY_3);
    let psi = format!("Psi={id}");
    let ok = report(
        &["identity", "verify", "--algebra", "T2", "--text", "Psi(X^3) = X^2*Psi(X)", "--map", &psi],
        0,
    );
    assert_eq!(ok["polarized"]["multisets"], 10);
    let bad = report(
        &["identity", "verify", "--algebra", "T2", "--text", "Psi(X^2) = 2*X*Psi(X)", "--map", &psi],
        1,
    );
    assert_eq!(bad["polarized"]["result"], "fail");
    assert!(bad["pointwise"]["witness"].is_array());

    let class = report(&["map", "classify", "--algebra", "T2", "--map", &id], 0);
    assert_eq!(class["two_sided_centralizer"], true);
    assert_eq!(class["derivation"], false);
}

#[test]
fn replay_of_given_maps() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.json", IDENTITY_3);
    let twice = write(dir.path(), "two.json", r#"{"matrix": [["2","0","0"],["0","2","0"],["0","0","2"]]}"#);
    report(&["replay", "thm21", "--algebra", "T2", "--n", "2", "--psi", &id, "--omega", &id], 0);
    let r = report(&["replay", "thm21", "--algebra", "T2", "--n", "2", "--psi", &id, "--omega", &twice], 1);
    assert_eq!(r["traces"][0]["aborted"], true);
}

#[test]
fn lemmas_report() {
    let r = report(&["lemmas", "--algebra", "TriM2x1"], 0);
    assert_eq!(r["jordan_vs_derivation"], "equal");
    assert_eq!(r["commuting_jordan_dim"], 0);
    assert_eq!(r["flagged"], serde_json::json!([]));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let junk = write(dir.path(), "junk.json", "{not json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["algebra", "info", "--algebra", "T9"],
        vec!["algebra", "info", "--algebra", &junk],
        vec!["replay", "thm99", "--algebra", "T2", "--n", "2"],
        vec!["replay", "thm21", "--algebra", "T2", "--n", "2", "--gamma", "0"],
        vec!["replay", "thm21", "--algebra", "T2", "--n", "2", "--gamma", "1,1,0"],
        vec!["identity", "solve", "--algebra", "T2", "--shape", "power-centralizer"],
        vec!["identity", "solve", "--algebra", "T2", "--text", "Psi(X^2) = X*Omega(X)", "--n", "3"],
        vec!["identity", "solve", "--algebra", "T2", "--text", "Psi(X^2) = g*X*Omega(X)"],
        vec!["identity", "solve", "--algebra", "T2", "--text", "Psi(Omega(X)) = X"],
        vec!["identity", "solve", "--algebra", "T2", "--text", "Psi(X^2) = X*Omega(X)", "--constrain", "Omega in Z"],
    ];
    for args in cases {
        let out = fident(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error") || stderr(&out).contains("error"), "{args:?}");
    }
}

/// Commands in the README's command-line block, with continuations joined.
fn readme_commands() -> Vec<String> {
    let readme = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md")).unwrap();
    let start = readme.find("## Command line").expect("command-line section");
    let section = &readme[start..];
    let open = section.find("```sh\n").unwrap() + 6;
    let close = open + section[open..].find("```").unwrap();
    section[open..close]
        .replace("\\\n", " ")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// Splits on spaces, keeping double-quoted arguments whole.
fn shell_words(line: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ' ' if !quoted => {
                if !current.is_empty() {
                    words.push(std::mem::take(&mut current));
                }
            }
            _ => current.push(ch),
        }
    }
    if !current.is_empty() {
        words.push(current);
    }
    words
}

#[test]
fn readme_examples_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let commands = readme_commands();
    assert!(commands.len() >= 10);
    for line in commands {
        let words = shell_words(&line);
        assert_eq!(words[0], "fident");
        let out = Command::new(env!("CARGO_BIN_EXE_fident"))
            .args(&words[1..])
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{line}\n{}", stderr(&out));
    }
}
