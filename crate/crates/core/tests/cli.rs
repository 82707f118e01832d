use std::process::{Command, Output};

use cherednik_lab::zhelobenko::IntertwinerChain;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik-lab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn thm36_example_passes() {
    let o = run(&[
        "verify", "--suite", "thm36", "--m", "2", "--N", "1", "--kappa", "5/2", "--mu", "0,1/3", "--nu", "1,0", "--box",
        "-2..2", "--degree", "0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("ALL PASS"));
}

#[test]
fn relations_pass() {
    let o = run(&["verify", "--suite", "relations", "--m", "3", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn forced_wrong_level_is_a_usage_error() {
    let o = run(&[
        "verify", "--suite", "thm36", "--kappa", "1/2", "--m", "2", "--N", "1", "--mu", "0,1/3", "--nu", "1,0", "--level", "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("level"));
}

#[test]
fn every_suite_passes_on_a_generic_configuration() {
    for suite in ["relations", "standard-iso", "cherednik", "thm36", "braid", "cor25"] {
        let o = run(&[
            "verify", "--suite", suite, "--m", "3", "--N", "2", "--kappa", "5/2", "--mu", "0,1/3,5/7", "--nu", "1,0,1", "--box",
            "-1..1",
        ]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn non_generic_intertwiner_reports_the_lattice_witness() {
    let o = run(&["intertwiner", "--m", "2", "--N", "2", "--kappa", "7/3", "--mu", "0,1/3", "--lambda", "1,4/3", "--word", "t1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("mu_1 - mu_2") && err.contains("kappa"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 6] = [
        &["verify", "--suite", "nope", "--m", "2", "--N", "1"],
        &["intertwiner", "--m", "2", "--N", "1", "--kappa", "5/2", "--mu", "0,1/3", "--nu", "1,0", "--lambda", "1,1/3"],
        &["intertwiner", "--m", "2", "--N", "1", "--kappa", "5/2", "--mu", "0,1/3", "--nu", "2,0"],
        &["intertwiner", "--m", "2", "--N", "1", "--kappa", "five", "--mu", "0,1/3", "--nu", "1,0"],
        &["intertwiner", "--m", "2", "--N", "1", "--kappa", "5/2", "--mu", "0,1/3", "--nu", "1,0", "--word", "t2"],
        &["intertwiner", "--m", "2", "--N", "1", "--kappa", "5/2", "--mu", "0,1/3", "--nu", "1,0", "--box", "2..1"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn intertwiner_json_parses_back() {
    let o = run(&["intertwiner", "--m", "3", "--N", "2", "--kappa", "5/2", "--mu", "0,1/3,5/7", "--nu", "1,1,0", "--word", "pi t0 t2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let chain: IntertwinerChain = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(chain.schema, "cherednik-lab/1");
    assert_eq!(chain.steps.len(), 3);
    assert_eq!(serde_json::to_string_pretty(&chain).unwrap() + "\n", stdout(&o));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = [
        "verify", "--suite", "braid", "--m", "3", "--N", "2", "--kappa", "5/2", "--mu", "0,1/3,5/7", "--nu", "1,1,0", "--box", "-1..1",
        "--seed", "17", "--format", "json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 17);
    assert_eq!(v["passed"], true);
}
