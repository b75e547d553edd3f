use std::process::{Command, Output};

use finalg::restricted::klein;
use serde_json::Value;

fn finalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finalg")).args(args).env_remove("FINALG_MAX_CARD").output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn outcomes(out: &Output) -> Vec<(String, String)> {
    lines(out)
        .iter()
        .map(|v| (v["check"].as_str().unwrap().to_string(), v["outcome"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn m2f3_scenario_passes() {
    let out = finalg(&["run", "m2f3"]);
    assert_eq!(out.status.code(), Some(0));
    let got = outcomes(&out);
    assert!(got.contains(&("gl2f3.derived_series".into(), "pass".into())));
    assert!(got.contains(&("m2f3.lie_derived_series".into(), "pass".into())));
    assert!(got.contains(&("gl2f4.derived_series".into(), "pass".into())));
    assert!(got.contains(&("thm2.1:m2f3".into(), "outside-hypothesis".into())));
}

#[test]
fn lemma32_counterexample_reports_witness() {
    let out = finalg(&["run", "lemma32-counterexample"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    let w = recs.iter().find(|r| r["check"] == "nonzero_square_zero").unwrap();
    assert_eq!(w["outcome"], "pass");
    assert_eq!(w["detail"]["z"], "y + xy");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(finalg(&["run", "no-such-scenario"]).status.code(), Some(2));
    assert_eq!(finalg(&["run"]).status.code(), Some(2));
    assert_eq!(finalg(&["run", "--bogus"]).status.code(), Some(2));
    assert_eq!(finalg(&["describe", "m2f6"]).status.code(), Some(2));
    assert_eq!(finalg(&["sweep", "restricted-f5-d1", "lemma3.2"]).status.code(), Some(2));
    assert_eq!(finalg(&["sweep", "restricted-f3-d2", "thm9"]).status.code(), Some(2));
}

#[test]
fn reports_repeat_byte_for_byte_and_ignore_jobs() {
    let args = ["run", "klein", "jordan-chevalley", "pbw-samples", "--seed", "7"];
    let a = finalg(&args);
    let b = finalg(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "3"]);
    assert_eq!(finalg(&parallel).stdout, a.stdout);
    let names: Vec<String> = lines(&a).iter().map(|v| v["scenario"].as_str().unwrap().to_string()).collect();
    let first_jc = names.iter().position(|n| n == "jordan-chevalley").unwrap();
    assert!(names[..first_jc].iter().all(|n| n == "klein"));
}

#[test]
fn seed_changes_sampled_checks_only_in_detail() {
    let a = outcomes(&finalg(&["run", "jordan-chevalley", "--seed", "1"]));
    let b = outcomes(&finalg(&["run", "jordan-chevalley", "--seed", "2"]));
    assert_eq!(a, b);
}

#[test]
fn tsv_summary_goes_to_stderr() {
    let out = finalg(&["run", "m2f3", "klein", "--tsv"]);
    let err = String::from_utf8_lossy(&out.stderr);
    let rows: Vec<&str> = err.lines().collect();
    assert_eq!(rows[0], "scenario\tpass\tfail\toutside_hypothesis\tskipped");
    assert_eq!(rows[1], "m2f3\t4\t0\t1\t0");
    assert_eq!(rows[2], "klein\t11\t0\t2\t0");
    assert!(lines(&out).len() == 18);
}

#[test]
fn enumeration_bounds_give_skipped() {
    let out = Command::new(env!("CARGO_BIN_EXE_finalg"))
        .args(["run", "m2f3"])
        .env("FINALG_MAX_CARD", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(outcomes(&out).contains(&("gl2f3.derived_series".into(), "skipped(TooLarge)".into())));
    // the flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_finalg"))
        .args(["run", "m2f3", "--max-algebra-card", "4096"])
        .env("FINALG_MAX_CARD", "16")
        .output()
        .unwrap();
    assert!(outcomes(&out).contains(&("gl2f3.derived_series".into(), "pass".into())));

    let out = finalg(&["run", "klein", "--max-group-card", "3"]);
    assert!(outcomes(&out).contains(&("units".into(), "skipped(TooLarge)".into())));
    let out = finalg(&["run", "klein", "--engel-cap", "3"]);
    assert_eq!(outcomes(&out).iter().filter(|(c, _)| c.starts_with("engel.")).count(), 3);
}

fn describe(input: &str) -> Value {
    let out = finalg(&["describe", input]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn describe_profiles() {
    let m = describe("m2f2");
    assert_eq!(m["radical"]["dim"], 0);
    assert_eq!(m["units"]["order"], 6);
    assert_eq!(m["center_dim"], 1);
    assert_eq!(m["units"]["solvable"], true);

    let k = describe("klein");
    assert_eq!(k["enveloping"]["radical"]["dim"], 2);
    assert_eq!(k["enveloping"]["units"]["order"], 4);
    assert_eq!(k["p_set"]["basis"], serde_json::json!(["x"]));

    let f = describe("f3");
    assert_eq!(f["kind"], "field");
    assert_eq!(f["order"], 3);
    assert_eq!(f["characteristic"], 3);
    assert_eq!(f["perfect"], true);

    let c = describe("lemma32-counterexample");
    assert_eq!(c["p_set"]["dim"], 0);
    assert_eq!(c["enveloping"]["units"], "skipped(TooLarge)");
}

#[test]
fn describe_reads_json_files() {
    let dir = std::env::temp_dir().join(format!("finalg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("klein.json");
    std::fs::write(&path, serde_json::to_string(&klein().to_json()).unwrap()).unwrap();
    assert_eq!(describe(path.to_str().unwrap()), describe("klein"));

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"field\": 1}").unwrap();
    assert_eq!(finalg(&["describe", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn klein_is_among_the_cor310_anomalies() {
    let out = finalg(&["sweep", "restricted-f2-d3", "cor3.10"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    let summary = recs.last().unwrap();
    assert_eq!(summary["kind"], "summary");
    assert_eq!(summary["fail"], 0);
    assert_eq!(summary["outside_hypothesis"], summary["total"]);
    let target = serde_json::to_value(klein().to_json()).unwrap();
    let anomalies: Vec<&Value> = recs.iter().filter(|r| r["kind"] == "outside-hypothesis-anomaly").collect();
    assert_eq!(anomalies.len() as u64, summary["anomalies"].as_u64().unwrap());
    assert!(anomalies.iter().any(|r| r["presentation"] == target));
}

#[test]
fn list_names_everything() {
    let out = finalg(&["list"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for id in ["m2f3", "klein", "lemma32-counterexample", "restricted-f3-d2", "thm2.2-class", "cor3.10"] {
        assert!(text.contains(id), "{id}");
    }
}
