use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn giglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_giglab"))
        .args(args)
        .env_remove("GIGLAB_MAX_N")
        .output()
        .expect("binary runs")
}

/// Runs with `--json` and returns (exit code, report).
fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = giglab(&full);
    let json = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), json)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn parallel_positive_three_has_two_fixed_points_and_two_three_cycles() {
    let (code, r) = report(&["attractors", "pos:3", "--schedule", "*"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["result"]["fixed_points"], 2);
    assert_eq!(r["result"]["limit_cycles"], 2);
    let periods: Vec<u64> = r["result"]["attractors"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["kind"] == "limit-cycle")
        .map(|a| a["period"].as_u64().unwrap())
        .collect();
    assert_eq!(periods, [3, 3]);
}

#[test]
fn aligned_sequential_leaves_only_fixed_points() {
    let (_, r) = report(&["attractors", "pos:3", "--schedule", "seq"]);
    assert_eq!(r["result"]["fixed_points"], 2);
    assert_eq!(r["result"]["limit_cycles"], 0);
}

#[test]
fn negative_circuit_has_no_fixed_points() {
    let (_, r) = report(&["attractors", "neg:3", "--schedule", "*"]);
    assert_eq!(r["result"]["fixed_points"], 0);
    assert!(r["result"]["attractors"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a["kind"] == "limit-cycle"));
}

#[test]
fn dot_export_has_out_multiplicity_seven() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pos3.dot");
    let out = giglab(&[
        "gig",
        "pos:3",
        "--format",
        "dot",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dot = fs::read_to_string(&path).unwrap();
    let nodes = dot
        .lines()
        .filter(|l| l.trim_end().ends_with("\";") && !l.contains("->"))
        .count();
    assert_eq!(nodes, 8);
    let mut out_degree = std::collections::BTreeMap::<String, u64>::new();
    for line in dot.lines().filter(|l| l.contains("->")) {
        let src = line.split('"').nth(1).unwrap().to_string();
        let mult = line
            .split("label = \"")
            .nth(1)
            .map_or(1, |rest| rest.split('"').next().unwrap().parse().unwrap());
        *out_degree.entry(src).or_default() += mult;
    }
    assert_eq!(out_degree.len(), 8);
    assert!(out_degree.values().all(|&d| d == 7), "{out_degree:?}");
}

#[test]
fn jsonl_export_carries_fifty_six_labeled_arcs() {
    let out = giglab(&["gig", "neg:3", "--format", "jsonl"]);
    assert!(out.status.success());
    let total: u64 = stdout(&out)
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).unwrap()["mult"]
                .as_u64()
                .unwrap()
        })
        .sum();
    assert_eq!(total, 56);
}

#[test]
fn layered_dot_groups_by_potential() {
    let dot = stdout(&giglab(&["gig", "pos:3", "--layers"]));
    assert!(dot.contains("subgraph cluster_u0"));
    assert!(dot.contains("subgraph cluster_u2"));
    assert_eq!(dot.matches("subgraph").count(), 2);
}

#[test]
fn graphml_export_is_written() {
    let doc = stdout(&giglab(&["gig", "++-", "--format", "graphml"]));
    assert!(doc.starts_with("<?xml"));
    assert_eq!(doc.matches("<node id=").count(), 8);
}

#[test]
fn fixed_point_is_maximally_robust() {
    let (_, r) = report(&["metrics", "pos:3", "--set", "000"]);
    let m = &r["result"];
    assert_eq!(m["robustness"]["infinite"], true);
    assert_eq!(m["likeliness"]["defined"], true);
    assert!(m["likeliness"]["approx"].as_f64().unwrap() > 0.0);
}

#[test]
fn limit_cycle_set_has_finite_robustness() {
    let (_, r) = report(&["metrics", "pos:3", "--set", "011,101,110"]);
    assert_eq!(r["result"]["robustness"]["infinite"], false);
    assert_eq!(r["result"]["deg_out"], 12);
}

#[test]
fn whole_space_has_undefined_likeliness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.txt");
    let lines: Vec<String> = (0..8).map(|w| format!("{:03b}", w)).collect();
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    let set = format!("@{}", path.display());
    let (code, r) = report(&["metrics", "pos:3", "--set", &set]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["robustness"]["infinite"], true);
    assert_eq!(r["result"]["likeliness"]["defined"], false);

    let text = stdout(&giglab(&["metrics", "pos:3", "--set", &set]));
    assert!(text.contains("robustness: inf"));
    assert!(text.contains("likeliness: undefined"));
}

#[test]
fn count_cross_checks_enumeration() {
    let (code, r) = report(&["count", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["block_sequential"], "75");
    let formula: u64 = r["result"]["rotation_classes"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(r["result"]["enumeration"]["rotation_classes"], formula);
    assert_eq!(r["result"]["enumeration"]["schedules"], 75);
}

#[test]
fn large_counts_skip_enumeration() {
    let (code, r) = report(&["count", "20"]);
    assert_eq!(code, 0);
    assert!(r["result"]["enumeration"].is_null());
}

#[test]
fn verify_six_positive_passes() {
    let (code, r) = report(&["verify", "6", "pos"]);
    assert_eq!(code, 0);
    assert_eq!(r["ok"], true);
    assert!(r["result"]["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v["passed"] == true));
}

#[test]
fn verify_accepts_literal_with_leading_minus() {
    let out = giglab(&["verify", "-+-"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("all checks passed"));
}

#[test]
fn census_four_finds_four_aligned_cycle_free_schedules() {
    let (code, r) = report(&["census", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["aligned"], 4);
    assert_eq!(r["result"]["schedules"], 75);
    assert_eq!(r["result"]["claim_holds"], true);
    for e in r["result"]["entries"].as_array().unwrap() {
        let free = e["macro_limit_cycles"] == 0;
        assert_eq!(free, e["aligned_sequential"] == true, "{e}");
    }
}

#[test]
fn schedules_enumerate_and_canonicalize() {
    let listed = stdout(&giglab(&["schedules", "enumerate", "3"]));
    assert_eq!(listed.lines().count(), 13);
    let classes = stdout(&giglab(&["schedules", "enumerate", "4", "--canonical"]));
    assert_eq!(classes.lines().count(), 26);
    let canon = stdout(&giglab(&["schedules", "canonicalize", "2;0,1"]));
    assert_eq!(canon.trim(), "0,1;2");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "attractors", "pos:4", "--schedule", "0;2,3;1"][..],
        &["census", "4"],
        &["gig", "+-+-", "--format", "graphml", "--layers"],
    ] {
        assert_eq!(giglab(args).stdout, giglab(args).stdout, "{args:?}");
    }
}

#[test]
fn guard_errors_are_machine_readable() {
    let (code, r) = report(&["verify", "11", "pos"]);
    assert_eq!(code, 2);
    assert_eq!(r["ok"], false);
    assert_eq!(r["error"]["kind"], "guard");

    let out = giglab(&["--force", "verify", "11", "pos"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("estimate:"));
}

#[test]
fn env_variable_lowers_guards() {
    let out = Command::new(env!("CARGO_BIN_EXE_giglab"))
        .args(["--json", "gig", "pos:5"])
        .env("GIGLAB_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["kind"], "guard");
}

#[test]
fn bad_inputs_exit_with_two() {
    let (code, r) = report(&["attractors", "pos:3", "--schedule", "0;0,1"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "schedule");
    let (code, r) = report(&["metrics", "pos:3", "--set", "01"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "configuration");
    assert_eq!(giglab(&["attractors", "pos:x"]).status.code(), Some(2));
    assert_eq!(giglab(&["attractors"]).status.code(), Some(2));
}

#[test]
fn network_files_load_and_warn_about_constants() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("net.json");
    fs::write(
        &json,
        r#"{"n": 3, "nodes": [
            {"id": 0, "name": "a", "inputs": [1, 2], "function": "and"},
            {"id": 1, "inputs": [0], "function": "neg"},
            {"id": 2, "inputs": [], "table": [1]}
        ]}"#,
    )
    .unwrap();
    let out = giglab(&[
        "--json",
        "attractors",
        "--file",
        json.to_str().unwrap(),
        "-s",
        "seq",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("node 2 has a constant local function"));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["network"]["constant_nodes"], serde_json::json!([2]));

    let toml = dir.path().join("circuit.toml");
    fs::write(
        &toml,
        r#"n = 2
[[nodes]]
id = 0
inputs = [1]
function = "id"
[[nodes]]
id = 1
inputs = [0]
function = "neg"
"#,
    )
    .unwrap();
    let (code, r) = report(&["attractors", "--file", toml.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["network"]["circuit"], "+-");
    assert_eq!(r["result"]["fixed_points"], 0);

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"n": 1, "nodes": [{"id": 0, "inputs": [0], "table": [1, 0, 1]}]}"#,
    )
    .unwrap();
    let (code, r) = report(&["attractors", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "network-file");
}

#[test]
fn block_observation_and_timing_flags() {
    let text = stdout(&giglab(&[
        "attractors",
        "pos:3",
        "-s",
        "0;1,2",
        "--observation",
        "block",
        "--timing",
    ]));
    assert!(text.contains("observation: block"));
    assert!(text.lines().last().unwrap().starts_with("time: "));
    let plain = stdout(&giglab(&["attractors", "pos:3"]));
    assert!(!plain.contains("time:"));
}

#[test]
fn threads_flag_is_accepted() {
    let (code, r) = report(&["--threads", "2", "census", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["aligned"], 3);
}
