use std::process::{Command, Output};

use serde_json::Value;

const A2: &str = r#"{"n":2,"rows":[[0,1],[-1,0]]}"#;
const A3: &str = r#"{"n":3,"rows":[[0,1,0],[-1,0,1],[0,-1,0]]}"#;
const A3_SWAP: &str = r#"{"n":3,"matrix":[[0,1,0],[-1,0,-1],[0,1,0]],"action_generators":[[3,2,1]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterlab")).args(args).output().unwrap()
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterlab")).args(args).env(key, value).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn dualities_on_a2_pass() {
    let out = run(&["verify", "dualities", "--matrix", A2, "--depth", "8", "--assumption", "--dual-mutation", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verified_depth"], 8);
    assert_eq!(r["failure"], Value::Null);
    for check in ["first_duality", "second_duality", "assumption", "dual_mutation.transpose", "dual_mutation.rows"] {
        assert_eq!(r["checks"][check]["status"], "pass", "{check}");
    }
}

#[test]
fn report_does_not_depend_on_jobs() {
    let args = ["verify", "dualities", "--matrix", A3, "--depth", "5", "--assumption", "--dual-mutation", "1"];
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    let one = strip(json(&run(&[&args[..], &["--jobs", "1"]].concat())));
    let four = strip(json(&run(&[&args[..], &["--jobs", "4"]].concat())));
    assert_eq!(one, four);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2,\n \"rows\": [[0, 1], [-1, 0]\n").unwrap();
    let out = run(&["verify", "dualities", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(&["seed", "mutate", "--matrix", r#"{"n":2,"rows":[[0,1],[1,0]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["seed", "mutate", "--matrix", A2, "--path", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["graph", "frobnicate"]).status.code(), Some(2));
}

#[test]
fn matrix_commands() {
    let out = run(&["matrix", "mutate", "--matrix", A3, "--path", "2"]);
    assert_eq!(json(&out)["rows"], serde_json::json!([[0, -1, 1], [1, 0, -1], [-1, 1, 0]]));
    let out = run(&["matrix", "check", "--matrix", r#"{"n":3,"rows":[[0,1,1],[-1,0,1],[-2,-1,0]]}"#]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["properties"]["skew_symmetrizable"], false);
    assert_eq!(r["properties"]["acyclic"], true);
    let out =
        run(&["matrix", "verify-total", "--matrix", r#"{"n":3,"rows":[[0,1,-1],[-1,0,1],[2,-1,0]]}"#, "--depth", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["failure"], serde_json::json!([1]));
}

#[test]
fn seed_commands() {
    let out = run(&["seed", "fpoly", "--matrix", A2, "--path", "1,2", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "F1 = y1 + 1\nF2 = y1*y2 + y1 + 1\n");
    let g = json(&run(&["seed", "gvec", "--matrix", A2, "--path", "1,2"]));
    assert_eq!(g["g_vectors"], serde_json::json!([[-1, 1], [-1, 0]]));
    let s = json(&run(&["seed", "mutate", "--matrix", A2, "--path", "1"]));
    assert_eq!(s["c_vectors"], serde_json::json!([[-1, 0], [1, 1]]));
    assert_eq!(s["cluster"][0]["vars"], serde_json::json!(["x1", "x2", "y1", "y2"]));
}

#[test]
fn graph_round_trip_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("graph.json");
    let out = run(&["graph", "explore", "--matrix", A3, "--out", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(stored["nodes"].as_array().unwrap().len(), 14);
    let out = run(&["graph", "verify", g.to_str().unwrap(), "--checks", "cluster,adjacency,cmatrix,oddrank"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let dot = run(&["graph", "export-dot", g.to_str().unwrap()]);
    let dot = String::from_utf8_lossy(&dot.stdout);
    assert!(dot.starts_with("graph exchange {"));
    assert_eq!(dot.matches(" -- ").count(), 21);
}

#[test]
fn truncated_graph_is_partial() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("graph.json");
    let m = r#"{"n":2,"rows":[[0,2],[-2,0]]}"#;
    let out = run(&["graph", "explore", "--matrix", m, "--max-depth", "4", "--out", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["graph", "verify", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let r = json(&out);
    assert_eq!(r["checks"]["adjacency"]["status"], "partial");
    assert_eq!(r["checks"]["cmatrix"]["status"], "pass");
    assert_eq!(r["checks"]["oddrank"]["status"], "skipped");
}

#[test]
fn tampered_graph_fails() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("graph.json");
    run(&["graph", "explore", "--matrix", A2, "--out", g.to_str().unwrap()]);
    let mut stored: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    stored["nodes"][2]["g"] = serde_json::json!([[1, 0], [0, 1]]);
    std::fs::write(&g, stored.to_string()).unwrap();
    let out = run(&["graph", "verify", g.to_str().unwrap(), "--checks", "cmatrix"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["failure"], serde_json::json!([2]));
    // Coefficients that do not belong to the stored cluster cannot be mutated.
    stored["nodes"][2]["c"] = serde_json::json!([[1, 0], [0, 1]]);
    std::fs::write(&g, stored.to_string()).unwrap();
    let out = run(&["graph", "verify", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fan_output_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fan.json");
    let out = run(&["fan", "--matrix", A2, "--out", f.to_str().unwrap(), "--check", "--samples", "500"]);
    assert_eq!(out.status.code(), Some(0));
    let fan: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(fan["cones"].as_array().unwrap().len(), 5);
    assert_eq!(fan["cones"][0]["generators"], serde_json::json!([[1, 0], [0, 1]]));
    let out = run(&["fan", "--matrix", r#"{"n":2,"rows":[[0,2],[-2,0]]}"#, "--depth", "6", "--check"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fold_commands() {
    let out = run(&["fold", "fold-matrix", "--quiver", A3_SWAP]);
    let v = json(&out);
    assert_eq!(v["matrix"]["rows"], serde_json::json!([[0, 2], [-1, 0]]));
    assert_eq!(v["orbits"], serde_json::json!([[1, 3], [2]]));
    let out = run(&["fold", "verify", "--quiver", A3_SWAP, "--depth", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let m = json(&run(&["fold", "mutate", "--quiver", A3_SWAP, "--vertex", "1"]));
    assert_eq!(m["matrix"], serde_json::json!([[0, -1, 0], [1, 0, 1], [0, -1, 0]]));
    let framed = json(&run(&["fold", "frame", "--quiver", A3_SWAP]));
    assert_eq!(framed["n"], 6);
    assert_eq!(framed["frozen"], serde_json::json!([4, 5, 6]));
    let bad = r#"{"n":2,"matrix":[[0,1],[-1,0]],"action_generators":[[2,1]]}"#;
    let out = run(&["fold", "check", "--quiver", bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["properties"]["violated"], "ii");
}

#[test]
fn group_bound_from_environment() {
    let out = run_env(&["fold", "check", "--quiver", A3_SWAP], "CLUSTERLAB_MAX_GROUP", "1");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds 1"));
    let out = run_env(&["fold", "check", "--quiver", A3_SWAP], "CLUSTERLAB_MAX_GROUP", "many");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn yhat_and_text_format() {
    let out = run(&["verify", "yhat", "--matrix", A2, "--depth", "4", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("verify yhat: pass"), "{text}");
    assert!(text.contains("yhat: pass (9 checked)"), "{text}");
}
