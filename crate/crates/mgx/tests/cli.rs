use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn mgx(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_mgx")).args(args).env_remove("MGX_THREADS").output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = mgx(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    r.stdout
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

fn json_lines(args: &[&str]) -> Vec<Value> {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    ok(&full).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn write_turan(dir: &Path, n: usize) -> String {
    let path = dir.join(format!("t{n}.json"));
    let p = path.to_str().unwrap().to_string();
    ok(&["construct", "--r", "2", "--d", "1", "--a", "2", "--n", &n.to_string(), "--out", &p]);
    p
}

#[test]
fn sigma_golden() {
    assert_eq!(ok(&["sigma", "--r", "2", "--d", "1", "--a", "2", "--n", "6"]), "37\n");
}

#[test]
fn pi_golden() {
    assert_eq!(ok(&["pi", "--r", "1", "--d", "0", "--a", "5", "--n", "4"]), "15625\n");
    assert_eq!(ok(&["pi", "--r", "2", "--d", "1", "--a", "2", "--n", "6"]), "419904\n");
}

#[test]
fn pi_prints_big_values_in_full() {
    let v = json(&["pi", "--r", "1", "--d", "0", "--a", "3", "--n", "40"]);
    let expected = mgx_core::BigUint::from(3u32).pow(780).to_string();
    assert_eq!(v["value"].to_string(), expected);
    let csv = ok(&["--format", "csv", "pi", "--r", "1", "--d", "0", "--a", "3", "--n", "40"]);
    assert!(csv.contains(&expected));
}

#[test]
fn xstar_golden() {
    let out = ok(&["xstar", "--r", "2", "--a", "2", "--d", "1"]);
    let x: f64 = out.trim().parse().unwrap();
    assert!((x - 0.2695772896908149).abs() < 1e-12);
}

#[test]
fn entropy_golden() {
    assert_eq!(ok(&["entropy", "--r", "2", "--d", "1", "--a", "2"]), "0.8024513654679375\n");
    assert_eq!(ok(&["entropy", "--r", "1,1", "--a", "2,1"]), "0.8024513654679375\n");
    assert_eq!(ok(&["entropy", "--spec", r#"{"r":2,"d":1,"a":2}"#]), "0.8024513654679375\n");
}

#[test]
fn pow_golden() {
    let v = json(&["pow", "--r", "1,1", "--a", "2,1"]);
    let w: Vec<f64> = v["weights"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(w.len(), 2);
    assert!((w[0] + w[1] - 1.0).abs() < 1e-12);
    assert!((w[1] - 0.2695772896908149).abs() < 1e-12);
}

#[test]
fn construct_golden() {
    let v = json(&["construct", "--r", "2", "--d", "1", "--a", "2", "--n", "4"]);
    assert_eq!(v["sizes"], serde_json::json!([1, 3]));
    assert_eq!(v["sum"], 15);
    assert_eq!(v["product"], 216);
    assert_eq!(v["graph"], serde_json::json!({"n":4,"default":2,"edges":[[0,1,3],[0,2,3],[0,3,3]]}));
}

#[test]
fn construct_writes_a_readable_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_turan(dir.path(), 6);
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text, "{\"n\":6,\"default\":3,\"edges\":[[0,1,1],[2,3,2],[2,4,2],[2,5,2],[3,4,2],[3,5,2],[4,5,2]]}\n");
}

#[test]
fn iterated_golden() {
    assert_eq!(ok(&["iterated", "--r", "1,1", "--a", "2,1", "--n", "5"]), "5832\n");
    let v = json(&["iterated", "--r", "1,1", "--a", "2,1", "--n", "6"]);
    assert_eq!(v["value"], 419904);
    assert_eq!(v["sigma"], 37);
}

#[test]
fn exact_golden() {
    assert_eq!(ok(&["exact", "--n", "4", "--s", "4", "--q", "15"]), "216\n");
    assert_eq!(ok(&["exact", "--n", "5", "--s", "4", "--q", "15", "--threads", "2"]), "7776\n");
}

#[test]
fn exact_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.json");
    let ps = p.to_str().unwrap();
    assert_eq!(ok(&["exact", "--n", "4", "--s", "4", "--q", "15", "--emit-witness", ps]), "216\n");
    let g: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(g["n"], 4);
}

#[test]
fn exact_incomplete_exits_3() {
    let r = mgx(&["exact", "--n", "6", "--s", "4", "--q", "15", "--nodes", "10"]);
    assert_eq!(r.code, 3);
}

#[test]
fn exact_json_is_stable_across_threads() {
    let strip = |mut v: Value| {
        let m = v.as_object_mut().unwrap();
        assert!(m.remove("nodes").unwrap().is_u64());
        v
    };
    let one = strip(json(&["exact", "--n", "5", "--s", "4", "--q", "15", "--threads", "1"]));
    let four = strip(json(&["exact", "--n", "5", "--s", "4", "--q", "15", "--threads", "4"]));
    assert_eq!(one, four);
}

#[test]
fn girth_golden() {
    assert_eq!(ok(&["girth", "--n", "5", "--s", "4"]), "5\n");
}

#[test]
fn sparse_golden() {
    assert_eq!(ok(&["sparse", "--n", "6", "--s", "4", "--q", "7"]), "2\n");
    let v = json(&["sparse", "--n", "6", "--s", "4", "--q", "7"]);
    assert_eq!(v["regime"], "POWER");
    assert_eq!(v["exponent"], 1);
}

#[test]
fn dominance_golden() {
    let v = json(&["dominance", "--r", "1,1", "--a", "2,1", "--s", "3"]);
    assert_eq!(v["dominant"], false);
    assert_eq!(v["certificate"], serde_json::json!({"r":[2],"a":[2]}));
}

#[test]
fn conjecture_golden() {
    let v = json(&["conjecture", "--r", "2", "--d", "1", "--a", "2", "--s", "4", "--n", "4"]);
    assert_eq!(v["status"], "EQUAL");
    assert_eq!(v["q"], 15);
    assert_eq!(v["construction"], 216);
    let v = json(&["conjecture", "--r", "2", "--d", "1", "--a", "2", "--s", "4", "--n", "5"]);
    assert_eq!(v["status"], "CONSTRUCTION-BEATEN");
    assert_eq!(v["construction"], 5832);
    assert_eq!(v["search"], 7776);
}

#[test]
fn reduce_all_light_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p9 = write_turan(dir.path(), 9);
    for lemma in ["triangle", "edge"] {
        let v = json(&["reduce", "--lemma", lemma, "--in", &p9, "--a", "2"]);
        assert_eq!(v["status"], "all-light");
    }
    let v = json(&["reduce", "--lemma", "step-down", "--in", &p9, "--a", "2", "--r", "2", "--d", "1", "--s", "3"]);
    assert_eq!(v["status"], "in-lower-class");
    let p6 = write_turan(dir.path(), 6);
    let r = mgx(&["reduce", "--lemma", "triangle", "--in", &p6, "--a", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("N >= 7"));
}

#[test]
fn reduce_symmetrize_and_acyclic() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_turan(dir.path(), 6);
    let out = dir.path().join("s.json");
    let os = out.to_str().unwrap();
    let v = json(&["reduce", "--lemma", "symmetrize", "--in", &p, "--a", "2", "--out", os]);
    assert_eq!(v["product_before"], 419904);
    assert_eq!(v["product_after"], 419904);
    assert!(out.exists());
    let v = json(&["reduce", "--lemma", "acyclic", "--in", &p, "--a", "2", "--out", os]);
    assert_eq!(v["status"], "transformed");
    assert_eq!(v["products"], serde_json::json!([419904, 419904, 419904]));
}

#[test]
fn peel_streams_events() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_turan(dir.path(), 9);
    let lines = json_lines(&["peel", "--pipeline", "min-degree", "--in", &p, "--s", "3", "--q", "6"]);
    let (end, steps) = lines.split_last().unwrap();
    assert_eq!(steps.len(), 3);
    assert!(steps.iter().all(|e| e["event"] == "removal" && e["holds"] == true));
    assert_eq!(end["event"], "end");
    assert_eq!(end["n"], 6);
    assert_eq!(end["sound"], true);
    let lines = json_lines(&["peel", "--in", &p, "--a", "2"]);
    assert_eq!(lines.last().unwrap()["reason"], "acyclic");
}

#[test]
fn verify_base_cases_pass() {
    let v = json(&["verify", "--suite", "base-cases"]);
    let checks = v.as_array().unwrap();
    assert_eq!(checks.len(), 4);
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn csv_has_header_and_row() {
    let out = ok(&["--format", "csv", "sigma", "--r", "2", "--d", "1", "--a", "2", "--n", "6"]);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().split(',').any(|h| h == "value"));
    assert!(lines.next().unwrap().contains("37"));
}

#[test]
fn invalid_parameters_exit_2() {
    let r = mgx(&["sigma", "--r", "2", "--d", "3", "--a", "2", "--n", "3"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("d must lie in [0, a-1]"));
    assert_eq!(mgx(&["bogus"]).code, 2);
    assert_eq!(mgx(&["sigma", "--n", "3"]).code, 2);
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"n":2,"default":1,"edges":[[0,0,1]]}"#).unwrap();
    let r = mgx(&["reduce", "--lemma", "edge", "--in", p.to_str().unwrap(), "--a", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("loop"));
}

#[test]
fn env_threads_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_mgx"))
        .args(["exact", "--n", "5", "--s", "4", "--q", "15", "--threads", "8"])
        .env("MGX_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "7776\n");
}
