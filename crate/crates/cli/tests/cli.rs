use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wicks(args: &[&str]) -> Output {
    wicks_with_cache(args, None)
}

fn wicks_with_cache(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wicks"));
    cmd.args(args).env_remove("WICKS_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("WICKS_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn validate_reports_genus_and_maximality() {
    let v = json(&wicks(&["validate", "a b c a' b' c'"]));
    assert_eq!(v["genus"], 1);
    assert_eq!(v["maximal"], true);
    let v = json(&wicks(&["validate", "abAB"]));
    assert_eq!((v["genus"].as_u64(), v["maximal"].as_bool()), (Some(1), Some(false)));
}

#[test]
fn exit_codes() {
    assert_eq!(wicks(&["validate", "a a'"]).status.code(), Some(1));
    assert_eq!(wicks(&["validate", "a b a b"]).status.code(), Some(1));
    assert_eq!(wicks(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wicks(&["enumerate"]).status.code(), Some(2));
    assert_eq!(wicks(&["enumerate", "--genus", "4"]).status.code(), Some(1));
    assert_eq!(wicks(&["enumerate", "--genus", "6", "--allow-large"]).status.code(), Some(1));
    assert_eq!(wicks(&["enumerate", "--genus", "3", "--method", "backtrack"]).status.code(), Some(1));
    assert_eq!(wicks(&["geometry", "--genus", "1"]).status.code(), Some(1));
    assert_eq!(wicks(&["--help"]).status.code(), Some(0));
}

#[test]
fn info_of_genus_one() {
    let v = json(&wicks(&["info", "x y z x' y' z'"]));
    assert_eq!(v["aut_order"], 6);
    assert_eq!((v["pos"].as_u64(), v["neg"].as_u64()), (Some(0), Some(2)));
    assert_eq!(v["order6_stratum"], "(3;0,2)");
    assert_eq!(v["canonical"], "a b c a' b' c'");
}

#[test]
fn enumerate_both_engines_is_stable_across_jobs() {
    let one = wicks(&["enumerate", "--genus", "2", "--method", "both", "--jobs", "1"]);
    let four = wicks(&["enumerate", "--genus", "2", "--method", "both", "--jobs", "4"]);
    assert!(one.status.success());
    assert_eq!(stdout(&one), stdout(&four));
    let lines: Vec<Value> = stdout(&one).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 9);
    let mut words: Vec<&str> = lines.iter().map(|v| v["word"].as_str().unwrap()).collect();
    let original = words.clone();
    words.sort();
    assert_eq!(words, original);
    assert!(lines.iter().all(|v| v["genus"] == 2 && v["pos"] == 2 && v["neg"] == 4));
}

#[test]
fn enumerate_csv_and_text() {
    let csv = stdout(&wicks(&["enumerate", "--genus", "1", "--format", "csv"]));
    assert_eq!(csv, "genus,word,aut_order,pos,neg,r,s,t\n1,a b c a' b' c',6,0,2,3,0,2\n");
    let text = stdout(&wicks(&["enumerate", "--genus", "1", "--format", "text"]));
    assert_eq!(text, "a b c a' b' c'  |Aut|=6\n");
}

#[test]
fn enumerate_to_file_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.jsonl");
    let out = wicks(&["enumerate", "--genus", "2", "--out", path.to_str().unwrap()]);
    let meta = json(&out);
    assert_eq!(meta["classes"], 9);
    assert_eq!(meta["mass"], "35/6");
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 9);
    let sidecar: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("g2.jsonl.meta.json")).unwrap()).unwrap();
    assert_eq!(sidecar, meta);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 2);
}

#[test]
fn census_cache_is_filled_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let first = wicks_with_cache(&["enumerate", "--genus", "3"], Some(dir.path()));
    assert!(first.status.success());
    for g in 1..=3 {
        assert!(dir.path().join(format!("census-g{g}.jsonl")).exists());
    }
    let second = wicks_with_cache(&["enumerate", "--genus", "3"], Some(dir.path()));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(stdout(&first).lines().count(), 1726);

    let fresh = tempfile::tempdir().unwrap();
    let bypass = wicks_with_cache(&["enumerate", "--genus", "2", "--no-cache"], Some(fresh.path()));
    assert!(bypass.status.success());
    assert_eq!(std::fs::read_dir(fresh.path()).unwrap().count(), 0);
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("census-g2.jsonl"), "{\"genus\":2}\n").unwrap();
    let out = wicks_with_cache(&["enumerate", "--genus", "2"], Some(dir.path()));
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 9);
}

#[test]
fn count_json() {
    let v = json(&wicks(&["count", "--genus", "2"]));
    assert_eq!(v["m1"], "35/6");
    assert_eq!(v["m2"], "5/2");
    assert_eq!(v["m3"], "1/3");
    assert_eq!(v["m6"], "0/1");
    assert_eq!(v["M"]["1"], "9");
    assert_eq!(v["exact"]["1"], "3");
}

#[test]
fn table_with_genus_three() {
    let text = stdout(&wicks(&["table", "--max-genus", "4", "--include-genus-3"]));
    assert_eq!(text, "1  1\n2  9\n3  1726  (bijection open)\n4  1349005\n");
    let v: Value = serde_json::from_str(&stdout(&wicks(&["table", "--max-genus", "2", "--format", "json"]))).unwrap();
    assert_eq!(v[1]["count"], "9");
}

#[test]
fn transform_reduce_and_dual() {
    let v = json(&wicks(&["transform", "a b c a' b' c'", "--edge", "a"]));
    assert_eq!(v["type"], "type2a");
    assert_eq!(v["result"], "b y' c b' y c'");
    assert_eq!(v["isomorphic_to_input"], true);
    assert_eq!(wicks(&["transform", "a b c a' b' c'", "--edge", "q"]).status.code(), Some(1));

    let child = "x p q r s q' t r' s' t' p' y b c y' x' b' c'";
    let v = json(&wicks(&["reduce", child]));
    assert_eq!(v["parent_genus"], 1);
    assert_eq!(v["canonical"], "a b c a' b' c'");
    assert_eq!(wicks(&["reduce", "a b c a' b' c'"]).status.code(), Some(1));

    let v = json(&wicks(&["dual", "a b c a' b' c'"]));
    assert_eq!(v["vertices"], 1);
    assert_eq!(v["triangles"].as_array().unwrap().len(), 2);
    assert_eq!(v["euler_characteristic"], 0);
}

#[test]
fn geometry_output() {
    let v = json(&wicks(&["geometry", "--genus", "2", "--digits", "30"]));
    assert_eq!(v["embedded_radius"], "1.719107120615051545948519779873");
    assert_eq!(v["covering_radius"], "1.855077135319087331223368964084");
    assert_eq!(v["n_sides"], 18);
    assert_eq!(v["error_bound"], "1e-30");
    let text = stdout(&wicks(&["geometry", "--genus", "2", "--digits", "5", "--format", "text"]));
    assert!(text.contains("beta: 0.17453\n"));
}
