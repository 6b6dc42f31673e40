use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn sqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqc"))
        .args(args)
        .env_remove("SQC_MAX_N")
        .env_remove("SQC_MAX_ORDER")
        .env_remove("SQC_SEED")
        .output()
        .expect("run sqc")
}

fn write_tmp(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"]["kind"].as_str().unwrap().to_string()
}

fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).unwrap()
}

/// The printed grid with each listed erratum replaced by its correction.
fn corrected_grid() -> String {
    let mut rows: Vec<Vec<String>> = read_fixture("tensor_grid.txt")
        .lines()
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect();
    for line in read_fixture("tensor_grid_errata.tsv").lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split('\t').collect();
        let (p, q): (usize, usize) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        assert_eq!(rows[p][q], f[2]);
        rows[p][q] = f[3].to_string();
    }
    rows.iter().map(|r| r.join("\t") + "\n").collect()
}

#[test]
fn classify_small_algebras() {
    let h = write_tmp("quaternion.json", r#"{"m":2,"kappa":[-1,-1],"delta":[[1,2,1]]}"#);
    let v = stdout_json(&sqc(&["classify", h.to_str().unwrap()]));
    assert_eq!(v["label"], "^1 H(1)");
    assert_eq!(v["irrep_order"], 4);
    assert_eq!(v["case"], "QUATERNION");

    let c1 = write_tmp("c1.json", r#"{"m":1,"kappa":[1],"delta":[]}"#);
    let v = stdout_json(&sqc(&["classify", c1.to_str().unwrap()]));
    assert_eq!(v["num_irreps"], 2);
    assert_eq!(v["irrep_order"], 1);

    let out = sqc(&["classify", h.to_str().unwrap(), "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("^1 H(1)"));
}

#[test]
fn malformed_inputs_exit_one() {
    let bad = write_tmp("bad_kappa.json", r#"{"m":2,"kappa":[2,-1],"delta":[]}"#);
    let out = sqc(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_kind(&out), "parse");

    let out = sqc(&["classify", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_kind(&out), "io");

    assert_eq!(sqc(&[]).status.code(), Some(1));
    assert_eq!(sqc(&["hadamard"]).status.code(), Some(1));
    assert_eq!(sqc(&["--help"]).status.code(), Some(0));
}

#[test]
fn tables_match_golden_files() {
    let grid = sqc(&["tables", "--part", "grid", "--format", "text"]);
    assert!(grid.status.success());
    assert_eq!(String::from_utf8(grid.stdout).unwrap(), corrected_grid());

    let irreps = sqc(&["tables", "--part", "irreps", "--format", "text"]);
    assert_eq!(String::from_utf8(irreps.stdout).unwrap(), read_fixture("irrep_dims.txt"));

    let all = sqc(&["tables", "--format", "text"]);
    assert_eq!(
        String::from_utf8(all.stdout).unwrap(),
        corrected_grid() + &read_fixture("irrep_dims.txt")
    );

    let v = stdout_json(&sqc(&["tables"]));
    assert_eq!(v["grid"][0][0], "R");
    assert_eq!(v["grid"][4][4], "R(16)");
    assert_eq!(v["grid"][3][1], "²C(2)");

    let out = sqc(&["tables", "--max", "17"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_kind(&out), "resource_cap");
}

#[test]
fn rho_values() {
    let out = sqc(&["rho", "16", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "9\n");
    assert_eq!(stdout_json(&sqc(&["rho", "128"]))["rho"], 16);
    assert_eq!(sqc(&["rho", "0"]).status.code(), Some(1));
}

fn all_minus_pattern(n: usize) -> String {
    let mut entries = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            entries.push(format!("[{j},{k},-1]"));
        }
    }
    format!(r#"{{"n":{n},"entries":[{}]}}"#, entries.join(","))
}

#[test]
fn solve_patterns_and_caps() {
    let p8 = write_tmp("minus8.json", &all_minus_pattern(8));
    let v = stdout_json(&sqc(&["solve", p8.to_str().unwrap()]));
    assert_eq!(v["b"], 8);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["d"].as_array().unwrap().len(), 8);

    let par = stdout_json(&sqc(&["solve", p8.to_str().unwrap(), "--parallel"]));
    assert_eq!(par, v);

    let p17 = write_tmp("minus17.json", &all_minus_pattern(17));
    let out = sqc(&["solve", p17.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_kind(&out), "resource_cap");

    let p4 = write_tmp("minus4.json", &all_minus_pattern(4));
    let out = Command::new(env!("CARGO_BIN_EXE_sqc"))
        .args(["solve", p4.to_str().unwrap()])
        .env("SQC_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = sqc(&["solve", p4.to_str().unwrap(), "--max-n", "3", "--samples", "8", "--seed", "11"]);
    let v = stdout_json(&out);
    assert_eq!(v["exhaustive"], false);
    let again = sqc(&["solve", p4.to_str().unwrap(), "--max-n", "3", "--samples", "8", "--seed", "11"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn hadamard_build_and_verify() {
    let out = sqc(&["hadamard", "--m", "2"]);
    let v = stdout_json(&out);
    let b = v["b"].as_u64().unwrap() as usize;
    assert_eq!(v["report"]["pass"], true);
    let rows = v["h"].as_array().unwrap();
    assert_eq!(rows.len(), 4 * b);
    assert!(rows.iter().all(|r| r.as_str().unwrap().len() == 4 * b));

    let again = sqc(&["hadamard", "--m", "2"]);
    assert_eq!(out.stdout, again.stdout, "deterministic output");

    let path = write_tmp("bundle_m2.json", std::str::from_utf8(&out.stdout).unwrap());
    let ok = sqc(&["hadamard", "--verify-only", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout_json(&ok)["pass"], true);
    assert_eq!(sqc(&["verify", "bundle", path.to_str().unwrap()]).status.code(), Some(0));

    let mut tampered = v.clone();
    let row0 = tampered["h"][0].as_str().unwrap().to_string();
    let flipped = if row0.starts_with('+') { "-" } else { "+" }.to_string() + &row0[1..];
    tampered["h"][0] = Value::String(flipped);
    let path = write_tmp("bundle_m2_bad.json", &tampered.to_string());
    let bad = sqc(&["hadamard", "--verify-only", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(3));
    let report: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(report["hadamard"], false);

    let text = sqc(&["hadamard", "--m", "1", "--diag", "Z", "--offdiag", "Y", "--format", "text"]);
    let h = String::from_utf8(text.stdout).unwrap();
    assert_eq!(h.lines().count(), 4);

    assert_eq!(sqc(&["hadamard", "--m", "2", "--diag", "I"]).status.code(), Some(1));
    let capped = sqc(&["hadamard", "--m", "3", "--max-order", "16"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn represent_and_verify_representation() {
    let r30 = write_tmp(
        "r30.json",
        r#"{"m":3,"kappa":[1,1,1],"delta":[[1,2,1],[1,3,1],[2,3,1]]}"#,
    );
    let out = sqc(&["represent", r30.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["order"], 4);
    assert_eq!(v["character"].as_array().unwrap().len(), 0);
    assert_eq!(v["images"].as_array().unwrap().len(), 3);

    let rep = write_tmp("r30_rep.json", std::str::from_utf8(&out.stdout).unwrap());
    let ok = sqc(&["verify", "representation", r30.to_str().unwrap(), rep.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let other = write_tmp("r30_wrong.json", r#"{"m":3,"kappa":[1,1,1],"delta":[]}"#);
    let bad = sqc(&["verify", "representation", other.to_str().unwrap(), rep.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(3));

    let out = sqc(&["represent", r30.to_str().unwrap(), "--generators", "decomposed"]);
    assert!(out.status.success());
    let out = sqc(&["represent", r30.to_str().unwrap(), "--character", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let split = write_tmp("split.json", r#"{"m":2,"kappa":[1,1],"delta":[]}"#);
    let a = stdout_json(&sqc(&["represent", split.to_str().unwrap(), "--character", "01"]));
    let b = stdout_json(&sqc(&["represent", split.to_str().unwrap(), "--character", "10"]));
    assert_eq!(a["order"], 1);
    assert_ne!(a["images"], b["images"]);

    let d = stdout_json(&sqc(&["decompose", r30.to_str().unwrap()]));
    assert_eq!(d["centrals"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_families() {
    let good = write_tmp(
        "family_good.json",
        r#"[{"order":2,"perm":[0,1],"signs":[1,1]},{"order":2,"perm":[1,0],"signs":[-1,1]}]"#,
    );
    let out = sqc(&["verify", "family", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["rho"], 2);

    let bad = write_tmp(
        "family_bad.json",
        r#"[{"order":2,"perm":[0,1],"signs":[1,1]},{"order":2,"perm":[0,1],"signs":[1,1]}]"#,
    );
    assert_eq!(sqc(&["verify", "family", bad.to_str().unwrap()]).status.code(), Some(3));
}
