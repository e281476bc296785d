use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lrpkit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrpkit"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = lrpkit(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn read(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

/// A fresh directory holding `A.json` (k(Z/2)^2) and the swap twist `B.json`.
fn setup() -> (TempDir, PathBuf) {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path().to_path_buf();
    ok(&d, &["algebra", "new", "--kind", "elementary-abelian", "-p", "2", "-n", "2", "-o", "A.json"]);
    ok(&d, &["bimod", "twisted", "A.json", "--alpha", "[[0,1],[1,0]]", "-o", "B.json"]);
    (tmp, d)
}

#[test]
fn algebra_descriptor() {
    let (_t, d) = setup();
    let a = read(&d, "A.json");
    assert_eq!(a["kind"], "truncated");
    assert_eq!(a["exponents"], serde_json::json!([2, 2]));
    let info: Value = serde_json::from_str(&ok(&d, &["algebra", "info", "A.json"])).unwrap();
    assert_eq!(info["dim"], 4);
    assert_eq!(info["enveloping_unipotent"], true);
}

#[test]
fn bimodule_round_trip_through_dual_and_tensor() {
    let (_t, d) = setup();
    // Duals of a twist are twists, hence lrp.
    ok(&d, &["bimod", "dual", "--side", "left", "B.json", "-o", "D.json"]);
    ok(&d, &["bimod", "dual", "--side", "right", "D.json", "-o", "DD.json"]);
    let lrp: Value = serde_json::from_str(&ok(&d, &["bimod", "lrp", "DD.json"])).unwrap();
    assert_eq!(lrp["lrp"], true);
    // B ⊗ B is the twist by the square of the swap, which is the identity.
    ok(&d, &["bimod", "tensor", "B.json", "B.json", "-o", "BB.json"]);
    ok(&d, &["bimod", "twisted", "A.json", "-o", "I.json"]);
    assert_eq!(read(&d, "BB.json")["dim"], read(&d, "I.json")["dim"]);
    let z: Value = serde_json::from_str(&ok(&d, &["bimod", "zigzag", "BB.json"])).unwrap();
    assert_eq!(z["passed"], true);
}

#[test]
fn printing_a_parsed_file_reproduces_it() {
    let (_t, d) = setup();
    ok(&d, &["hopf", "G", "B.json", "-o", "M.json"]);
    ok(&d, &["hopf", "F", "M.json", "-o", "F.json"]);
    ok(&d, &["variety", "compute", "M.json", "-o", "V.json"]);
    // G F is the identity on files written by G.
    ok(&d, &["hopf", "G", "F.json", "-o", "M2.json"]);
    assert_eq!(fs::read(d.join("M.json")).unwrap(), fs::read(d.join("M2.json")).unwrap());
    let v: Value = read(&d, "B.json");
    let back: lrpkit::bimodule::BimoduleJson = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&back).unwrap(), v);
    let m = read(&d, "M.json");
    let mj: lrpkit::module::ModuleJson = serde_json::from_value(m.clone()).unwrap();
    assert_eq!(serde_json::to_value(&mj).unwrap(), m);
    let var = read(&d, "V.json");
    let vj: lrpkit::varieties::RankVariety = serde_json::from_value(var.clone()).unwrap();
    assert_eq!(serde_json::to_value(&vj).unwrap(), var);
}

#[test]
fn module_commands_and_algebra_references() {
    let (_t, d) = setup();
    ok(&d, &["hopf", "G", "B.json", "-o", "M.json"]);
    let mut m = read(&d, "M.json");
    m["algebra"] = Value::String("A.json".into());
    fs::write(d.join("Mref.json"), m.to_string()).unwrap();
    let check: Value = serde_json::from_str(&ok(&d, &["module", "check", "Mref.json"])).unwrap();
    assert_eq!(check["valid"], true);
    assert_eq!(check["dim"], 1);
    ok(&d, &["module", "syzygy", "Mref.json", "-o", "O.json"]);
    assert_eq!(read(&d, "O.json")["dim"], 3);
    let gf: Value = serde_json::from_str(&ok(&d, &["hopf", "verify-gf", "M.json"])).unwrap();
    assert_eq!(gf["passed"], true);
    let tpp: Value = serde_json::from_str(&ok(&d, &["variety", "tpp", "M.json", "O.json"])).unwrap();
    assert_eq!(tpp["passed"], true);
}

#[test]
fn swap_twist_variety_is_the_graph() {
    let (_t, d) = setup();
    ok(&d, &["variety", "compute", "B.json", "-o", "V.json"]);
    let v = read(&d, "V.json");
    assert_eq!(v["ambient"], 3);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
}

#[test]
fn cohomology_outputs() {
    let (_t, d) = setup();
    ok(&d, &["hopf", "G", "B.json", "-o", "K.json"]);
    ok(&d, &["cohom", "ext", "K.json", "K.json", "-d", "4", "-o", "E.json"]);
    assert_eq!(read(&d, "E.json")["dims"], serde_json::json!([1, 2, 3, 4, 5]));
    let hh: Value = serde_json::from_str(&ok(&d, &["cohom", "hh", "A.json", "-d", "2", "--holm"])).unwrap();
    assert_eq!(hh["holm"], true);
    assert_eq!(hh["dims"], serde_json::json!([4, 8, 12]));
    let act: Value = serde_json::from_str(&ok(&d, &["cohom", "action", "A.json", "--phi", "[[0,1],[1,0]]"])).unwrap();
    assert_eq!(act["matrix"]["entries"], serde_json::json!([0, 1, 1, 0]));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let (_t, d) = setup();
    for name in ["X1.json", "X2.json"] {
        ok(&d, &["bimod", "tensor", "B.json", "B.json", "-o", name]);
    }
    assert_eq!(fs::read(d.join("X1.json")).unwrap(), fs::read(d.join("X2.json")).unwrap());
    let a = ok(&d, &["verify", "-p", "2", "-n", "1", "-d", "3", "--seed", "9"]);
    let b = ok(&d, &["verify", "-p", "2", "-n", "1", "-d", "3", "--seed", "9"]);
    assert_eq!(a, b);
    let report: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 10);
}

#[test]
fn verify_table_and_errors() {
    let (_t, d) = setup();
    let table = ok(&d, &["verify", "-p", "2", "-n", "1", "-d", "3", "--format", "table"]);
    assert!(table.contains("PASS"));
    assert!(!table.contains("FAIL "));
    let bad = lrpkit(&d, &["verify", "-p", "7", "-n", "1"]);
    assert!(!bad.status.success());
    let missing = lrpkit(&d, &["module", "check", "nope.json"]);
    assert!(!missing.status.success());
    fs::write(d.join("bad.json"), r#"{"algebra":{"kind":"truncated","p":2,"exponents":[2]},"dim":1,"actions":{"w1":{"p":2,"rows":1,"cols":1,"entries":[1]}}}"#).unwrap();
    let invalid = lrpkit(&d, &["module", "check", "bad.json"]);
    assert!(!invalid.status.success());
}
