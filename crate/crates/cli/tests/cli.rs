use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psa-sigma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with('\n'));
    serde_json::from_str(&text).unwrap()
}

#[test]
fn pcs_of_the_example() {
    let v = json(&["pcs", "--graph", &data("example.json")]);
    assert_eq!(
        v,
        serde_json::json!(["a:{c,d,e}", "b:{d}", "b:{e}", "c:{a}", "d:{a,b}", "d:{e}", "e:{a,b}", "e:{d}"])
    );
}

#[test]
fn psets_of_the_example() {
    let v = json(&["psets", "--graph", &data("example.json")]);
    let families = v.as_array().unwrap();
    assert_eq!(families.len(), 4);
    assert!(families.iter().all(|f| f["kind"] == "pset"));
    assert_eq!(families[3]["side1"], serde_json::json!(["d:{e}"]));
    assert_eq!(families[3]["side2"], serde_json::json!(["e:{d}"]));
    let keys: Vec<&String> = families[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["kind", "side1", "side2"]);
}

#[test]
fn delta_psets_of_the_example() {
    let v = json(&["delta-psets", "--graph", &data("example.json")]);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["side1"], serde_json::json!(["b:{d}", "b:{e}"]));
}

#[test]
fn classify_type_two() {
    let v = json(&[
        "classify",
        "--graph",
        &data("example.json"),
        "--character",
        &data("chi_item2.json"),
    ]);
    assert_eq!(v["type"], "II");
    assert_eq!(v["membership"], "complement");
    assert_eq!(v["witness"]["family"]["kind"], "delta");
    assert_eq!(v["reason"], Value::Null);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["type", "membership", "witness", "reason"]);
}

#[test]
fn classify_neither() {
    let v = json(&[
        "classify",
        "--graph",
        &data("example.json"),
        "--character",
        &data("chi_ones.json"),
    ]);
    assert_eq!(v["type"], "neither");
    assert_eq!(v["membership"], "sigma");
    assert_eq!(v["reason"], "neither-type");
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn theorem_b_reports() {
    let v = json(&["theorem-b", "--graph", &data("p3.json")]);
    assert_eq!(v["is_raag"], true);
    assert_eq!(v["sil"], Value::Null);
    let v = json(&["theorem-b", "--graph", &data("example.json")]);
    assert_eq!(v["is_raag"], false);
    assert_eq!(v["sil"]["component"], serde_json::json!(["e"]));
    assert_eq!(v["counting"]["psa"]["lhs"], 8);
    assert_eq!(v["counting"]["psa"]["rhs"], 8);
    let v = json(&["theorem-b", "--graph", &data("k3.txt")]);
    assert_eq!(v["is_raag"], true);
    assert_eq!(v["counting"]["raag"]["vacuous"], true);
}

#[test]
fn other_commands_run() {
    let g = data("example.json");
    let pres = json(&["presentation", "--graph", &g]);
    assert_eq!(pres["generators"].as_array().unwrap().len(), 8);
    assert!(pres["relations"].as_array().unwrap().iter().any(|r| r["type"] == "delta"));
    let pairs = json(&["pairs", "--graph", &g]);
    assert!(pairs.as_array().unwrap().iter().all(|p| (1..=6).contains(&p["case"].as_u64().unwrap())));
    assert_eq!(json(&["sils", "--graph", &g])[0]["a"], "b");
    let subs = json(&["subspheres", "--graph", &g]);
    assert_eq!(subs["psa"].as_array().unwrap().len(), 5);
    let counting = json(&["counting", "--graph", &data("p3.json")]);
    assert_eq!(counting["raag"]["rhs"], 2);
    let raag = json(&[
        "sigma-raag",
        "--graph",
        &data("p3.json"),
        "--character",
        &data("psi_b.json"),
    ]);
    assert_eq!(raag["membership"], "sigma");
}

#[test]
fn text_format() {
    let out = run(&["psets", "--graph", &data("example.json"), "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Q4  d:{e} | e:{d}"), "{text}");
}

#[test]
fn output_is_stable() {
    let a = run(&["subspheres", "--graph", &data("example.json")]).stdout;
    let b = run(&["subspheres", "--graph", &data("example.json")]).stdout;
    assert_eq!(a, b);
}

#[test]
fn json_round_trips() {
    let graphs = json(&["gen-corpus", "--seed", "3", "--count", "4", "--vertices", "5"]);
    for g in graphs.as_array().unwrap() {
        let parsed = psa_sigma::SimplicialGraph::from_json(&g.to_string()).unwrap();
        assert_eq!(&parsed.to_json_value(), g);
    }
    let psa = psa_sigma::PsaGroup::new(
        psa_sigma::SimplicialGraph::from_json(&std::fs::read_to_string(data("example.json")).unwrap()).unwrap(),
    );
    let v = json(&["classify", "--graph", &data("example.json"), "--character", &data("chi_item2.json")]);
    let family = psa_sigma::AdmissibleFamily::from_json(&psa, &v["witness"]["family"]).unwrap();
    assert_eq!(family.to_json(&psa), v["witness"]["family"]);
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        vec!["pcs", "--graph", &data("bad_graph.json")],
        vec!["classify", "--graph", &data("example.json"), "--character", &data("chi_zero.json")],
        vec!["classify", "--graph", &data("example.json"), "--character", &data("chi_unknown.json")],
        vec!["pcs", "--graph", "/nonexistent/graph.json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["pcs"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["pcs", "--graph", "x", "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn version_prints_schema() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("schema 1"));
}

#[test]
fn selftest_small_run() {
    let junit = std::env::temp_dir().join(format!("psa-sigma-junit-{}.xml", std::process::id()));
    let v = json(&[
        "selftest",
        "--count",
        "5",
        "--characters",
        "5",
        "--junit",
        junit.to_str().unwrap(),
    ]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["graphs_checked"], 5);
    let xml = std::fs::read_to_string(&junit).unwrap();
    assert!(xml.contains("<testsuite"));
    let _ = std::fs::remove_file(junit);
}
