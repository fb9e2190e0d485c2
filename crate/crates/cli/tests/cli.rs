use std::io::Write;
use std::process::{Command, Output, Stdio};

use hassett::kapranov::TowerEntryDocument;
use hassett::moduli::DescriptorDocument;
use hassett::weights::WeightDocument;
use hassett::{parse_weight_data, BoundaryDivisor, GroupDescriptor, WeightData};
use serde_json::Value;

const A126: &str = r#"{"g":0,"weights":["1/4","1/4","1/4","1/4","1/2","1"]}"#;
const GENUS_ONE: &str = r#"{"g":1,"weights":["1","1/3","1/3","1/3"]}"#;

fn hassett(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hassett")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = hassett(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn json_err(args: &[&str], code: i32) -> Value {
    let out = hassett(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty());
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn aut_of_the_genus_one_example() {
    let v = json_ok(&["aut", "--in", GENUS_ONE]);
    assert_eq!(v["finite_order"], "6");
    assert_eq!(v["symmetric_factors"], serde_json::json!([1, 3]));
    assert_eq!(v["torus_rank"], 0);
    let doc: DescriptorDocument = serde_json::from_value(v).unwrap();
    let d = GroupDescriptor::try_from(doc).unwrap();
    assert_eq!(d.components, Some(vec![vec![1], vec![2, 3, 4]]));
    assert_eq!(json_ok(&["aut-stack", "--in", GENUS_ONE])["finite_order"], "6");
}

#[test]
fn small_genus_one_descriptors() {
    let one = r#"{"g":1,"weights":["1"]}"#;
    assert_eq!(json_ok(&["aut", "--in", one])["special"], "PGL2");
    assert_eq!(json_ok(&["aut-stack", "--in", one])["torus_rank"], 1);
    let two = r#"{"g":1,"weights":["1","1/2"]}"#;
    assert_eq!(json_ok(&["aut", "--in", two])["torus_rank"], 2);
    assert_eq!(json_ok(&["aut-stack", "--in", two])["finite_order"], "1");
    assert_eq!(json_err(&["aut", "--in", A126], 1)["error"], "genus-zero");
}

#[test]
fn kapranov_six() {
    let v = json_ok(&["kapranov", "--n", "6", "--list"]);
    let entries: Vec<TowerEntryDocument> = serde_json::from_value(v).unwrap();
    let counts: Vec<usize> = entries.iter().map(|e| e.centers.len()).collect();
    assert_eq!(counts, vec![0, 4, 6, 1, 3, 1]);
    assert_eq!(entries.last().unwrap().rank, 16);
    assert_eq!(entries[1].weights, vec!["1/4", "1/4", "1/4", "1/4", "1/2", "1"]);
    assert!(entries[0].aut.outside_theorem);
    assert_eq!(entries[2].aut.finite_order.as_deref(), Some("48"));
    let single = json_ok(&["kapranov", "--n", "6", "--r", "2", "--s", "2"]);
    assert_eq!(single["centers"], serde_json::json!([[1, 5], [2, 5], [3, 5]]));
    assert_eq!(json_err(&["kapranov", "--n", "6", "--r", "3", "--s", "2"], 2)["error"], "invalid-step");
    assert_eq!(json_err(&["kapranov", "--n", "4"], 2)["error"], "n-too-small");
}

#[test]
fn forgetful_exit_codes() {
    let err = json_err(&["forgetful", "--in", A126, "--drop", "6"], 1);
    assert_eq!(err["error"], "forgetful-not-defined");
    assert!(err["detail"].as_str().unwrap().contains("-1/2"));
    assert_eq!(json_err(&["forgetful", "--in", A126, "--drop", "5"], 1)["error"], "forgetful-not-defined");
    let ok = json_ok(&["forgetful", "--in", A126, "--drop", "1"]);
    assert_eq!(ok["target"]["weights"], serde_json::json!(["1/4", "1/4", "1/4", "1/2", "1"]));
    let kept = json_ok(&["forgetful", "--in", A126, "--keep", "2,3,4,5,6"]);
    assert_eq!(kept["target"], ok["target"]);
    assert_eq!(json_err(&["forgetful", "--in", A126, "--drop", "7"], 2)["error"], "index-out-of-range");
}

#[test]
fn malformed_input_exits_two() {
    for (input, code) in [
        (r#"{"g":0,"weights":["1/3","1/3","1/3"]}"#, "total-weight"),
        (r#"{"g":1,"weights":["3/2"]}"#, "weight-out-of-range"),
        (r#"{"g":1,"weights":[0.5]}"#, "syntax"),
        ("{not json", "syntax"),
        ("/nonexistent/weights.json", "syntax"),
    ] {
        assert_eq!(json_err(&["validate", "--in", input], 2)["error"], code, "{input}");
    }
    assert_eq!(json_err(&["validate"], 2)["error"], "usage");
    assert_eq!(json_err(&["signature", "--in", GENUS_ONE, "--min-size", "9"], 2)["error"], "invalid-min-size");
}

#[test]
fn reduction_and_contraction() {
    let dm = r#"{"g":2,"weights":["1","1","1","1"]}"#;
    let b = r#"{"g":2,"weights":["1","1/3","1/3","1/3"]}"#;
    assert_eq!(json_ok(&["reduce", "--in", dm, "--to", b])["exists"], true);
    assert_eq!(json_err(&["reduce", "--in", b, "--to", dm], 1)["error"], "reduction-not-defined");
    assert_eq!(json_ok(&["contracted", "--in", dm, "--to", b]), serde_json::json!([[2, 3, 4]]));
    assert_eq!(json_err(&["contracted", "--in", b, "--to", A126], 2)["error"], "shape-mismatch");
}

#[test]
fn boundary_round_trips() {
    let v = json_ok(&["boundary", "--in", GENUS_ONE]);
    let divs: Vec<BoundaryDivisor> = serde_json::from_value(v).unwrap();
    assert_eq!(divs[0], BoundaryDivisor::Irreducible);
    assert!(divs.contains(&BoundaryDivisor::Collision { markings: vec![2, 3, 4] }));
    let dm = r#"{"g":0,"weights":["1","1","1","1","1","1"]}"#;
    let six: Vec<BoundaryDivisor> = serde_json::from_value(json_ok(&["boundary", "--in", dm])).unwrap();
    assert_eq!(six.len(), 25);
}

#[test]
fn validate_normalizes_and_reads_files_and_stdin() {
    let v = json_ok(&["validate", "--in", r#"{"g":1,"weights":["2/4",1]}"#]);
    assert_eq!(v, serde_json::json!({"g": 1, "weights": ["1/2", "1"]}));
    let doc: WeightDocument = serde_json::from_value(v.clone()).unwrap();
    assert!(WeightData::try_from(doc).is_ok());

    let path = std::env::temp_dir().join(format!("hassett-cli-{}.json", std::process::id()));
    std::fs::write(&path, A126).unwrap();
    let from_file = json_ok(&["validate", "--in", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(parse_weight_data(&from_file.to_string()).unwrap(), parse_weight_data(A126).unwrap());

    let mut child = Command::new(env!("CARGO_BIN_EXE_hassett"))
        .args(["validate", "--in", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(A126.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(serde_json::from_slice::<Value>(&out.stdout).unwrap(), from_file);
}

#[test]
fn admissibility_queries() {
    let v = json_ok(&["admissible", "--in", GENUS_ONE]);
    assert_eq!(v["transpositions"], serde_json::json!(["(2 3)", "(2 4)", "(3 4)"]));
    assert_eq!(json_ok(&["admissible", "--in", GENUS_ONE, "--i", "1", "--j", "4"])["admissible"], false);
    let b = r#"{"g":1,"weights":["1/12","2/3","1/4","1/3"]}"#;
    let group = json_ok(&["group", "--in", b]);
    assert_eq!(group["order"], "4");
    assert_eq!(group["components"], serde_json::json!([[1, 3], [2, 4]]));
    let oracle = json_ok(&["oracle", "--in", b, "--list"]);
    assert_eq!(oracle["order"], "4");
    assert_eq!(oracle["contains_admissible_group"], true);
    assert_eq!(oracle["elements"].as_array().unwrap().len(), 4);
    assert!(json_ok(&["oracle", "--in", b]).get("elements").is_none());
}

#[test]
fn signature_and_coincidence() {
    let a = r#"{"g":1,"weights":["3/5","3/5","2/5","2/5"]}"#;
    let v = json_ok(&["signature", "--in", a, "--min-size", "2"]);
    assert_eq!(v["subsets"], serde_json::json!([[1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]));
    assert_eq!(json_ok(&["signature", "--in", GENUS_ONE])["subsets"], serde_json::json!([[2, 3, 4]]));
    let c = json_ok(&["coincide", "--in", a, "--set", "1,3"]);
    assert_eq!((c["coincide"].clone(), c["sum"].clone()), (Value::Bool(true), "1".into()));
    assert_eq!(json_err(&["coincide", "--in", a, "--set", "1,1"], 2)["error"], "repeated-index");
}

#[test]
fn losev_manin_and_cremona() {
    let lm = json_ok(&["losev-manin", "--in", r#"{"g":0,"weights":["1","3/4","1/4","1/4","1/4","1/4"]}"#]);
    assert_eq!(lm["m"], 4);
    assert_eq!(lm["step"], Value::Null);
    assert_eq!(json_ok(&["losev-manin", "--in", A126])["m"], Value::Null);
    let c = json_ok(&["cremona", "--n", "6", "--r", "1"]);
    assert_eq!(c["feasible_degrees"], serde_json::json!([1, 3]));
    assert_eq!(json_ok(&["cremona", "--n", "9", "--r", "4"])["feasible_degrees"], serde_json::json!([1]));
}

#[test]
fn text_renders_the_same_data() {
    let text = stdout(&hassett(&["kapranov", "--n", "6", "--format", "text"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[2].contains("6 centers") && lines[2].contains("(C*)^3 x S_4 x S_2"));
    assert!(lines[5].ends_with("rank 16 | aut S_6"));

    let aut = stdout(&hassett(&["aut", "--in", GENUS_ONE, "--format", "text"]));
    assert!(aut.contains("finite order: 6") && aut.contains("{2,3,4}"));

    let err = hassett(&["forgetful", "--in", A126, "--drop", "6", "--format", "text"]);
    assert_eq!(err.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error (forgetful-not-defined)"));

    let json = json_ok(&["boundary", "--in", GENUS_ONE]);
    let text = stdout(&hassett(&["boundary", "--in", GENUS_ONE, "--format", "text"]));
    assert_eq!(text.lines().count(), json.as_array().unwrap().len());
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["kapranov", "--n", "7"],
        vec!["boundary", "--in", A126],
        vec!["oracle", "--in", GENUS_ONE, "--list"],
    ] {
        assert_eq!(hassett(&args).stdout, hassett(&args).stdout, "{args:?}");
    }
}
