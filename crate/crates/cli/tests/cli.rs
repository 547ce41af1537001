use std::process::{Command, Output};

use serde_json::Value;
use specmult::repcount::RepSet;
use specmult::report::{ClassificationRecord, RepSetRecord, TorusFormRecord, WitnessRecord};
use specmult::spectra::{MultiplicitySet, SetTag, TorusFormData};
use specmult::{Form, MultiplicityWitness};

fn specmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specmult"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = specmult(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn torus_classify_hexagonal() {
    let v = json(&["torus", "classify", "--rcos", "1/2", "--rsq", "1"]);
    assert_eq!(v["set"], "6N");
    assert_eq!(v["delta"], "-3");
    let rec: ClassificationRecord = serde_json::from_value(v).unwrap();
    let set = MultiplicitySet::try_from(&rec).unwrap();
    assert_eq!(set.tag, SetTag::SixN);
}

#[test]
fn count_reps_sum_of_two_squares() {
    let v = json(&["count", "reps", "--form", "1,0,1", "--n", "5"]);
    assert_eq!(
        (v["R"].as_str(), v["r_plus"].as_str()),
        (Some("8"), Some("2"))
    );
    let rec: RepSetRecord = serde_json::from_value(v).unwrap();
    assert_eq!(RepSet::try_from(&rec).unwrap().count(), 8);
}

#[test]
fn count_reps_irrational() {
    let v = json(&[
        "count",
        "reps",
        "--b",
        "-2*sqrt(2)",
        "--c",
        "2+sqrt(2)",
        "--z",
        "9",
    ]);
    assert_eq!(v["R"], "4");
    assert_eq!(v["target_kind"], "real");
}

#[test]
fn rect_classify_irrational_text() {
    let out = specmult(&["rect", "classify", "--ratio-sq", "0+1/1*sqrt(2)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "{1}");
}

#[test]
fn rect_mult_and_witness() {
    let v = json(&["rect", "mult", "--ratio-sq", "1", "--m0", "5", "--n0", "5"]);
    assert_eq!(
        (v["level"].as_str(), v["multiplicity"].as_str()),
        (Some("50"), Some("3"))
    );
    let v = json(&["rect", "witness", "--ratio-sq", "5", "--k", "2"]);
    assert_eq!(v["level"], "24389");
    let rec: WitnessRecord = serde_json::from_value(v["witness"].clone()).unwrap();
    let w = MultiplicityWitness::try_from(&rec).unwrap();
    assert_eq!(w.solutions, vec![(153, 14), (87, 58)]);
}

#[test]
fn torus_form_round_trips() {
    let v = json(&["torus", "form", "--rcos", "1/4", "--rsq", "5/6"]);
    let rec: TorusFormRecord = serde_json::from_value(v).unwrap();
    let d = TorusFormData::try_from(&rec).unwrap();
    assert_eq!(d.form, Form::new(6, -3, 5));
    assert_eq!(d.tau, 2);
}

#[test]
fn torus_mult_and_sample() {
    let v = json(&[
        "torus",
        "mult",
        "--rcos",
        "sqrt(2)",
        "--rsq",
        "2+sqrt(2)",
        "--x0",
        "3",
        "--y0",
        "0",
    ]);
    assert_eq!(
        (v["multiplicity"].as_str(), v["value"].as_str()),
        (Some("4"), Some("9"))
    );
    let v = json(&[
        "torus", "sample", "--rcos", "0", "--rsq", "1", "--n-max", "200",
    ]);
    assert_eq!(v["observed"], serde_json::json!(["4", "8", "12", "16"]));
    let v = json(&[
        "torus", "sample", "--rcos", "sqrt(2)", "--rsq", "3", "--box", "6",
    ]);
    assert_eq!(v["observed"], serde_json::json!(["2"]));
}

#[test]
fn qform_commands() {
    let v = json(&["qform", "classgroup", "--delta", "-23"]);
    assert_eq!(v["h"], "3");
    let v = json(&["qform", "reduce", "--form", "5,13,9"]);
    assert_eq!(v["reduced"]["delta"], "-11");
    let v = json(&["qform", "compose", "--form", "2,1,3", "--with", "2,1,3"]);
    assert_eq!(
        (v["result"]["a"].as_str(), v["result"]["b"].as_str()),
        (Some("2"), Some("-1"))
    );
    let v = json(&["qform", "aut", "--form", "1,1,1"]);
    assert_eq!(v["count"], "6");
    let v = json(&["qform", "ambiguous", "--form", "2,2,3"]);
    assert_eq!(v["ambiguous"], true);
}

#[test]
fn witness_commands() {
    let v = json(&["witness", "prime", "--form", "1,0,5", "--avoid", "5"]);
    assert_eq!(v["p"], "29");
    let v = json(&["witness", "surjectivity", "--form", "1,0,1", "--k", "3"]);
    assert_eq!(v["value"], "25");
    let v = json(&["count", "histogram", "--form", "1,0,1", "--n-max", "10"]);
    assert_eq!(
        v["histogram"],
        serde_json::json!({"0": "3", "4": "5", "8": "2"})
    );
    let v = json(&["count", "quadrant", "--m", "1", "--n", "2", "--level", "33"]);
    assert_eq!(v["count"], "2");
}

#[test]
fn exit_codes() {
    let out = specmult(&[
        "witness",
        "theorem-q",
        "--m",
        "1",
        "--n",
        "5",
        "--k",
        "2",
        "--bound",
        "10",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["error"].as_str().unwrap().contains("exhausted"));

    let out = specmult(&["torus", "classify", "--rcos", "1", "--rsq", "1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(serde_json::from_str::<Value>(&stdout(&out)).unwrap()["error"].is_string());

    let out = specmult(&["count", "reps", "--form", "1,2", "--n", "5", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(serde_json::from_str::<Value>(&stdout(&out)).unwrap()["error"].is_string());

    let out = specmult(&[
        "count",
        "reps",
        "--b",
        "-2*sqrt(2)",
        "--c",
        "2+sqrt(2)",
        "--z",
        "10000",
        "--box",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = [
        "witness",
        "surjectivity",
        "--form",
        "2,1,3",
        "--k",
        "4",
        "--json",
    ];
    assert_eq!(specmult(&args).stdout, specmult(&args).stdout);
}
