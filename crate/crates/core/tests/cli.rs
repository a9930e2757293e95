mod common;

use std::process::{Command, Output};

use serde_json::Value;

fn crs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crs")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    common::fixtures_dir().join(name).to_str().unwrap().to_string()
}

fn ok_json(args: &[&str]) -> Value {
    let out = crs(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn err_json(args: &[&str], code: i32) -> Value {
    let out = crs(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    assert!(out.stdout.is_empty());
    serde_json::from_slice(&out.stderr).unwrap()
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("crs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn homology_of_round2_fixture() {
    let out = crs(&["homology", &fixture("fig4_round2.crs")]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"components\":[{\"free_rank\":1,\"torsion\":[]},{\"free_rank\":0,\"torsion\":[]}]}\n"
    );
}

#[test]
fn continued_fraction() {
    let out = crs(&["cf", "-5/2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"cf\":[-3,-2]}\n");
    err_json(&["cf", "1/2"], 1);
    err_json(&["cf", "x"], 2);
}

#[test]
fn pm1_round_trip_is_byte_identical() {
    let input = fixture("pm1_even.crs");
    let round = crs(&["to-round", &input]);
    let round_json: Value = serde_json::from_slice(&round.stdout).unwrap();
    assert_eq!(round_json["plans"][0]["gadgets"], Value::Array(vec![]));
    assert_eq!(round_json["plans"][0]["case_id"], 1);
    let path = temp_file("round.json", std::str::from_utf8(&round.stdout).unwrap());
    let back = crs(&["to-pm1", &path]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(back.stdout, crs(&["parse", &input]).stdout);
}

#[test]
fn odd_parity_adds_gadgets() {
    let v = ok_json(&["to-round", &fixture("pm1_odd.crs"), "--gadget-m", "2"]);
    let plan = &v["plans"][0];
    assert_eq!(plan["case_id"], 4);
    assert_eq!(plan["gadgets"][0]["size"], 5);
    let path = temp_file("odd.json", &v.to_string());
    let nice = ok_json(&["check-nice", &path]);
    assert_eq!(nice["all_nice"], true);
    // homology survives the gadgets
    assert_eq!(ok_json(&["homology", &path]), ok_json(&["homology", &fixture("pm1_odd.crs")]));
}

#[test]
fn exit_codes() {
    let syntax = temp_file("syntax.crs", "diagram d {\n  component A { tb = -1 }\n}\n");
    let e = err_json(&["parse", &syntax], 2);
    assert_eq!(e["error"], "syntax");
    assert_eq!(e["line"], 2);
    assert!(e["column"].is_number());

    let semantic = temp_file("self.crs", "diagram d { component A { tb = -1; rot = 0; } lk(A, A) = 1; }");
    let e = err_json(&["parse", &semantic], 1);
    assert_eq!(e["error"], "semantic");
    assert_eq!(e["line"], 1);

    err_json(&["homology", &fixture("mixed.crs")], 1);
    err_json(&["to-round", &fixture("clasp.crs")], 1);
    err_json(&["to-pm1", &fixture("mixed.crs"), "--diagram", "rotative"], 1);
    err_json(&["gadget", "--m", "0"], 1);
    err_json(&["no-such-command"], 2);
    err_json(&["parse", "/nonexistent/file.crs"], 2);
}

#[test]
fn infinity_is_accepted() {
    let f = temp_file("inf.crs", "diagram d { component L { tb = -1; rot = 0; } contact_surgery L = 1/0; }");
    let v = ok_json(&["parse", &f]);
    assert_eq!(v["diagrams"][0]["coefficients"]["L"], "inf");
    // trivial surgery leaves S³
    assert_eq!(ok_json(&["homology", &f])["components"][0]["free_rank"], 0);
}

#[test]
fn diagram_selection() {
    // contact -5/2 on a tb = -1 unknot is topological -7/2
    let v = ok_json(&["homology", &fixture("mixed.crs"), "--diagram", "lens"]);
    assert_eq!(v["components"][0]["torsion"], serde_json::json!([7]));
    let v = ok_json(&["parse", &fixture("mixed.crs"), "--diagram", "trivial"]);
    assert_eq!(v["diagrams"].as_array().unwrap().len(), 1);
    err_json(&["parse", &fixture("mixed.crs"), "--diagram", "missing"], 1);
}

#[test]
fn pretty_adds_only_whitespace() {
    let f = fixture("fig3_hopf_round1.crs");
    let plain = ok_json(&["parse", &f]);
    let pretty = crs(&["parse", &f, "--pretty"]);
    assert!(pretty.stdout.iter().filter(|&&b| b == b'\n').count() > 1);
    assert_eq!(serde_json::from_slice::<Value>(&pretty.stdout).unwrap(), plain);
}

#[test]
fn fmt_is_idempotent() {
    for f in common::fixtures() {
        let p = f.to_str().unwrap();
        let once = crs(&["fmt", p]).stdout;
        let path = temp_file("fmt.crs", std::str::from_utf8(&once).unwrap());
        assert_eq!(crs(&["fmt", &path]).stdout, once, "{p}");
        assert_eq!(crs(&["parse", &path]).stdout, crs(&["parse", p]).stdout, "{p}");
    }
}

#[test]
fn slope_commands() {
    let v = ok_json(&["count-tight", "--slope0", "-1", "--slope1", "-5/2", "--twisting", "0", "--ndiv", "2"]);
    assert_eq!(v["kind"], "finite");
    assert_eq!(v["count"], 4);
    let v = ok_json(&["count-tight", "--slope0", "-1", "--slope1", "-1"]);
    assert_eq!(v["kind"], "infinite_z_indexed");
    let v = ok_json(&["count-tight", "--slope0", "-1", "--slope1", "-3", "--twisting", "2"]);
    assert_eq!(v["kind"], "two_per_twisting");
    let v = ok_json(&["count-tight", "--slope0", "-1", "--slope1", "-3", "--ndiv", "4"]);
    assert_eq!(v["kind"], "unsupported");
    let v = ok_json(&["normalize-slopes", "--slope0", "inf", "--slope1", "0"]);
    assert_eq!(v["slope0"], "-1/1");
}

#[test]
fn annulus_commands() {
    let v = ok_json(&["enum-configs", "--n0", "1", "--n1", "1", "--max-winding", "2"]);
    assert_eq!(v["count"], 5);
    let v = ok_json(&[
        "glue-annuli",
        "--a",
        "layer:nonrotative(0)",
        "--b",
        "top 2 bottom 2: par(top, 0, 1) par(bottom, 0, 1)",
    ]);
    assert_eq!(v["overtwisted"], true);
    let v = ok_json(&["glue-annuli", "--a", "layer:nonrotative(0)", "--b", "layer:invariant"]);
    assert_eq!(v["overtwisted"], false);
    err_json(&["glue-annuli", "--a", "top 2 bottom 2:", "--b", "layer:invariant"], 1);
}

#[test]
fn gadget_and_invariants() {
    let v = ok_json(&["gadget", "--m", "4"]);
    assert_eq!(v["self_test"]["passed"], true);
    assert_eq!(v["diagrams"][0]["components"].as_array().unwrap().len(), 5);
    let v = ok_json(&["invariants", "--front", "U1 U1 X2 X2 C1 C1"]);
    assert_eq!(v["fronts"][0]["linking"][0]["lk"], 1);
    let v = ok_json(&["invariants", "--front", "U1 U1 X2 X2 C1 C1", "--orient", "forward,reverse"]);
    assert_eq!(v["fronts"][0]["linking"][0]["lk"], -1);
    let v = ok_json(&["fillable", &fixture("nice_pairs.crs")]);
    assert_eq!(v["fillable"], true);
}
