use std::process::{Command, Output};

use serde_json::Value;

const POLY5: &str = r#"{"c_r":[5,0],"c_l":[0],"d_r":[1,1],"d_l":[2]}"#;
const MATRIX: &str = r#"{"X":[[1,1,0],[0,1,1]],"spec":{"C":[[1,1]],"d":[[1],[0],[1]],"e":[0]},"c":[3,4]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floorcount")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floorcount")).args(args).env(key, val).output().expect("binary runs")
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn query(x: i64, y1: i64, y2: i64, g: usize, s: usize) -> String {
    format!(r#"{{"g":{g},"s":{s},"point":{{"x":[{x}],"y":[{y1},{y2}]}},"vary_c":false}}"#)
}

#[test]
fn invariant_agrees_with_oracle() {
    let q = query(-3, -1, -1, 1, 0);
    let o = run(&["invariant", "--polygon", POLY5, "--query", &q, "--against-oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["value"], "11");
    assert_eq!(v["oracle"], "11");
    assert_eq!(v["status"], "OK");
}

#[test]
fn invariant_off_odd_coset_is_zero() {
    let q = query(-1, -3, -1, 1, 0);
    let o = run(&["invariant", "--polygon", POLY5, "--query", &q]);
    assert_eq!(o.status.code(), Some(0));
    let q = query(-2, -2, -1, 1, 0);
    let o = run(&["invariant", "--polygon", POLY5, "--query", &q]);
    assert_eq!(json_lines(&o)[0]["value"], "0");
}

#[test]
fn table_format_prints_bare_integer() {
    let q = query(-3, -1, -1, 1, 0);
    let o = run(&["--format", "table", "invariant", "--polygon", POLY5, "--query", &q]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "11\n");
}

#[test]
fn unbalanced_polygon_is_input_error() {
    let bad = r#"{"c_r":[5,0],"c_l":[0],"d_r":[1,1],"d_l":[3]}"#;
    let o = run(&["invariant", "--polygon", bad, "--query", &query(-3, -1, -1, 1, 0)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("unbalanced sides"));
}

#[test]
fn malformed_inputs_are_input_errors() {
    let q = query(-3, -1, -1, 1, 0);
    assert_eq!(run(&["invariant", "--polygon", "{\"c_r\":", "--query", &q]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--polygon", "/no/such/file.json", "--query", &q]).status.code(), Some(2));
    // not on the lattice
    assert_eq!(run(&["invariant", "--polygon", POLY5, "--query", &query(-3, -1, -2, 1, 0)]).status.code(), Some(2));
    // zero entry in x
    assert_eq!(run(&["invariant", "--polygon", POLY5, "--query", &query(0, -4, -1, 1, 0)]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn polygon_d_t_must_match_point() {
    let p = r#"{"c_r":[5,0],"c_l":[0],"d_t":3,"d_r":[1,1],"d_l":[2]}"#;
    assert_eq!(run(&["invariant", "--polygon", p, "--query", &query(-3, -1, -1, 1, 0)]).status.code(), Some(2));
    let p = r#"{"c_r":[5,0],"c_l":[0],"d_t":0,"d_r":[1,1],"d_l":[2]}"#;
    assert_eq!(run(&["invariant", "--polygon", p, "--query", &query(-3, -1, -1, 1, 0)]).status.code(), Some(0));
}

#[test]
fn enumerate_summary_matches_invariant() {
    let poly = r#"{"c_r":[7,0],"c_l":[0],"d_r":[1,1],"d_l":[2]}"#;
    let q = query(-4, -2, -1, 1, 0);
    let o = run(&["enumerate", "--polygon", poly, "--query", &q]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["marked_diagrams"].as_u64().unwrap() as usize, lines.len() - 1);
    let fams = summary["families"].as_array().unwrap();
    assert_eq!(fams[0]["r"], serde_json::json!([7, 0]));
    assert_eq!(fams[0]["templates"], 11);
    assert_eq!(fams[1]["templates"], 0);
    let inv = run(&["invariant", "--polygon", poly, "--query", &q]);
    assert_eq!(summary["multiplicity_sum"], json_lines(&inv)[0]["value"]);
    for l in &lines[..lines.len() - 1] {
        assert!(l["diagram"]["marking"].is_array());
        assert!(l["multiplicity"].is_string());
    }
}

#[test]
fn enumerate_respects_env_cap() {
    let args = ["enumerate", "--polygon", POLY5, "--query", &query(-3, -1, -1, 1, 0)];
    let o = run_env(&args, "FLOORCOUNT_MAX_DIAGRAMS", "3");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("FLOORCOUNT_MAX_DIAGRAMS"));
    assert_eq!(run_env(&args, "FLOORCOUNT_MAX_DIAGRAMS", "0").status.code(), Some(2));
    assert_eq!(run_env(&args, "FLOORCOUNT_MAX_DIAGRAMS", "1000").status.code(), Some(0));
}

const FIT: &str = r#"{"polygon":{"c_r":["k",0],"c_l":[0],"d_r":[1,1],"d_l":[2]},"g":1,"n_x":1,"n_y":2,"radius":15,"params":{"k":[5,7]},"degree_bound":2}"#;

#[test]
fn fit_is_deterministic_and_odd_supported() {
    let a = run(&["fit", "--config", FIT]);
    let b = run(&["--threads", "1", "fit", "--config", FIT]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = &json_lines(&a)[0];
    assert_eq!(v["eliminated"], "x1");
    let fits = v["fits"].as_array().unwrap();
    assert!(!fits.is_empty());
    for f in fits {
        assert_eq!(f["coset"], "1111");
        assert_eq!(f["degree"], 1);
        assert!(f["chamber"].as_str().unwrap().chars().all(|c| c == '+' || c == '-'));
        assert!(f["poly"].as_object().unwrap().keys().all(|k| !k.contains("x1")));
    }
}

#[test]
fn fit_csv_uses_exact_ratios() {
    let o = run(&["--format", "csv", "fit", "--config", FIT]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("chamber,coset,monomial,coefficient"));
    for l in lines {
        let coeff = l.rsplit(',').next().unwrap();
        assert!(coeff.starts_with('"') && coeff.ends_with('"') && coeff.contains('/'), "{l}");
    }
}

#[test]
fn fit_reports_missing_parameter() {
    let cfg = FIT.replace(r#""params":{"k":[5,7]},"#, "");
    assert_eq!(run(&["fit", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn lift_builds_block_system() {
    let o = run(&["lift", "--matrix", MATRIX]);
    let v = &json_lines(&o)[0];
    assert_eq!(v["A"], serde_json::json!([[1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [1, 0, 1, -1, -1]]));
    assert_eq!(v["b"], serde_json::json!([3, 4, 0]));
}

#[test]
fn count_routes_agree() {
    let direct = json_lines(&run(&["count", "--matrix", MATRIX, "--against-oracle"]))[0].clone();
    let lifted = json_lines(&run(&["count", "--matrix", MATRIX, "--lifted"]))[0].clone();
    // z = (t, 3-t, 1+t), weight z1 + z3 + 1 = 2t + 2 for t = 0..3
    assert_eq!(direct["count"], "20");
    assert_eq!(direct["status"], "OK");
    assert_eq!(lifted["count"], "20");
    let plain = r#"{"X":[[1,1,0],[0,1,1]],"c":[3,4]}"#;
    assert_eq!(json_lines(&run(&["count", "--matrix", plain]))[0]["count"], "4");
    let unbounded = r#"{"X":[[1,-1]],"c":[0]}"#;
    assert_eq!(run(&["count", "--matrix", unbounded]).status.code(), Some(2));
}

#[test]
fn verify_default_suite_is_green() {
    let o = run(&["verify", "--against-oracle", "--radius", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["all_green"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "PASS"));
}
