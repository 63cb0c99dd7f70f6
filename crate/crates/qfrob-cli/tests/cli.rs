//! End-to-end tests of the `qfrob` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn qfrob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfrob")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let out = qfrob(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    (out.status.code().unwrap(), v, text)
}

#[test]
fn classify_b3_at_four() {
    let (code, v, _) = json(&["classify", "--family", "B", "--rank", "3", "--ell", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "classify");
    let p = &v["payload"];
    assert_eq!(p["case"], "duality");
    assert_eq!(p["g0"], "A1^3");
    assert_eq!(p["g_ell"], "C3");
    assert_eq!(p["braided"], true);
}

#[test]
fn classify_trivial_case() {
    let (code, v, _) = json(&["classify", "--family", "A", "--rank", "1", "--ell", "1"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!((p["case"].as_str(), p["g0"].as_str(), p["g_ell"].as_str(), p["braided"].as_bool()), (Some("trivial"), Some("0"), Some("A1"), Some(false)));
}

#[test]
fn classify_b4_at_eight_markdown() {
    let out = qfrob(&["--format", "md", "classify", "--family", "B", "--rank", "4", "--ell", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("| g | l | case | g0 | g_ell | braided |"), "{text}");
    assert!(text.contains("| B4 | 8 | duality | B4 | C4 | no |"), "{text}");
}

#[test]
fn json_round_trips() {
    for args in [
        &["classify", "--family", "G", "--rank", "2", "--ell", "4"][..],
        &["orbits", "--family", "F", "--rank", "4"][..],
        &["nichols", "--family", "A", "--rank", "2", "--ell", "3"][..],
        &["table", "--which", "smalluq"][..],
    ] {
        let (_, v, text) = json(args);
        assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--which", "main", "--max-rank", "4", "--max-ell", "12"];
    assert_eq!(qfrob(&args).stdout, qfrob(&args).stdout);
    let args = ["verify", "--suite", "orbits", "--seed", "7"];
    assert_eq!(qfrob(&args).stdout, qfrob(&["verify", "--suite", "orbits", "--seed", "8"]).stdout);
}

#[test]
fn main_table_passes() {
    let (code, v, _) = json(&["table", "--which", "main", "--max-rank", "5", "--max-ell", "24"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["payload"]["rows"].as_array().unwrap().len(), 408);
}

#[test]
fn smalluq_and_parity_tables_pass() {
    for which in ["smalluq", "parity"] {
        let (code, v, _) = json(&["table", "--which", which]);
        assert_eq!(code, 0, "{which}");
        assert_eq!(v["pass"], true, "{which}");
    }
}

#[test]
fn orbits_of_f4() {
    let (code, v, _) = json(&["orbits", "--family", "F", "--rank", "4", "--tuples", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["brute_force_agrees"], true);
    assert!(v["payload"]["count"].as_u64().unwrap() > 0);
}

#[test]
fn nichols_g2_at_four() {
    let (code, v, _) = json(&["nichols", "--family", "G", "--rank", "2", "--ell", "4", "--max-degree", "6"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["g0"], "A3");
    assert_eq!(p["g0_conjugate"], true);
    assert_eq!(p["dimension"], "64");
    let computed: Vec<&str> = p["degrees"].as_array().unwrap().iter().map(|d| d["computed"].as_str().unwrap()).collect();
    assert_eq!(computed, ["1", "3", "5", "8", "10", "10", "10"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qfrob(&["bogus"]).status.code(), Some(2));
    assert_eq!(qfrob(&["classify", "--family", "B", "--rank", "3", "--ell", "4", "--unknown"]).status.code(), Some(2));
    assert_eq!(qfrob(&["classify", "--family", "E", "--rank", "5", "--ell", "4"]).status.code(), Some(2));
    assert_eq!(qfrob(&["orbits", "--family", "A", "--rank", "2", "--tuples", "3"]).status.code(), Some(2));
    let out = qfrob(&["--format", "xml", "classify", "--family", "A", "--rank", "1", "--ell", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bound_rejection_exits_three() {
    let out = qfrob(&["nichols", "--family", "G", "--rank", "2", "--ell", "4", "--max-degree", "12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("bound"));
}

#[test]
fn parity_and_orbit_suites_pass() {
    for suite in ["parity", "orbits", "tables"] {
        let (code, v, _) = json(&["verify", "--suite", suite]);
        assert_eq!(code, 0, "{suite}");
        assert!(v["payload"]["verdicts"].as_array().unwrap().iter().all(|x| x["pass"] == true), "{suite}");
    }
}

/// Every rank two identity holds except the G2 bracket at l = 4, whose
/// coefficient is -3 in the quotient; the command reports it and exits 1.
#[test]
fn rank2_suite_reports_single_discrepancy() {
    let (code, v, _) = json(&["verify", "--suite", "rank2-commutators", "--ell", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    let verdicts = v["payload"]["verdicts"].as_array().unwrap();
    let failed: Vec<&Value> = verdicts.iter().filter(|x| x["pass"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["name"].as_str().unwrap().starts_with("G2 l=4: [E1^(2),E112^(2)]"));
    assert!(failed[0]["detail"].as_str().unwrap().contains("computed (-3)*E1112^(2)"));
    assert!(verdicts.len() >= 12);
}

#[test]
fn rank2_suite_passes_away_from_four() {
    for ell in ["3", "6", "8", "12"] {
        let (code, v, _) = json(&["verify", "--suite", "rank2-commutators", "--ell", ell]);
        assert_eq!(code, 0, "l={ell}");
        assert_eq!(v["pass"], true, "l={ell}");
    }
}
