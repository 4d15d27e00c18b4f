use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn mvideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvideal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("mvideal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn multiview_by_elimination_gives_four_generators() {
    let o = mvideal(&["multiview", &data("three_views.json"), "--method", "elimination"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    // Same ideal as the focal sum.
    let gens = tmp("mv.txt", &stdout(&o));
    let f = mvideal(&["multiview", &data("three_views.json"), "--method", "focal_sum", "--gb"]);
    let g = mvideal(&["ideal", "gb", &gens]);
    assert_eq!(stdout(&f), stdout(&g));
}

#[test]
fn verify_thm_5_6_on_noncoplanar_foci() {
    let o = mvideal(&["verify", &data("noncoplanar_four.json"), "--thm", "thm_5_6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(a)(b)(c) hold"));
    let o = mvideal(&["verify", &data("coplanar_four.json"), "--thm", "thm_5_6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(a)(b)(c) fail"));
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn check_point_reports_consistency() {
    let o = mvideal(&["check-point", &data("two_views.json"), "--point", "((1,2,3),(2,2,4))"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not a consistent image tuple"));
    let o = mvideal(&["check-point", &data("two_views.json"), "--point", "((1,2,3),(2,2,3))", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["kernel"], serde_json::json!(["1", "2", "3", "1", "-1", "-1"]));
    let o = mvideal(&["check-point", &data("two_views.json"), "--point", "((0,0,0),(2,2,3))"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let three = data("three_views.json");
    assert_eq!(mvideal(&["verify", &three, "--thm", "cor_3_3"]).status.code(), Some(2));
    assert_eq!(mvideal(&["verify", &three, "--thm", "all"]).status.code(), Some(0));
    assert_eq!(mvideal(&["verify", &three, "--thm", "nope"]).status.code(), Some(2));
    assert_eq!(mvideal(&["verify", &data("coincident_foci.json"), "--thm", "thm_3_6"]).status.code(), Some(0));
    assert_eq!(mvideal(&["multiview", &data("coincident_foci.json"), "--method", "focal_sum"]).status.code(), Some(2));
    assert_eq!(mvideal(&["focal", &three, "--k", "4"]).status.code(), Some(2));
    assert_eq!(mvideal(&["focal", &tmp("bad.json", "{\"cameras\": 3}"), "--k", "2"]).status.code(), Some(2));
    assert_eq!(mvideal(&["matrix", &three, "--which", "ma"]).status.code(), Some(0));
}

#[test]
fn verify_json_is_versioned_and_reproducible() {
    let three = data("three_views.json");
    let a = stdout(&mvideal(&["verify", &three, "--thm", "all", "--json", "--seed", "5"]));
    let b = stdout(&mvideal(&["verify", &three, "--thm", "all", "--json", "--seed", "5"]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    let ids: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["theorem"].as_str().unwrap()).collect();
    assert_eq!(ids.len(), 11);
    assert_eq!(ids[0], "thm_3_6");
    assert!(!a.contains("timings_ms"));
    let t = stdout(&mvideal(&["verify", &three, "--thm", "thm_3_6", "--json", "--timings"]));
    assert!(t.contains("timings_ms"));
}

#[test]
fn focal_counts() {
    let o = mvideal(&["focal", &data("generic_four.json"), "--k", "4", "--counts", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["candidates"], 495);
    // Two rows from each camera: 3^4 choices, all nonzero for generic cameras.
    assert_eq!(v["by_distribution"]["(2,2,2,2)"], 81);
    assert_eq!(v["nonzero"].as_u64().unwrap() + v["zero"].as_u64().unwrap(), 495);
    let o = mvideal(&["focal", &data("three_views.json"), "--k", "3", "--sigma", "1,2,3", "--counts"]);
    assert!(stdout(&o).contains("candidates 36"));
    let o = mvideal(&["focal", &data("two_views.json"), "--k", "2"]);
    assert_eq!(stdout(&o).trim(), "y2*z1 − y1*z2");
}

#[test]
fn matrix_grid() {
    let o = mvideal(&["matrix", &data("three_views.json"), "--which", "joint", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(9), Some(7)));
    let o = mvideal(&["matrix", &data("two_views.json"), "--which", "faugeras"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    assert!(stdout(&o).lines().next().unwrap().starts_with("[0, −z1, y1, 0]"));
}

#[test]
fn ideal_verbs_round_trip() {
    let gens = data("bifocal_pair.txt");
    let o = mvideal(&["ideal", "member", &gens, "--poly", "x1*y2 - y1*x2 + z3*(y2*z3 - z2*y3)"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = mvideal(&["ideal", "member", &gens, "--poly", "x1"]);
    assert_eq!(stdout(&o).trim(), "false");

    let json = stdout(&mvideal(&["ideal", "gb", &gens, "--json"]));
    let gb_file = tmp("gb.json", &json);
    let again = stdout(&mvideal(&["ideal", "gb", &gb_file, "--json"]));
    assert_eq!(json, again);

    let lex = stdout(&mvideal(&["ideal", "gb", &gens, "--order", "lex"]));
    let lex_file = tmp("lex.txt", &lex);
    assert_eq!(stdout(&mvideal(&["ideal", "gb", &lex_file])), stdout(&mvideal(&["ideal", "gb", &gens])));

    let e = stdout(&mvideal(&["ideal", "eliminate", &gens, "--vars", "x1,y1"]));
    assert_eq!(e.trim(), "y3*z2 − y2*z3");
    let d = stdout(&mvideal(&["ideal", "dehom", &gens]));
    assert!(d.lines().any(|l| l == "y2 − y3"));

    let other = tmp("other.txt", "x1\n");
    let i = stdout(&mvideal(&["ideal", "intersect", &gens, &other, "--gb"]));
    let j = stdout(&mvideal(&["ideal", "colon", &tmp("i.txt", &i), &other, "--gb"]));
    assert_eq!(j, stdout(&mvideal(&["ideal", "gb", &gens])));
    let colon = mvideal(&["ideal", "colon", &gens, "--irrelevant"]);
    assert_eq!(colon.status.code(), Some(0));
    assert_eq!(mvideal(&["ideal", "colon", &gens]).status.code(), Some(2));
    assert_eq!(mvideal(&["ideal", "member", &tmp("junk.txt", "x1 +* y"), "--poly", "x1"]).status.code(), Some(2));
}
