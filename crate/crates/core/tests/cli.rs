//! The command-line frontend, driven in-process.

mod common;

use common::fixture;
use polygraph::cli::{run, EXIT_DIAGNOSTIC, EXIT_EXHAUSTED, EXIT_OK};
use polygraph::suite::{increment_tm, tm_simulate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value as Json;

fn polygraph(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polygraph").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Json {
    serde_json::from_str(s.trim()).unwrap_or_else(|e| panic!("{e}: {s}"))
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("polygraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn eval_mult() {
    let (code, out, _) = polygraph(&["eval", &fixture("arith.poly"), "mult", "3", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "12");
}

#[test]
fn eval_sort() {
    let (code, out, _) = polygraph(&["eval", &fixture("sort.poly"), "sort", "[2,1]"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "[1, 2]");
}

#[test]
fn eval_coin_exhaustive() {
    let (code, out, _) = polygraph(&["eval", &fixture("coin.poly"), "c", "--mode", "exhaustive"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "1");
    let (_, out, _) = polygraph(&["eval", &fixture("coin.poly"), "c", "--mode", "exhaustive", "--json"]);
    let j = json(&out);
    assert_eq!(j["schema"], "polygraph.eval/1");
    assert_eq!(j["result"][0], "1");
}

#[test]
fn eval_out_of_fuel() {
    let (code, _, err) = polygraph(&["eval", &fixture("arith.poly"), "mult", "5", "5", "--fuel", "3"]);
    assert_eq!(code, EXIT_EXHAUSTED, "{err}");
}

#[test]
fn eval_bad_input() {
    let (code, _, err) = polygraph(&["eval", &fixture("arith.poly"), "mult", "3"]);
    assert_eq!(code, EXIT_DIAGNOSTIC);
    assert!(!err.is_empty());
    let (code, _, _) = polygraph(&["eval", &fixture("missing.poly"), "mult", "1", "1"]);
    assert_eq!(code, EXIT_DIAGNOSTIC);
}

#[test]
fn check_sort_reports_constants() {
    let (code, out, _) = polygraph(&["check", &fixture("sort.poly"), "--json"]);
    let j = json(&out);
    assert_eq!(j["schema"], "polygraph.check/1");
    assert_eq!((j["a"].as_u64(), j["K"].as_u64()), (Some(1), Some(1)));
    let rules = j["rules"].as_array().unwrap();
    let status = |n: &str| rules.iter().find(|r| r["rule"] == n).unwrap()["status"].as_str().unwrap().to_string();
    assert_eq!(status("sort_two"), "compatible");
    // The split rules pair an increasing current with the given heat; see
    // the README for the measured witnesses.
    assert_eq!(status("split_nil"), "violation");
    assert_eq!(code, if j["simple"].as_bool().unwrap() { EXIT_OK } else { EXIT_DIAGNOSTIC });
}

#[test]
fn check_cold_sort_has_witness() {
    let text = std::fs::read_to_string(fixture("sort.poly")).unwrap().replace("heat sort(i) = 2*i^2;", "heat sort(i) = i;");
    let path = scratch("cold_sort.poly", &text);
    let (code, out, _) = polygraph(&["check", &path]);
    assert_eq!(code, EXIT_DIAGNOSTIC);
    let line = out.lines().find(|l| l.starts_with("rule sort_two:")).unwrap();
    assert!(line.contains("violation at ["), "{line}");
}

#[test]
fn check_arith() {
    let (code, out, _) = polygraph(&["check", &fixture("arith.poly")]);
    assert!(out.contains("a = 1, K = 1"), "{out}");
    for r in ["add_z", "add_s", "mult_z", "mult_s"] {
        assert!(out.contains(&format!("rule {r}: compatible")), "{out}");
    }
    assert_eq!(code, if out.contains(": simple") { EXIT_OK } else { EXIT_DIAGNOSTIC });
}

#[test]
fn bounds_on_eight_element_list() {
    let (_, out, _) = polygraph(&["bounds", &fixture("sort.poly"), "sort", "[8,3,5,1,7,2,6,4]", "--json"]);
    let j = json(&out);
    assert_eq!(j["q"], "2*x^2");
    assert_eq!(j["p"], "x");
    let size = j["sizes"][0].as_u64().unwrap();
    assert_eq!(size, 17);
    assert!(j["k"].as_u64().unwrap() <= 2 * size * size);
    assert!(j["completed"].as_bool().unwrap());
    let (_, text, _) = polygraph(&["bounds", &fixture("sort.poly"), "sort", "[8,3,5,1,7,2,6,4]"]);
    assert!(text.contains("Q_sort = 2*x^2"), "{text}");
    assert!(text.contains("P_sort = x"), "{text}");
}

#[test]
fn bounds_on_mult_pass() {
    let (code, out, _) = polygraph(&["bounds", &fixture("arith.poly"), "mult", "3", "2", "--json"]);
    let j = json(&out);
    assert!(j["all_pass"].as_bool().unwrap(), "{out}");
    assert_eq!(code, EXIT_OK);
}

#[test]
fn compiled_machine_agrees_with_simulator() {
    let path = std::env::temp_dir().join(format!("polygraph-inc-{}.poly", std::process::id()));
    let out_path = path.to_str().unwrap();
    let (code, _, err) = polygraph(&["compile-tm", &fixture("increment.tm"), "-o", out_path]);
    assert_eq!(code, EXIT_OK, "{err}");
    let tm = increment_tm();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let len = rng.gen_range(0..=8);
        let w: String = (0..len).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect();
        let (want, _) = tm_simulate(&tm, &w, 10_000).unwrap();
        let (code, got, err) = polygraph(&["eval", out_path, "run", &format!("\"{w}\"")]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(got.trim().trim_matches('"'), want, "input {w:?}");
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn clocked_machine_passes_check() {
    let (code, text, err) = polygraph(&["compile-tm", &fixture("increment.tm"), "--clock", "2*n+2"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let path = scratch("increment_clocked.poly", &text);
    let (code, out, _) = polygraph(&["check", &path, "--grid", "6"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = polygraph(&["eval", &path, "main", "\"011\""]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim().trim_matches('"'), "111");
}

#[test]
fn partial_machine_is_a_diagnostic() {
    let path = scratch("partial.tm", "machine partial\nalphabet 0 1\nblank _\ninitial q0\ntrans q0 _ -> q0 _ R\n");
    let (code, _, err) = polygraph(&["compile-tm", &path]);
    assert_eq!(code, EXIT_DIAGNOSTIC);
    assert!(err.contains("error"), "{err}");
}

#[test]
fn export_identity() {
    let (code, out, _) = polygraph(&["export", &fixture("sort.poly"), "--identity", "nat,list"]);
    assert_eq!(code, EXIT_OK);
    let j = json(&out);
    assert_eq!(j["schema"], "polygraph.diagram/1");
    assert_eq!(j["nodes"].as_array().unwrap().len(), 0);
    assert_eq!(j["wires"].as_array().unwrap().len(), 2);
    let (_, dot, _) = polygraph(&["export", &fixture("sort.poly"), "--identity", "nat", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn export_trace_of_mult() {
    let (code, out, _) = polygraph(&["export", &fixture("arith.poly"), "mult", "2", "2", "--trace"]);
    assert_eq!(code, EXIT_OK);
    let j = json(&out);
    assert_eq!(j["schema"], "polygraph.trace/1");
    let steps = j["steps"].as_array().unwrap();
    let (k, l) = (j["k"].as_u64().unwrap(), j["l"].as_u64().unwrap());
    assert_eq!(steps.len() as u64, k + l);
    assert_eq!(j["result"][0], "4");
    let mut heat = j["initial_heat"].as_u64().unwrap();
    for s in steps {
        let h = s["heat"].as_u64().unwrap();
        if s["kind"] == "Computation" {
            assert!(h < heat, "step {}: {heat} -> {h}", s["index"]);
        }
        heat = h;
    }
}

#[test]
fn export_rule_sides() {
    let (code, out, _) = polygraph(&["export", &fixture("sort.poly"), "--rule", "sort_two", "--rhs"]);
    assert_eq!(code, EXIT_OK);
    let j = json(&out);
    let cells: Vec<&str> = j["nodes"].as_array().unwrap().iter().map(|n| n["cell"].as_str().unwrap()).collect();
    assert_eq!(cells.iter().filter(|c| c.starts_with("swap[")).count(), 1, "{cells:?}");
}
