mod common;

use common::{data, golden_dir, roundtrip_all, run, run_json, GOLDEN};
use serde_json::Value;

fn output<'a>(v: &'a Value, k: &str) -> &'a Value {
    &v["outputs"][k]
}

#[test]
fn examples() {
    let (code, v) = run_json(&["bracket", "--ring", "A", "--d", "2", "E[1,2]*u^2*e[0]", "E[2,1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["inputs"][0], "E[1,2]*(1/2*u^2 + 1/2*u^2*x)");

    // [v, u] = t + c_1 x in the rational Cherednik algebra
    let (code, v) = run_json(&["bracket", "--ring", "cher", "--d", "2", "--t", "1", "--c", "3", "v", "u"]);
    assert_eq!(code, 0);
    assert_eq!(output(&v, "bracket"), "1 + 3*x");

    let (_, v) = run_json(&["bracket", "--ring", "A", "--d", "3", "e[0]+e[1]+e[2]", "u"]);
    assert_eq!(v["inputs"][0], "1");

    let (code, v) = run_json(&["weyl", "coinv", "--l", "2", "--d", "1", "--degree-cap", "8"]);
    assert_eq!(code, 0);
    assert_eq!(output(&v, "dimension"), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["roots", "--n", "2", "--d", "2", "--rmax", "1"]).0, 0);
    // the unadjusted generator table fails the bracket relations
    let (code, v) = run_json(&["verify", "--which", "dala-printed", "--n", "2", "--d", "2", "--rmax", "1"]);
    assert_eq!(code, 1);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "fail"));
    assert_eq!(run(&["verify", "--which", "dala", "--n", "2", "--d", "2", "--rmax", "1"]).0, 0);

    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&["bracket", "--ring", "D", "u", "v"]).0, 2);
    assert_eq!(run(&["verify", "--which", "xyz"]).0, 2);
    assert_eq!(run(&["glinf", "--ring", "cher", "--window", "5:1", "u"]).0, 2);

    let (code, _, err) = run(&["bracket", "u +", "v"]);
    assert_eq!(code, 3);
    assert!(err.contains("syntax"));
    assert_eq!(run(&["bracket", "u $ v", "v"]).0, 3);

    assert_eq!(run(&["qfin", "--input", "/nonexistent/file.json"]).0, 4);
    assert_eq!(run(&["qfin", "--input", &data("tensor.json"), "--order", "x"]).0, 2);

    // module errors: 10 + family
    assert_eq!(run(&["bracket", "--ring", "loopA", "--d", "2", "v", "u"]).0, 12);
    assert_eq!(run(&["decompose", "--which", "td3C", "--ring", "A", "E[1,2]*u"]).0, 16);
    assert_eq!(run(&["bracket", "--ring", "A", "E[1,2]", "u"]).0, 14);
    assert_eq!(run(&["bracket", "--ring", "A", "u/0", "u"]).0, 10);
}

#[test]
fn qfin_and_integrable_files() {
    let (code, v) = run_json(&["qfin", "--input", &data("weight_qfin.json")]);
    assert_eq!(code, 0);
    assert_eq!(output(&v, "quasi_finite"), true);
    let (code, v) = run_json(&["qfin", "--input", &data("weight_factorial.json")]);
    assert_eq!(code, 1);
    assert_eq!(output(&v, "quasi_finite"), false);
    let (code, _) = run_json(&["qfin", "--n", "2", "--d", "2", "--input", &data("tensor.json")]);
    assert_eq!(code, 0);

    let (code, v) = run_json(&["integrable", "--input", &data("pseudo_ab.json")]);
    assert_eq!(code, 0);
    assert_eq!(output(&v, "polynomials")["P[0,0]"], "w - 2");
    let (code, v) = run_json(&["integrable", "--input", &data("pseudo_ab_bad.json")]);
    assert_eq!(code, 1);
    assert!(v["checks"][0]["details"].as_str().unwrap().contains("r=5"));
}

/// Regenerate with CDALA_BLESS=1.
#[test]
fn golden_reports() {
    let dir = golden_dir();
    let bless = std::env::var_os("CDALA_BLESS").is_some();
    for (name, args) in GOLDEN {
        let mut a = args.to_vec();
        a.push("--json");
        let (code, out, err) = run(&a);
        assert_eq!(code, 0, "{}: {}", name, err);
        let path = dir.join(format!("{}.json", name));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        assert_eq!(out, want, "{} differs from its golden file", name);
    }
}

#[test]
fn reports_match_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../docs/report.schema.json")).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("valid schema");
    let mut runs: Vec<Vec<String>> = GOLDEN.iter().map(|(_, a)| a.iter().map(|s| s.to_string()).collect()).collect();
    for extra in [
        vec!["weyl", "dim", "--n", "3", "--l", "2", "--k", "2"],
        vec!["verify", "--which", "kl", "--n", "3", "--d", "2", "--samples", "4"],
        vec!["verify", "--which", "dala-printed", "--n", "2", "--d", "2", "--rmax", "1"],
        vec!["iso", "--which", "toroidal", "--ring", "C", "--d", "2", "E[1,2]*u*v"],
    ] {
        runs.push(extra.into_iter().map(String::from).collect());
    }
    let (qf, pa) = (data("weight_qfin.json"), data("pseudo_ab_bad.json"));
    runs.push(vec!["qfin".into(), "--input".into(), qf]);
    runs.push(vec!["integrable".into(), "--input".into(), pa]);
    for args in runs {
        let a: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let (_, v) = run_json(&a);
        let errs: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errs.is_empty(), "{:?}: {:?}", args, errs);
    }
}

#[test]
fn print_parse_roundtrip() {
    roundtrip_all().unwrap();
}
