use serde_json::Value;
use weyl_transfer_cli::{run, suite_registry, SuiteParams};
use weyl_transfer::SeedSpec;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

/// One invocation per library operation that has worked examples, with the
/// expected standard output.
const COVERAGE: &[(&str, &[&str], &str)] = &[
    ("sample_unit_prefix", &["sample", "--n", "1", "--seed", "7"], ""),
    ("sample_tri_path", &["sample", "--n", "1", "--measure", "haar"], "1\n"),
    ("encode", &["encode", "--values", "0.5,0.2,0.7"], "1,1,3\n"),
    ("iperm_of", &["encode", "--values", "0.3,0.9,0.1,0.6", "--to", "iperm"], "2,4,1,3\n"),
    ("iperm_from_path", &["encode", "--path", "1,1,3"], "2,1,3\n"),
    ("path_from_iperm", &["encode", "--perm", "3,1,2"], "1,1,2\n"),
    ("generalized_encode", &["encode", "--values", "0.1,0.7", "--to", "cells", "--kernel", "shifted"], "1 1 1\n2 2,1 1/2\n"),
    ("cell_measure", &["encode", "--values", "0.1,0.2,0.3,0.4", "--to", "cells"], "1 1 1\n2 1,2 1/2\n3 1,2,3 1/6\n4 1,2,3,4 1/24\n"),
    ("shift", &["transfer", "--values", "0.3,0.9,0.1"], "0.90000000000000002,0.10000000000000001\n"),
    ("marked_positions", &["transfer", "--path", "1,2,1,3", "--marks"], "marks: T,F,T,F\ncounts: 1,1,2,2\n"),
    ("transfer", &["transfer", "--path", "1,2,1,3"], "1,1,2\n"),
    ("translate_iperm", &["transfer", "--perm", "2,4,1,3"], "3,1,2\n"),
    ("delta_relation_check", &["transfer", "--path", "1,2,1,3", "--check"], "true\n"),
    ("estimate_first", &["decode", "--path", "1", "--k-max", "1"], "estimate_first: 1.0000000000000000\nreconstruct: 0.50000000000000000\n"),
    ("reconstruct", &["decode", "--path", "1,1,3"], "estimate_first: 0.66666666666666663\nreconstruct: 0.50000000000000000,0.25000000000000000,0.75000000000000000\n"),
    ("separate", &["separate", "--values", "0.5,0.2", "--other", "0.2,0.5"], "level: 2\npair: 1,2\n"),
    ("derivative_perm", &["perm-maps", "--perm", "2,4,1,3", "--map", "derivative"], "2,3,1\n"),
    ("shrink_iperm", &["perm-maps", "--perm", "2,4,1,3", "--map", "shrink"], "2,1,3\n"),
    ("delete_one", &["perm-maps", "--perm", "2,4,1,3", "--map", "delete-one"], "3,1,2\n"),
    ("matrix_encode", &["matrix", "--values", "0.3,0.9,0.1"], "\n+\n--\n"),
    ("matrix_decode", &["matrix", "--matrix", "/+/--"], "2,3,1\n"),
    ("factorial_tree", &["export-graph", "--graph", "factorial", "--n", "6", "--validate"], "valid\n"),
    ("w_graph", &["export-graph", "--graph", "w", "--n", "2", "--paths"], "1,1\n1,2\n"),
    ("young_graph", &["export-graph", "--graph", "young", "--n", "3", "--paths"], "1,1.1,1.1.1\n1,1.1,2.1\n1,2,2.1\n1,2,3\n"),
    ("hasse_transfer_rule", &["export-graph", "--graph", "chain", "--n", "5", "--census"], "one_intermediate: 4\ntwo_intermediates: 0\n"),
    ("transfer_apply", &["young", "--tableau", "1,2,3"], "1,2\n"),
    ("promotion", &["young", "--tableau", "1,2/3", "--op", "promotion"], "1,3/2\n"),
    ("young_transfer", &["young", "--tableau", "1,2/3"], "1/2\n"),
    ("rsk", &["young", "--values", "0.5,0.2,0.7"], "P: 0.20000000000000001,0.69999999999999996/0.50000000000000000\nQ: 1,3/2\n"),
    ("plancherel_sample", &["young", "--n", "1"], "1\n"),
    ("frame_validate", &["export-graph", "--graph", "factorial", "--n", "1", "--validate"], "valid\n"),
    ("chi_square", &["suite", "--observed", "60,40", "--expected", "0.5,0.5"], "4.0000000000000000\n"),
    ("entropy_curve", &["suite", "--curve", "factorial", "--nmax", "2"], "n,q_n,ln_qn_over_n\n1,1,0\n2,2,0.34657359027997264\n"),
];

#[test]
fn every_example_is_reachable() {
    for (op, args, expected) in COVERAGE {
        let out = ok(args);
        if !expected.is_empty() {
            assert_eq!(&out, expected, "{op}: {args:?}");
        }
    }
    let x: Vec<f64> = ok(&["sample", "--n", "1", "--seed", "7"]).trim().split(',').map(|v| v.parse().unwrap()).collect();
    assert!(x.len() == 1 && x[0] > 0.0 && x[0] < 1.0);
}

#[test]
fn suites_and_exports_from_the_command_line() {
    let dot = ok(&["export-graph", "--graph", "factorial", "--n", "3"]);
    assert_eq!(dot.lines().filter(|l| l.contains("dashed")).count(), 8);
    let dot = ok(&["export-graph", "--graph", "w", "--n", "2"]);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 2);
    for (name, extra) in [
        ("pushforward", vec!["--n", "4", "--trials", "2000"]),
        ("isometry", vec!["--nmax", "3", "--n", "3", "--samples", "6000"]),
        ("distinguishability", vec!["--trials", "100", "--level-cap", "12"]),
        ("decoder", vec!["--n", "100", "--trials", "10", "--tol", "0.2"]),
    ] {
        let mut args = vec!["suite", "--name", name];
        args.extend(extra);
        ok(&args);
    }
}

#[test]
fn conjugacy_suite_prints_jsonl() {
    let out = ok(&["suite", "--name", "conjugacy", "--nmax", "8", "--trials", "200"]);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (summary, checks) = lines.split_last().unwrap();
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["pass"], true);
    assert!(checks.len() >= 7);
    for c in checks {
        for key in ["suite", "check", "statistic", "threshold", "pass", "seed"] {
            assert!(c.get(key).is_some(), "{key} missing from {c}");
        }
    }
    let csv = ok(&["suite", "--name", "fibers", "--nmax", "4", "--format", "csv"]);
    assert!(csv.starts_with("suite,check,statistic,threshold,relation,pass,sample_size,seed\n"));
}

#[test]
fn failing_suite_exits_one() {
    let (code, out, _) = call(&["suite", "--name", "decoder", "--n", "100", "--trials", "5", "--tol", "0.000001"]);
    assert_eq!(code, 1);
    assert!(out.lines().last().unwrap().contains("\"pass\":false"));
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let (code, _, err) = call(&["transfer", "--path", "1,3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--path"), "{err}");
    let (code, _, err) = call(&["sample", "--n", "3", "--seed", "abc"]);
    assert_eq!(code, 2);
    assert!(err.contains("--seed"), "{err}");
    assert_eq!(call(&["suite", "--name", "fibers", "--jobs", "0"]).0, 2);
    assert_eq!(call(&["matrix", "--matrix", "/+/-+"]).0, 2);
    assert_eq!(call(&["encode", "--values", "0.5,0.5"]).0, 2);
}

#[test]
fn identical_arguments_give_identical_bytes() {
    for args in [
        vec!["sample", "--n", "5", "--seed", "11"],
        vec!["sample", "--n", "6", "--measure", "ewens", "--t", "2", "--seed", "11"],
        vec!["young", "--n", "6", "--seed", "3"],
        vec!["suite", "--name", "pushforward", "--n", "5", "--trials", "3000", "--seed", "5"],
    ] {
        assert_eq!(ok(&args), ok(&args));
    }
    let args = ["suite", "--name", "comparison-matrix", "--trials", "300", "--nmax", "40", "--samples", "2000", "--seed", "5"];
    let one: Vec<&str> = args.iter().copied().chain(["--jobs", "1"]).collect();
    let three: Vec<&str> = args.iter().copied().chain(["--jobs", "3"]).collect();
    assert_eq!(ok(&one), ok(&three));
    assert_ne!(ok(&["sample", "--n", "3", "--seed", "1"]), ok(&["sample", "--n", "3", "--seed", "2"]));
}

#[test]
fn out_flag_writes_the_file_only() {
    let path = std::env::temp_dir().join(format!("wtx-out-{}.txt", std::process::id()));
    let p = path.to_str().unwrap();
    let out = ok(&["encode", "--values", "0.5,0.2,0.7", "--out", p]);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1,1,3\n");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn json_format() {
    let v: Value = serde_json::from_str(&ok(&["encode", "--values", "0.5,0.2,0.7", "--format", "json"])).unwrap();
    assert_eq!(v["path"], serde_json::json!([1, 1, 3]));
    let v: Value = serde_json::from_str(&ok(&["decode", "--path", "1,1,3", "--format", "json"])).unwrap();
    assert_eq!(v["reconstruct"][1], 0.25);
}

#[test]
fn registry_names() {
    let names: Vec<&str> = suite_registry().iter().map(|d| d.name).collect();
    assert!(names.len() >= 12);
    for required in [
        "conjugacy",
        "translation",
        "fibers",
        "decoder",
        "distinguishability",
        "pushforward",
        "comparison-matrix",
        "perm-maps",
        "young-transfer",
        "young-conjugacy",
        "entropy",
        "isometry",
        "generalized-kernel",
    ] {
        assert!(names.contains(&required), "{required}");
    }
    let mut sorted = names.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), names.len());
    let listed = ok(&["suite", "--list"]);
    assert_eq!(listed.lines().count(), names.len());
}

#[test]
fn every_registered_suite_runs_small() {
    let small = SuiteParams {
        nmax: Some(4),
        n: Some(4),
        trials: Some(500),
        samples: Some(3000),
        level_cap: Some(12),
        k_max: None,
        tol: None,
    };
    for d in suite_registry() {
        let params = match d.name {
            "decoder" => SuiteParams { n: Some(100), tol: Some(0.2), trials: Some(10), ..small },
            "comparison-matrix" => SuiteParams { nmax: Some(30), ..small },
            "entropy" => SuiteParams { n: Some(20), ..small },
            "generalized-kernel" => SuiteParams { n: Some(3), nmax: Some(4), ..small },
            "plancherel" => SuiteParams { n: Some(3), ..small },
            _ => small,
        };
        let report = d.run_with(params, SeedSpec::new(77, 0)).unwrap();
        assert!(report.passed(), "{}: {}", d.name, report.to_jsonl());
        assert_eq!(report.suite, d.name);
    }
}
