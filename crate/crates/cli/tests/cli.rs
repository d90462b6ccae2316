use std::path::PathBuf;
use std::process::{Command, Output};

use ndga::liealgebroid::three_lie_registry;
use ndga::operators::field_power_registry;
use ndga::pathsum::kernel_registry;
use ndga::verify::reproduction_checks;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn ndga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ndga")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = ndga(&full);
    (serde_json::from_str(&stdout(&o)).expect("valid JSON"), o.status.code().unwrap())
}

#[test]
fn mc_three_prints_the_equation() {
    let o = ndga(&["mc", "--N", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("(d2(e) + d(e)e + e^3) + (d(e) + e^2) d + e d^2 = 0"));
}

#[test]
fn unreachable_coefficient_is_zero_without_paths() {
    let o = ndga(&["mc", "--N", "3", "--coeff", "5", "--show-paths"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c((5),3) = 0\nno paths\n");
    let (v, code) = json(&["mc", "--N", "3", "--coeff", "5", "--show-paths"]);
    assert_eq!(code, 0);
    assert_eq!(v["c"], 0);
    assert_eq!(v["paths"], Value::Array(vec![]));
}

#[test]
fn listed_paths_sum_to_the_coefficient() {
    for (s, n) in [("1,1", "4"), ("0", "3"), ("0,0,0,0", "4"), ("2", "3")] {
        let (v, code) = json(&["mc", "--N", n, "--coeff", s, "--show-paths"]);
        assert_eq!(code, 0);
        let paths = v["paths"].as_array().unwrap();
        let total: i64 = paths.iter().map(|p| p["weight"].as_i64().unwrap()).sum();
        assert_eq!(v["c"].as_i64().unwrap(), total, "{s}");
        for p in paths {
            let vertices = p["vertices"].as_array().unwrap();
            assert_eq!(vertices.first().unwrap(), "∅");
            assert_eq!(vertices.len(), n.parse::<usize>().unwrap() + 1);
        }
    }
}

#[test]
fn input_errors_exit_with_two() {
    let missing = fixture("does-not-exist.json");
    for args in [
        vec!["mc", "--N", "2"],
        vec!["mc", "--N", "3", "--coeff", "x"],
        vec!["ncomplex", "check", "--input", &missing],
        vec!["kernel", "--backend", "nope", "--N", "2", "--target", "0"],
        vec!["verify-paper", "--filter", "99"],
        vec!["mc"],
    ] {
        assert_eq!(ndga(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn check_failures_exit_with_one() {
    let broken = fixture("broken3.json");
    let omega = fixture("omega3.json");
    for args in [
        vec!["ncomplex", "check", "--input", &broken],
        vec!["algebra", "nilpotency", "--input", &omega, "--N", "2"],
        vec!["infinitesimal", "--N", "4", "--trailing", "mirrored"],
    ] {
        assert_eq!(ndga(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn filter_selects_only_the_path_sum_checks() {
    let (v, _) = json(&["verify-paper", "--filter", "pathsum"]);
    let ids: Vec<u64> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [1, 2, 3, 4, 5]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["group"] == "pathsum"));
}

#[test]
fn flipped_weights_fail_the_mc_checks() {
    for flip in ["prepend", "loop", "increment"] {
        let (v, code) = json(&["verify-paper", "--filter", "pathsum", "--flip-weight", flip]);
        assert_ne!(code, 0, "{flip}");
        let failed: Vec<&str> = v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["pass"] == false)
            .map(|c| c["name"].as_str().unwrap())
            .collect();
        assert!(failed.iter().any(|n| n.starts_with("mc-3")), "{flip}: {failed:?}");
        assert!(v["first_failure"].is_string());
    }
}

#[test]
fn verify_output_is_byte_identical_across_runs() {
    for args in [vec!["verify-paper"], vec!["--json", "verify-paper"], vec!["--json", "mc", "--N", "5", "--show-paths"]]
    {
        let a = ndga(&args);
        let b = ndga(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn seed_changes_the_random_batteries_only() {
    let (a, _) = json(&["--seed", "1", "verify-paper", "--filter", "1,2"]);
    let (b, _) = json(&["--seed", "2", "verify-paper", "--filter", "1,2"]);
    assert_eq!(a["checks"], b["checks"]);
    assert_ne!(a["seed"], b["seed"]);
}

#[test]
fn every_registered_strategy_is_reachable() {
    let so3 = fixture("so3.json");
    let field = fixture("field.json");
    let digraph = fixture("digraph.json");
    for name in kernel_registry().names() {
        let o = ndga(&["kernel", "--backend", name, "--N", "3", "--input", &digraph]);
        assert_eq!(o.status.code(), Some(0), "kernel {name}");
        let o = ndga(&["kernel", "--backend", name, "--N", "4", "--target", "1,1", "--truncation", "4"]);
        assert_eq!(o.status.code(), Some(0), "kernel {name}");
    }
    for name in three_lie_registry().names() {
        let o = ndga(&["lie", "check3", "--input", &so3, "--method", name]);
        assert_eq!(o.status.code(), Some(0), "3-Lie {name}");
    }
    for name in field_power_registry().names() {
        let o = ndga(&["algebra", "power", "--input", &field, "--N", "3", "--method", name]);
        assert_eq!(o.status.code(), Some(0), "field power {name}");
    }
    for (name, _) in reproduction_checks().iter() {
        let o = ndga(&["verify-paper", "--filter", name]);
        assert_ne!(o.status.code(), Some(2), "check {name}");
        assert!(stdout(&o).contains(&format!("({name})")), "check {name}");
    }
}

#[test]
fn every_subcommand_runs_on_its_fixture() {
    let f = fixture;
    let cases: Vec<Vec<String>> = vec![
        vec!["infinitesimal".into(), "--N".into(), "6".into()],
        vec!["paths".into(), "--N".into(), "3".into()],
        vec!["forms".into(), "omega".into(), "--N".into(), "3".into(), "--n".into(), "1".into()],
        vec!["forms".into(), "omega".into(), "--N".into(), "3".into(), "--n".into(), "1".into(), "--simplex".into()],
        vec![
            "forms".into(),
            "delta".into(),
            "--N".into(),
            "3".into(),
            "--n".into(),
            "1".into(),
            "--form".into(),
            "m1^2".into(),
        ],
        vec!["forms".into(), "sset".into(), "--input".into(), f("interval.json"), "--poly-bound".into(), "1".into()],
        vec!["ncomplex".into(), "check".into(), "--input".into(), f("string3.json")],
        vec![
            "ncomplex".into(),
            "cohomology".into(),
            "--input".into(),
            f("string3.json"),
            "--p".into(),
            "2".into(),
            "--i".into(),
            "2".into(),
        ],
        vec!["lie".into(), "deform".into(), "--input".into(), f("deform2.json")],
        vec!["lie".into(), "deform".into(), "--example".into(), "closed".into(), "--infinitesimal".into()],
        vec!["lie".into(), "identities".into(), "--input".into(), f("tangent2.json"), "--order".into(), "3".into()],
        vec![
            "algebra".into(),
            "nf".into(),
            "--presentation".into(),
            f("mixed.json"),
            "--poly".into(),
            "th2*th1".into(),
        ],
        vec![
            "algebra".into(),
            "mul".into(),
            "--presentation".into(),
            f("mixed.json"),
            "--a".into(),
            "th1".into(),
            "--b".into(),
            "th1".into(),
        ],
        vec!["algebra".into(), "nilpotency".into(), "--input".into(), f("omega3.json"), "--N".into(), "3".into()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = ndga(&refs);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let mut with_json = vec!["--json"];
        with_json.extend(refs);
        serde_json::from_slice::<Value>(&ndga(&with_json).stdout).expect("JSON output parses");
    }
}

#[test]
fn algebra_commands_compute_normal_forms() {
    let mixed = fixture("mixed.json");
    let o = ndga(&["algebra", "nf", "--presentation", &mixed, "--poly", "th2*th1 + th1*th1"]);
    assert_eq!(stdout(&o).trim(), "-th1*th2");
    let o = ndga(&["algebra", "mul", "--presentation", &mixed, "--a", "th1", "--b", "th1"]);
    assert_eq!(stdout(&o).trim(), "0");
}
