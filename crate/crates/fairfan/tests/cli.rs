use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairfan"))
        .args(args)
        .env_remove("FAIRFAN_MAX_POSET")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fairfan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn gen_then_fan_certifies() {
    let family = scratch("family.json");
    let svg = scratch("fan.svg");
    let f = family.to_str().unwrap();
    let out = bin(&["gen", "--kind", "random", "--d", "2", "--n", "4", "--c", "3", "--seed", "5", "--out", f]);
    assert_eq!(out.status.code(), Some(0));
    let out = bin(&["run", "--theorem", "fan", "--in", f, "--n", "4", "--c", "3", "--svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["certified"], true);
    assert!(r["coverage"].as_array().unwrap().iter().all(|k| k.as_u64().unwrap() >= 3));
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn gen_is_deterministic_on_stdout() {
    let args = ["gen", "--kind", "random", "--d", "3", "--n", "2", "--c", "4", "--seed", "9"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
    let adv = bin(&["gen", "--kind", "adversarial", "--d", "1", "--n", "3", "--c", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&adv.stdout).unwrap();
    assert_eq!(v["measures"].as_array().unwrap().len(), 6);
}

#[test]
fn parameter_errors_exit_two() {
    let out = bin(&["gen", "--kind", "random", "--d", "2", "--n", "2", "--c", "5", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m ≥ c"));
    assert_eq!(bin(&["run", "--theorem", "t8", "--n", "2", "--c", "4"]).status.code(), Some(2));
    assert_eq!(bin(&["run", "--theorem", "t5", "--n", "3", "--c", "3"]).status.code(), Some(2));
    assert_eq!(bin(&["run", "--theorem", "fan", "--in", "/nonexistent.json", "--n", "2", "--c", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["run", "--theorem", "t8", "--n", "2", "--c", "4", "--alpha", "1/2"]).status.code(), Some(2));
}

#[test]
fn pipelines_certify() {
    for args in [
        vec!["run", "--theorem", "t5", "--n", "2", "--c", "3", "--mode", "point"],
        vec!["run", "--theorem", "t5", "--n", "4", "--c", "2"],
        vec!["run", "--theorem", "t7", "--n", "4", "--c", "4", "--seed", "2"],
        vec!["run", "--theorem", "t8", "--n", "2", "--c", "4", "--alpha", "1/3"],
        vec!["run", "--theorem", "optimal", "--d", "2", "--n", "2", "--c", "3", "--candidates", "30"],
    ] {
        let out = bin(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["certified"], true);
    }
}

#[test]
fn alpha_plan_reports_integer_ratio_size() {
    let r = report(&bin(&["run", "--theorem", "t8", "--n", "2", "--c", "4", "--alpha", "1/3"]));
    assert_eq!(r["m"], 8);
    assert_eq!(r["alpha_ratio"], "4");
}

#[test]
fn poset_dot_and_cap() {
    let dot = scratch("p.dot");
    let out = bin(&["run", "--theorem", "poset", "--m", "4", "--n", "2", "--c", "3", "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["elements"], 8);
    assert_eq!(r["fiber_size"], 0);
    assert_eq!(r["notes"].as_array().unwrap().len(), 1);
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("digraph"));
    let capped = Command::new(env!("CARGO_BIN_EXE_fairfan"))
        .args(["run", "--theorem", "poset", "--m", "6", "--n", "3", "--c", "3"])
        .env("FAIRFAN_MAX_POSET", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn epsilon_for_two_regions_four_measures() {
    let r = report(&bin(&["run", "--theorem", "t7", "--n", "2", "--c", "4", "--d", "2"]));
    assert_eq!(r["target"], "1/4");
    assert_eq!(r["certified"], true);
}

#[test]
fn adversarial_line_has_two_bumps() {
    let v: serde_json::Value =
        serde_json::from_slice(&bin(&["gen", "--kind", "adversarial", "--d", "1", "--n", "2", "--c", "2"]).stdout).unwrap();
    assert_eq!(v["measures"].as_array().unwrap().len(), 2);
}

#[test]
fn batch_matches_single_runs() {
    let out = bin(&["run", "--theorem", "fan", "--d", "3", "--n", "3", "--c", "4", "--seed", "20", "--batch", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let batch = report(&out);
    let instances = batch["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 5);
    for (i, inst) in instances.iter().enumerate() {
        let seed = (20 + i).to_string();
        let single = report(&bin(&["run", "--theorem", "fan", "--d", "3", "--n", "3", "--c", "4", "--seed", &seed]));
        assert_eq!(inst, &single);
    }
}
