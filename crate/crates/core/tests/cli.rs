use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const GEOMETRIC: &str = r#"{"kind":"geometric","params":{"q":0.5}}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_treeprofile"));
    c.env_remove("TREEPROFILE_SEED");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn workspace() -> TempDir {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("geometric.json"), GEOMETRIC).unwrap();
    fs::write(d.path().join("path4.csv"), "1,2\n2,3\n3,4\n").unwrap();
    d
}

#[test]
fn dist_profile_of_path() {
    let d = workspace();
    let o = run(d.path(), &["dist-profile", "--tree", "path4.csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "k,count\n0,4\n1,6\n2,4\n3,2\n");
    let naive = run(d.path(), &["dist-profile", "--tree", "path4.csv", "--naive"]);
    assert_eq!(stdout(&naive), stdout(&o));
}

#[test]
fn exact_geometric_three() {
    let d = workspace();
    let o = run(d.path(), &["exact", "--weights", "geometric.json", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,EL,ELambda"));
    let lambda: Vec<f64> = lines.map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert!((lambda[0] - 3.0).abs() < 1e-12);
    assert!((lambda[1] - 4.0).abs() < 1e-12);
    assert!((lambda[2] - 2.0).abs() < 1e-12);
}

#[test]
fn sample_single_vertex() {
    let d = workspace();
    let o = run(d.path(), &["sample", "--weights", "geometric.json", "--n", "1", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "rep,tree\n0,()\n");
}

#[test]
fn exit_codes() {
    let d = workspace();
    assert_eq!(run(d.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(d.path(), &["sample", "--n", "notanumber"]).status.code(), Some(1));
    assert_eq!(run(d.path(), &["--help"]).status.code(), Some(0));

    let o = run(d.path(), &["sample", "--weights", "geometric.json", "--n", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('n'));

    // The binary law on {0, 2} only has odd sizes.
    fs::write(d.path().join("span2.json"), r#"{"kind":"table","coeffs":[0.5,0.0,0.5]}"#).unwrap();
    let o = run(d.path(), &["sample", "--weights", "span2.json", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn unknown_config_field_is_rejected() {
    let d = workspace();
    fs::write(d.path().join("c.json"), r#"{"n": 100, "bogus": 1}"#).unwrap();
    let o = run(d.path(), &["experiment", "root_degree", "--config", "c.json"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn experiment_list() {
    let d = workspace();
    let o = run(d.path(), &["experiment", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(names.len(), 10);
    assert!(names.iter().any(|n| n == "fourier_decay"));
}

fn experiment_into(d: &Path, out: &str, extra: &[&str]) {
    fs::write(d.join("small.json"), r#"{"n": 200, "reps": 500}"#).unwrap();
    let mut args = vec!["experiment", "root_degree", "--config", "small.json", "--seed", "9", "--out", out];
    args.extend_from_slice(extra);
    let o = run(d, &args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn experiment_outputs_are_reproducible() {
    let d = workspace();
    experiment_into(d.path(), "a", &[]);
    experiment_into(d.path(), "b", &[]);
    experiment_into(d.path(), "c", &["--jobs", "3"]);
    for f in ["results.csv", "reference.csv", "summary.json"] {
        let a = fs::read(d.path().join("a").join(f)).unwrap();
        assert_eq!(a, fs::read(d.path().join("b").join(f)).unwrap(), "{f}");
        assert_eq!(a, fs::read(d.path().join("c").join(f)).unwrap(), "{f} with --jobs");
    }
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("a/manifest.json")).unwrap()).unwrap();
    assert_eq!(m["seed"], 9);
    assert_eq!(m["options"]["config"]["n"], 200);
    assert!(fs::read_to_string(d.path().join("a/results.csv")).unwrap().starts_with("k,count,"));
}

#[test]
fn seed_falls_back_to_environment() {
    let d = workspace();
    let args = ["sample", "--weights", "geometric.json", "--n", "30", "--reps", "3"];
    let flag = run(d.path(), &[&args[..], &["--seed", "77"]].concat());
    let env = bin().current_dir(d.path()).args(args).env("TREEPROFILE_SEED", "77").output().unwrap();
    let other = run(d.path(), &[&args[..], &["--seed", "78"]].concat());
    assert_eq!(stdout(&flag), stdout(&env));
    assert_ne!(stdout(&flag), stdout(&other));
}

#[test]
fn json_format_and_out_dir() {
    let d = workspace();
    let o = run(
        d.path(),
        &["profile", "--weights", "geometric.json", "--n", "50", "--reps", "2", "--format", "json", "--out", "o"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("o/profile.json")).unwrap()).unwrap();
    let rows = v.as_array().expect("array of rows");
    let total: u64 = rows
        .iter()
        .filter(|r| r["rep"] == "0" || r["rep"] == 0)
        .map(|r| r["count"].as_str().map_or_else(|| r["count"].as_u64().unwrap(), |s| s.parse().unwrap()))
        .sum();
    assert_eq!(total, 50);
    assert!(d.path().join("o/manifest.json").exists());
}

#[test]
fn unrooted_tree_file_and_wiener() {
    let d = workspace();
    let o = run(d.path(), &["wiener", "--tree", "path4.csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",10"), "{}", stdout(&o));
}

#[test]
fn enumerate_small_law() {
    let d = workspace();
    let o = run(d.path(), &["enumerate", "--weights", "geometric.json", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let probs: Vec<f64> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(probs.len(), 2);
    assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}
