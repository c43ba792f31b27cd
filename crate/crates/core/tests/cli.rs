use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn symsq(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symsq"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn euler_prints_local_factor() {
    let dir = tempfile::tempdir().unwrap();
    let form = data("11a.json");
    let o = symsq(&["euler", "--form", form.to_str().unwrap(), "--q", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "-2", "4", "-8"]));
    assert_eq!(v["type"], "unramified");
}

#[test]
fn cached_and_uncached_reports_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let form = data("11a.json");
    let l = data("lambda_T_plus_5.json");
    let args = [
        "report",
        "--form",
        form.to_str().unwrap(),
        "--s0",
        "2,3,7,11",
        "--lambda",
        l.to_str().unwrap(),
    ];
    let cold = symsq(&args, dir.path());
    let warm = symsq(&args, dir.path());
    let mut uncached = args.to_vec();
    uncached.push("--no-cache");
    let fresh = symsq(&uncached, dir.path());
    assert_eq!(cold.status.code(), Some(0), "{}", String::from_utf8_lossy(&cold.stderr));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 4);
    assert_eq!(stdout(&cold), stdout(&warm));
    assert_eq!(stdout(&cold), stdout(&fresh));
    let v: serde_json::Value = serde_json::from_str(&stdout(&cold)).unwrap();
    assert_eq!(v["element"]["relation_holds"], true);
    assert_eq!(v["sigma_total"], 8);
}

#[test]
fn text_report_lists_primes_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let form = data("11a.json");
    let o = symsq(&["sigma", "--form", form.to_str().unwrap(), "--s0", "13,2,7", "--format", "text"], dir.path());
    let primes: Vec<u64> = stdout(&o)
        .lines()
        .filter_map(|l| l.strip_prefix("q="))
        .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(primes, vec![2, 7, 13]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let form = data("11a.json");
    let f = data("lambda_T_plus_5.json");
    let g = data("lambda_T_plus_10.json");
    let o = symsq(&["congruence", "--f", f.to_str().unwrap(), "--g", g.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));

    let t_squared = dir.path().join("t2.json");
    std::fs::write(&t_squared, r#"{"p": 5, "precision": 6, "trunc": 30, "coeffs": ["0", "0", "1"]}"#).unwrap();
    let o = symsq(&["congruence", "--f", f.to_str().unwrap(), "--g", t_squared.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "not congruent");

    let o = symsq(&["sigma", "--form", form.to_str().unwrap(), "--s0", "5"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = symsq(&["euler", "--form", "/nonexistent.json", "--q", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = symsq(&["frobnicate"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    // overriding p revalidates the record; p = 3 is out of range
    let o = symsq(&["--p", "3", "euler", "--form", form.to_str().unwrap(), "--q", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn prep_and_specialize() {
    let dir = tempfile::tempdir().unwrap();
    let f = data("lambda_T_plus_5.json");
    let o = symsq(&["prep", "--input", f.to_str().unwrap()], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["mu"].as_u64(), v["lambda"].as_u64()), (Some(0), Some(1)));
    assert_eq!(v["reconstructs"], true);
    let o = symsq(&["specialize", "--input", f.to_str().unwrap(), "--n", "-1"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // T = 6^2 - 1 = 35, F(35) = 40
    assert_eq!(v["value"], "40");
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let form = data("11a.json");
    let out = dir.path().join("report.json");
    let o = symsq(
        &["report", "--form", form.to_str().unwrap(), "--s0", "2", "--output", out.to_str().unwrap(), "--no-cache"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["primes"][0]["q"], 2);
}
