use std::fs;
use std::process::{Command, Output};

fn lassalle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lassalle"))
        .args(args)
        .env_remove("LASSALLE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn row_formats() {
    let o = lassalle(&["row", "--k", "2", "--format", "plain"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 1 3 1 0\n");

    let o = lassalle(&["row", "--k", "0", "--format", "json"]);
    assert_eq!(stdout(&o), "{\"k\":0,\"row\":[\"1\"]}\n");

    let o = lassalle(&["row", "--k", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "ell,value\n1,0\n2,1\n3,0\n");
}

#[test]
fn json_row_round_trips_through_a_parser() {
    let o = lassalle(&["row", "--k", "25", "--format", "json"]);
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let row: Vec<String> = v["row"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_owned())
        .collect();
    assert_eq!(row.len(), 51);
    // Exceeds 64 bits, so strings are the only lossless carrier.
    assert!(row[25].len() > 20);
    let again = serde_json::json!({ "k": 25, "row": row });
    assert_eq!(format!("{again}\n"), text);
}

#[test]
fn verify_passes_and_exits_zero() {
    for (property, max_k) in [("log-concave", "10"), ("unimodal", "20"), ("symmetric", "0"), ("all", "12")] {
        let o = lassalle(&["verify", "--property", property, "--max-k", max_k]);
        assert_eq!(o.status.code(), Some(0), "{property}");
        assert!(stdout(&o).ends_with(&format!("all hold for k <= {max_k}\n")));
    }
}

#[test]
fn verify_json_reports_no_witness() {
    let o = lassalle(&["verify", "--max-k", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);
    assert!(v["witness"].is_null());
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_comparisons() {
    let o = lassalle(&["oracle", "--k", "2", "--method", "matching"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "matching  0 1 3 1 0\nengine    0 1 3 1 0\nagree\n"
    );
    let o = lassalle(&["oracle", "--k", "3", "--method", "stacksort"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn oracle_bounds_are_enforced() {
    assert_eq!(
        lassalle(&["oracle", "--k", "40", "--method", "stacksort"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lassalle(&["oracle", "--k", "5", "--method", "stacksort"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lassalle(&["oracle", "--k", "6", "--method", "matching"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lassalle(&["oracle", "--k", "8", "--method", "matching", "--allow-large"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lassalle(&[]).status.code(), Some(2));
    assert_eq!(lassalle(&["row"]).status.code(), Some(2));
    assert_eq!(lassalle(&["row", "--k", "-1"]).status.code(), Some(2));
    assert_eq!(lassalle(&["row", "--k", "1", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(lassalle(&["verify", "--property", "convex", "--max-k", "2"]).status.code(), Some(2));
    assert_eq!(lassalle(&["eval", "--gaps", "2,2,2"]).status.code(), Some(2));
    assert_eq!(lassalle(&["sweep", "--fixed", "4", "--width", "4"]).status.code(), Some(2));
    assert_eq!(lassalle(&["row", "--k", "1", "--parallel", "0"]).status.code(), Some(2));
}

#[test]
fn eval_canonicalizes() {
    let o = lassalle(&["eval", "--gaps", "3,3"]);
    assert_eq!(stdout(&o), "3\n");
    let o = lassalle(&["eval", "--gaps", "1,3,1,3"]);
    assert_eq!(stdout(&o), "3\n");
    let o = lassalle(&["eval", "--gaps", "1,3"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn sweep_single_and_domain() {
    let o = lassalle(&["sweep", "--fixed", "3", "--width", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = lassalle(&["sweep", "--width", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("values=0 1 3 1 0"));
    let o = lassalle(&["sweep", "--max-n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn total_matches_recurrence() {
    let o = lassalle(&["total", "--max-k", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k=3 recurrence=56 row_sum=56 ok"));
    let o = lassalle(&["total", "--k", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "k,recurrence,row_sum\n4,1092,1092\n");
}

#[test]
fn selftest_is_deterministic() {
    let a = lassalle(&["selftest"]);
    let b = lassalle(&["selftest"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("invariants hold\n"));
}

#[test]
fn parallel_degree_does_not_change_output() {
    for args in [
        &["row", "--k", "22", "--format", "json"][..],
        &["verify", "--max-k", "15"][..],
    ] {
        let one = lassalle(&[args, &["--parallel", "1"]].concat());
        let many = lassalle(&[args, &["--parallel", "4"]].concat());
        assert_eq!(one.stdout, many.stdout);
    }
}

#[test]
fn cache_file_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.txt");
    let p = path.to_str().unwrap();
    let cold = lassalle(&["row", "--k", "12", "--cache", p]);
    assert_eq!(cold.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "3 3 = 3"));
    let warm = lassalle(&["row", "--k", "12", "--cache", p]);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.txt");
    let o = Command::new(env!("CARGO_BIN_EXE_lassalle"))
        .args(["row", "--k", "3"])
        .env("LASSALLE_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(path.exists());
}

#[test]
fn corrupt_cache_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3 3 = 3\n2 2 = -1\n").unwrap();
    let o = lassalle(&["row", "--k", "2", "--cache", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    // Left untouched.
    assert_eq!(fs::read_to_string(&path).unwrap(), "3 3 = 3\n2 2 = -1\n");
}

#[test]
fn unwritable_cache_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing-dir").join("memo.txt");
    let o = lassalle(&["row", "--k", "2", "--cache", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
