use centext::cli::args::main_with;
use centext::report::Report;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["centext"];
    full.extend_from_slice(args);
    let code = main_with(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn verify_two_checks() {
    let (code, out, _) = run(&["verify", "--type", "A2", "--checks", "pi0,pi0mu"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    let ids: Vec<&str> = r.records.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(ids, ["pi0/A2", "pi0mu/A2"]);
    assert!(r.records.iter().all(|r| r.pass));
}

#[test]
fn hilbert_identity_for_all_families() {
    let (code, out, _) = run(&["verify", "--checks", "hilbert-identity", "--type", "all"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.summary.total, 5);
}

#[test]
fn configuration_errors_exit_2() {
    let (code, _, err) = run(&["verify", "--checks", "bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown check"));
    assert_eq!(run(&["verify", "--type", "B3"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["monodromy", "--type", "A2"]).0, 2);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["verify", "--type", "A2", "--checks", "flatness,blocks,heisenberg", "--seed", "7"];
    let a: Report = serde_json::from_str(&run(&args).1).unwrap();
    let b: Report = serde_json::from_str(&run(&args).1).unwrap();
    assert_eq!(a.without_timings(), b.without_timings());
    assert_eq!(a.seed, 7);
}

#[test]
fn formats_and_report_merge() {
    let (code, csv, _) = run(&["verify", "--type", "A2", "--checks", "pi0", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("check_id,"));
    let (_, md, _) = run(&["verify", "--type", "A2", "--checks", "pi0", "--format", "markdown"]);
    assert!(md.contains("| `pi0/A2` |"));

    let dir = std::env::temp_dir().join(format!("centext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    std::fs::write(&a, run(&["verify", "--type", "A2", "--checks", "pi0"]).1).unwrap();
    std::fs::write(&b, run(&["verify", "--checks", "verlinde"]).1).unwrap();
    let (code, out, _) = run(&["report", a.to_str().unwrap(), b.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let merged: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(merged.summary.total, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn roots_groups_monodromy() {
    let (code, out, _) = run(&["roots", "--type", "D4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["dim_pi0"], 28);
    assert_eq!(v[0]["nodal"]["leg_orders"], serde_json::json!([2, 2, 2]));

    let (code, out, _) = run(&["groups", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 22);
    let (code, out, _) = run(&["groups", "--verify", "--name", "G4,G8"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"computed_order\": 96"));

    let (code, out, _) = run(&["monodromy", "--type", "A3", "--lambda", "zero", "--tol", "1e-8"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["record"]["pass"], true);
    assert!(v["report"].get("y").is_none());
}
