use std::path::PathBuf;
use std::process::{Command, Output};

use orbitkit::{Catalog, GroupSpec};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitkit"))
        .args(args)
        .env("ORBITKIT_SEED", "5")
        .output()
        .expect("orbitkit binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write_spec(name: &str, contents: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn catalog_lists_every_group_with_class_counts() {
    let out = run(&["catalog", "--format", "json"]);
    assert!(out.status.success());
    let listing: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = listing.as_array().unwrap();
    assert_eq!(entries.len(), Catalog::listing().len());
    let heis3 = entries.iter().find(|e| e["name"] == "heisenberg:3").unwrap();
    assert_eq!((heis3["order"].as_u64(), heis3["classes"].as_u64()), (Some(27), Some(11)));
}

#[test]
fn chartable_csv_has_one_row_per_orbit() {
    let out = run(&["chartable", "heisenberg:3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("orbit,size,degree,"));
    assert_eq!(lines.len(), 1 + 11);
    assert_eq!(lines[0].split(',').count(), 3 + 11);
    let degrees: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(degrees.iter().filter(|d| **d == "1").count(), 9);
    assert_eq!(degrees.iter().filter(|d| **d == "3").count(), 2);
}

#[test]
fn chartable_with_oracle_reports_match() {
    let out = run(&["chartable", "extraspecial:3:2", "--oracle"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("# oracle"));
    assert!(text.lines().any(|l| l.starts_with("# diff: matched")));

    let out = run(&["chartable", "heisenberg:5", "--oracle", "--format", "json"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 29);
    assert!(doc["diff"]["max_deviation"].as_f64().unwrap() < 1e-6);
}

#[test]
fn exact_values_are_root_multiples() {
    let out = run(&["chartable", "heisenberg:3", "--exact"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().last().unwrap();
    // a degree-3 row: 3ζ on the center, 0 elsewhere
    let cells: Vec<&str> = row.split(',').skip(3).collect();
    assert!(cells[0].starts_with("3*zeta("));
    assert!(cells[3..].iter().all(|c| *c == "0"));
}

#[test]
fn orbits_summary_and_json() {
    let out = run(&["orbits", "heisenberg:3"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("sizes: 1×9, 9×2; dims: 1×9, 3×2"));

    let out = run(&["orbits", "heisenberg:5", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let orbits = doc["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 29);
    let total: u64 = orbits.iter().map(|o| o["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 125);
}

#[test]
fn verify_reports_pass_for_each_suite() {
    for suite in ["cocycle", "lazard", "orbits", "groupalg"] {
        let out = run(&["verify", "product(heisenberg:3,abelian:[3])", "--suite", suite]);
        assert!(out.status.success(), "{suite}: {}", stdout(&out));
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(doc["passed"], true);
        assert_eq!(doc["suite"], suite);
        assert!(!doc["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_skips_group_algebra_above_budget() {
    let out = run(&["verify", "heisenberg:7", "--suite", "groupalg"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["skipped"] == true));
}

#[test]
fn export_round_trips_through_a_spec_file() {
    let path = scratch("export_extraspecial.json");
    let out = run(&["export", "extraspecial:3:2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let spec = GroupSpec::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rebuilt = spec.build().unwrap();
    let original = Catalog::extraspecial(3, 2).unwrap();
    assert_eq!(rebuilt.mul_table().unwrap(), original.mul_table().unwrap());

    let from_file = run(&["chartable", path.to_str().unwrap()]);
    let from_name = run(&["chartable", "extraspecial:3:2"]);
    assert_eq!(from_file.stdout, from_name.stdout);
}

#[test]
fn out_flag_writes_file_instead_of_stdout() {
    let path = scratch("heis3_table.csv");
    let out = run(&["chartable", "heisenberg:3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&run(&["chartable", "heisenberg:3"])));
}

#[test]
fn invalid_specs_exit_two() {
    for (name, spec) in [
        ("not_json.json", "{ not json"),
        ("bad_kind.json", r#"{"A":[3],"C":[3],"psi":{"kind":"mystery"}}"#),
        ("bad_shape.json", r#"{"A":[3],"C":[3,3],"psi":{"kind":"bilinear","matrix":[[1]]}}"#),
        ("not_cocycle.json", r#"{"A":[3],"C":[3],"psi":{"kind":"table","entries":[[0],[0],[0],[0],[1],[0],[0],[0],[0]]}}"#),
    ] {
        let path = write_spec(name, spec);
        let out = run(&["orbits", &path]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", stdout(&out));
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(doc["error"], "InvalidSpec", "{name}");
    }
    let out = run(&["orbits", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn strict_center_mismatch_exits_two_with_witness() {
    let path = write_spec(
        "degenerate.json",
        r#"{"A":[3],"C":[3],"psi":{"kind":"bilinear","matrix":[[1]]},"strict_center":true}"#,
    );
    let out = run(&["chartable", &path]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["error"], "CenterMismatch");
    assert!(doc["witness"].is_string());
}

#[test]
fn even_order_exits_three() {
    let path = write_spec("z2.json", r#"{"psi":{"kind":"catalog","name":"abelian","params":[2,3]}}"#);
    let out = run(&["verify", &path]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["error"], "NotTwoDivisible");
    assert_eq!(doc["order"], 6);
}

#[test]
fn seed_changes_nothing_observable_in_tables() {
    let with = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_orbitkit"))
            .args(["chartable", "heisenberg:3", "--oracle"])
            .env("ORBITKIT_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b) = (with("1"), with("1"));
    assert_eq!(a.stdout, b.stdout);
    assert!(with("2").status.success());
}
