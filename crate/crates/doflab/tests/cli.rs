//! Black-box tests of the `doflab` binary: output shapes, exit codes, and
//! byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn doflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doflab"))
        .args(args)
        .env_remove("DOFLAB_SEED")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Value {
    let out = doflab(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn vertices_of(doc: &Value) -> Vec<[String; 2]> {
    doc["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| [v[0].as_str().unwrap().to_owned(), v[1].as_str().unwrap().to_owned()])
        .collect()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("doflab-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn region_feedback_6243_has_the_expected_vertices() {
    let doc = run_ok(&["region", "6", "2", "4", "3", "--family", "fb_dcsit"]);
    assert_eq!(doc["version"], "v1");
    assert_eq!(doc["family"], "fb_dcsit");
    let verts = vertices_of(&doc);
    for expect in [["0", "0"], ["4", "0"], ["2", "2"], ["0", "2"]] {
        let expect = [expect[0].to_owned(), expect[1].to_owned()];
        assert!(verts.contains(&expect), "missing vertex {expect:?} in {verts:?}");
    }
    assert_eq!(verts.len(), 4);
}

#[test]
fn region_delayed_6243_contains_the_fractional_corner() {
    let doc = run_ok(&["region", "6", "2", "4", "3", "--family", "d_csit"]);
    let verts = vertices_of(&doc);
    assert!(verts.contains(&["5/3".to_owned(), "2".to_owned()]), "{verts:?}");
    assert!(!verts.contains(&["2".to_owned(), "2".to_owned()]));
}

#[test]
fn region_single_antenna_is_a_triangle() {
    let doc = run_ok(&["region", "1", "1", "1", "1", "--family", "p_csit"]);
    let verts = vertices_of(&doc);
    assert_eq!(verts.len(), 3);
    for expect in [["0", "0"], ["1", "0"], ["0", "1"]] {
        let expect = [expect[0].to_owned(), expect[1].to_owned()];
        assert!(verts.contains(&expect), "{verts:?}");
    }
}

#[test]
fn region_csv_format_has_the_documented_header() {
    let out = doflab(&["region", "6", "2", "4", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("type,c1,c2,c3\n"), "{text}");
    assert!(text.contains("halfplane,"));
    assert!(text.contains("vertex,"));
}

#[test]
fn region_rejects_invalid_configs_and_families() {
    assert_eq!(exit_code(&doflab(&["region", "0", "2", "4", "3"])), 2);
    assert_eq!(exit_code(&doflab(&["region", "6", "2", "4"])), 2);
    assert_eq!(
        exit_code(&doflab(&["region", "6", "2", "4", "3", "--family", "nope"])),
        2
    );
}

#[test]
fn no_csit_fixture_is_limited_to_its_config() {
    let doc = run_ok(&["region", "6", "2", "4", "3", "--family", "no_csit_fixture"]);
    let verts = vertices_of(&doc);
    assert!(verts.contains(&["1".to_owned(), "2".to_owned()]), "{verts:?}");
    assert_eq!(exit_code(&doflab(&["region", "5", "2", "4", "3", "--family", "no_csit_fixture"])), 2);
}

#[test]
fn classify_reports_the_regime_and_witness() {
    let doc = run_ok(&["classify", "8", "4", "6", "5"]);
    assert_eq!(doc["tag"], "CaseB");
    assert_eq!(doc["witness"]["m1_tilde"], "8");
    assert_eq!(doc["witness"]["threshold"], "10");
    let doc = run_ok(&["classify", "3", "3", "3", "3"]);
    assert_eq!(doc["tag"], "EqualDelayed");
    // Swapped orientation classifies via the canonical form.
    let doc = run_ok(&["classify", "2", "6", "3", "4"]);
    assert_eq!(doc["tag"], "CaseA");
    assert_eq!(doc["swapped"], true);
}

#[test]
fn simulate_p0_6243_delivers_the_claimed_pair() {
    let doc = run_ok(&["simulate", "6", "2", "4", "3", "--point", "p0", "--trials", "100", "--seed", "5"]);
    assert_eq!(doc["successes"], 100);
    assert_eq!(doc["failures"], 0);
    assert_eq!(doc["delivered_dof"][0], "2");
    assert_eq!(doc["delivered_dof"][1], "2");
    assert_eq!(doc["systems"]["rx2"][0], 9);
    assert_eq!(doc["hermeticity"]["violations"], 0);
}

#[test]
fn simulate_p2_8465_delivers_the_claimed_pair() {
    let doc = run_ok(&["simulate", "8", "4", "6", "5", "--point", "p2", "--trials", "100", "--seed", "6"]);
    assert_eq!(doc["successes"], 100);
    assert_eq!(doc["delivered_dof"][0], "8/3");
    assert_eq!(doc["delivered_dof"][1], "10/3");
}

#[test]
fn simulate_rejects_plans_outside_their_regime() {
    let out = doflab(&["simulate", "2", "2", "2", "2", "--point", "p0"]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("EqualDelayed"), "{err}");
}

#[test]
fn simulate_float_mode_runs() {
    let doc = run_ok(&["simulate", "6", "2", "4", "3", "--point", "p0", "--trials", "10", "--mode", "float", "--seed", "3"]);
    assert_eq!(doc["successes"], 10);
    assert_eq!(doc["mode"], "float");
}

#[test]
fn simulate_is_byte_deterministic_for_a_fixed_seed() {
    let args = ["simulate", "6", "2", "4", "3", "--point", "p0", "--trials", "5", "--seed", "40"];
    let a = doflab(&args);
    let b = doflab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_env_variable_is_the_fallback() {
    let with_flag = doflab(&["simulate", "6", "2", "4", "3", "--point", "p0", "--trials", "3", "--seed", "40"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_doflab"))
        .args(["simulate", "6", "2", "4", "3", "--point", "p0", "--trials", "3"])
        .env("DOFLAB_SEED", "40")
        .output()
        .unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);

    let bad_env = Command::new(env!("CARGO_BIN_EXE_doflab"))
        .args(["simulate", "6", "2", "4", "3", "--point", "p0", "--trials", "3"])
        .env("DOFLAB_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(exit_code(&bad_env), 2);
}

#[test]
fn simulate_can_dump_the_plan_and_transcript() {
    let doc = run_ok(&[
        "simulate", "6", "2", "4", "3", "--point", "p0", "--trials", "2", "--seed", "8",
        "--dump-plan", "--dump-transcript",
    ]);
    assert_eq!(doc["plan"]["total_slots"], 3);
    assert_eq!(doc["plan"]["slots"][0]["tx1"][0]["kind"], "fresh");
    assert_eq!(doc["plan"]["slots"][0]["tx1"][0]["id"], "u1");
    assert!(doc["transcript"]["y1"].is_array());
}

#[test]
fn sweep_full_range_passes_inclusions() {
    let doc = run_ok(&["sweep", "8", "--checks", "inclusions"]);
    assert_eq!(doc["configs_checked"], 4096);
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn sweep_trivial_range_passes_all_checks() {
    let doc = run_ok(&["sweep", "1"]);
    assert_eq!(doc["configs_checked"], 1);
    assert_eq!(doc["ok"], true);
}

#[test]
fn sweep_small_range_passes_all_checks() {
    let doc = run_ok(&["sweep", "5", "--checks", "inclusions,classification,corners"]);
    assert_eq!(doc["configs_checked"], 625);
    assert_eq!(doc["ok"], true);
}

#[test]
fn region_output_is_byte_deterministic_and_file_writable() {
    let a = doflab(&["region", "8", "4", "6", "5", "--family", "d_csit"]);
    let b = doflab(&["region", "8", "4", "6", "5", "--family", "d_csit"]);
    assert_eq!(a.stdout, b.stdout);

    let dir = temp_dir("region-out");
    let path = dir.join("region.json");
    let out = doflab(&["region", "8", "4", "6", "5", "--family", "d_csit", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.as_bytes(), a.stdout.as_slice());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn plot_draws_one_polygon_per_family() {
    let dir = temp_dir("plot");
    let path = dir.join("three.svg");
    let out = doflab(&[
        "plot", "6", "2", "4", "3",
        "--families", "no_csit_fixture,d_csit,fb_dcsit",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("three.svg"));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg "));
    assert_eq!(svg.matches("<polygon").count(), 3);

    let single = dir.join("one.svg");
    let out = doflab(&["plot", "1", "1", "1", "1", "--out", single.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&single).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn plot_output_is_byte_deterministic() {
    let dir = temp_dir("plot-det");
    let p1 = dir.join("a.svg");
    let p2 = dir.join("b.svg");
    for p in [&p1, &p2] {
        assert!(doflab(&["plot", "8", "4", "6", "5", "--out", p.to_str().unwrap()]).status.success());
    }
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}
