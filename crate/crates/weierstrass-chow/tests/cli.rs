use std::process::{Command, Output};

use weierstrass_chow::chowcore::PresentationJson;
use weierstrass_chow::verifykit::SuiteReport;

fn wchow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wchow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn present_text_g2() {
    let out = wchow(&["present", "--family", "h", "--g", "2", "--n", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-12*l1 - 4*l2"), "{text}");
    assert!(text.contains("normal form: Z[psi]/(40*psi)"), "{text}");
}

#[test]
fn present_m0_n3_is_z() {
    let out = wchow(&["present", "--family", "m0", "--g", "2", "--n", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("normal form: Z"));
}

#[test]
fn present_json_round_trips() {
    let out = wchow(&[
        "present", "--family", "h", "--g", "3", "--n", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pres: PresentationJson =
        serde_json::from_value(v["presentation"].clone()).unwrap();
    assert_eq!(pres.g, 3);
    assert_eq!(serde_json::to_value(&pres).unwrap(), v["presentation"]);
    assert_eq!(v["simplified"], "Z[psi_inf]/(12*psi_inf)");
}

#[test]
fn present_rejects_large_n_with_usage_error() {
    let out = wchow(&["present", "--family", "h", "--g", "2", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn picard_text_instances() {
    let out = wchow(&["picard", "--family", "h", "--g", "3", "--n", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("Z/12, generator psi_inf"));

    let out = wchow(&["picard", "--family", "m0", "--g", "2", "--n", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("Z/20"));

    let out = wchow(&["picard", "--family", "m0", "--g", "2", "--n", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("trivial"));
}

#[test]
fn verify_small_range() {
    let out = wchow(&["verify", "--g-min", "2", "--g-max", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("15/15 checks passed"), "{text}");
}

#[test]
fn verify_json_lines_round_trip() {
    let out = wchow(&[
        "verify", "--g-min", "2", "--g-max", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let report = SuiteReport::from_json_lines(&stdout(&out)).unwrap();
    assert!(report.all_pass());
    assert_eq!(report.entries.len(), 15);
}

#[test]
fn verify_rejects_empty_range() {
    let out = wchow(&["verify", "--g-min", "5", "--g-max", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thm12_text_and_json() {
    let out = wchow(&["thm12", "--g", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("nonzero remainder"));

    let out = wchow(&["thm12", "--g", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["check"], "thm12_nonmembership");
    assert_eq!(v["pass"], true);

    let out = wchow(&["thm12", "--g", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("wchow-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("picard.json");
    let out = wchow(&[
        "picard", "--family", "h", "--g", "2", "--n", "1", "--format", "json",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["order"], "40");
    std::fs::remove_file(&path).ok();
}

#[test]
fn unknown_flags_exit_2() {
    let out = wchow(&["present", "--family", "h", "--g", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = wchow(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}
