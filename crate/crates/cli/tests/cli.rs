use std::path::PathBuf;
use std::process::Command;

use ccsym::certify::{Certificate, CertificateFile};
use ccsym::model::PolyhedronKind;
use ccsym_cli::{curve_samples, export_curve, replay_file, run_case, CaseReport, DecompositionReport, RunOptions};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ccsym"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

#[test]
fn decompose_prints_json_inventory() {
    let out = bin().args(["decompose", "tetrahedron"]).output().unwrap();
    assert!(out.status.success());
    let r: DecompositionReport = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = r.blocks.iter().map(|b| b.name.as_str()).collect();
    assert_eq!(names, ["T1", "t4"]);
    assert!(r.blocks.iter().all(|b| b.matrix.is_none()));
    assert_eq!(r.theta_multiplicities, [2, 0, 0, 2, 0]);
}

#[test]
fn tetrahedron_report_is_verified_and_replays() {
    let run = run_case(PolyhedronKind::Tetrahedron, &RunOptions::default()).unwrap();
    let r = &run.report;
    assert!(r.all_verified, "{:?}", r.failures);
    assert_eq!(r.equal_masses, Some(true));
    let d = r.delta.as_ref().unwrap();
    assert_eq!(d.reciprocal, ("1.88999".to_string(), "1.89000".to_string()));
    assert!(replay_file(&run.certificates).iter().all(|l| l.ok));

    let back: CaseReport = serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn single_block_filter() {
    let opts = RunOptions { block: Some("t4".into()), delta: false, ..RunOptions::default() };
    let run = run_case(PolyhedronKind::Tetrahedron, &opts).unwrap();
    assert_eq!(run.report.results.len(), 1);
    assert_eq!(run.report.results[0].block, "t4");
    assert_eq!(run.report.equal_masses, None);
    let bad = RunOptions { block: Some("X9".into()), ..RunOptions::default() };
    assert!(run_case(PolyhedronKind::Tetrahedron, &bad).is_err());
}

#[test]
fn curve_samples_on_thirds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let rows = export_curve(PolyhedronKind::Tetrahedron, 2, &path).unwrap();
    let ts: Vec<(&str, &str)> = rows.iter().map(|r| (r.t_num.as_str(), r.t_den.as_str())).collect();
    assert_eq!(ts, [("1", "3"), ("2", "3")]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("t_num,t_den,c_lo,c_hi,ratio_lo,ratio_hi,ratio_sign"));
    assert!(curve_samples(PolyhedronKind::Tetrahedron, 1).is_err());
}

#[test]
fn mass_ratio_changes_sign_along_the_curve() {
    let rows = curve_samples(PolyhedronKind::Tetrahedron, 3).unwrap();
    let signs: Vec<&str> = rows.iter().map(|r| r.ratio_sign.as_str()).collect();
    assert_eq!(signs, ["+", "+", "-"]);
    // t = 1/2: c and -M12/M11 from an independent high-precision evaluation
    assert_eq!((rows[1].c_lo.as_str(), rows[1].c_hi.as_str()), ("0.230660771330", "0.230660771331"));
    assert_eq!((rows[1].ratio_lo.as_str(), rows[1].ratio_hi.as_str()), ("0.248360323949", "0.248360323950"));
}

#[test]
fn replay_command_rejects_tampering() {
    let opts = RunOptions { block: Some("T1".into()), delta: false, ..RunOptions::default() };
    let run = run_case(PolyhedronKind::Tetrahedron, &opts).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, run.certificates.to_json().unwrap()).unwrap();
    let out = bin().arg("replay").arg(&good).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));

    let mut file: CertificateFile = run.certificates.clone();
    match &mut file.certificates[0] {
        Certificate::Sign(s) => s.sign = s.sign.flip(),
        other => panic!("unexpected certificate {}", other.kind()),
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, file.to_json().unwrap()).unwrap();
    let out = bin().arg("replay").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().next().unwrap().starts_with("FAIL [0]"), "{text}");
    assert!(text.lines().nth(1).unwrap().starts_with("ok   [1]"), "{text}");
}

#[test]
fn group_command_reads_character_data() {
    let out = bin().arg("group").arg(data("s4.json")).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "order 24 degrees [1, 1, 2, 3, 3]");
}

#[test]
fn bad_arguments_exit_with_error() {
    let out = bin().args(["curve", "cube", "--samples", "1", "--out", "/nonexistent/x.csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["decompose", "dodecahedron"]).output().unwrap();
    assert!(!out.status.success());
}
