use std::fs;
use std::process::{Command, Output};

use teich::verify::VerificationReport;

fn teich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teich"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_poisson_writes_json_report() {
    let o = teich(&["verify", "poisson", "--tol", "1e-6"]);
    assert_eq!(o.status.code(), Some(0));
    let report: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.check_id, "poisson");
    assert_eq!(report.tolerance, 1e-6);
    assert!(report.passed);
    let summary = String::from_utf8(o.stderr).unwrap();
    assert!(summary.starts_with("poisson PASS"), "{summary}");
}

#[test]
fn kernel_table_horizontal_row() {
    let o = teich(&["kernel-table", "--x0", "0,1", "--x", "0,2", "--grid", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,theta,p,q,kernel"));
    assert_eq!(lines.next(), Some("0,0.0,1.0,0.0,2.0"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn verify_all_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let ra = teich(&["verify", "all", "--seed", "42", "--output", a.to_str().unwrap()]);
    let rb = Command::new(env!("CARGO_BIN_EXE_teich"))
        .args(["verify", "all", "--seed", "42", "--output", b.to_str().unwrap()])
        .env("TEICH_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(ra.status.code(), Some(0), "{}", String::from_utf8_lossy(&ra.stdout));
    assert_eq!(rb.status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ra.stdout, rb.stdout);
    let reports: Vec<VerificationReport> = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(reports.len(), 10);
    // one summary line per check
    assert_eq!(stdout(&ra).lines().count(), 10);
}

#[test]
fn failing_check_exits_one() {
    let o = teich(&["verify", "rays", "--tol", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("rays FAIL"));
}

#[test]
fn argument_errors_exit_two() {
    for args in [
        vec!["verify", "nonsense"],
        vec!["verify"],
        vec!["verify", "rays", "--tol", "-1"],
        vec!["kernel-table", "--x0", "0,-1", "--x", "0,1"],
        vec!["kernel-table", "--x0", "0;1", "--x", "0,1"],
        vec!["ray-trace", "--x", "0,1", "--lamination", "0,0"],
        vec!["limit-trace", "--family", "nope", "--x", "0,1", "--lamination", "1,0"],
        vec!["frobnicate"],
    ] {
        let o = teich(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    let out = dir.path().join("r.csv");
    fs::write(
        &cfg,
        format!(
            r#"{{"check": "rays", "format": "csv", "tolerances": {{"rays": 1e-20}}, "output": {:?}}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = teich(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("check_id,label,value,bound,tolerance,passed,inputs_digest\n"));
    assert!(csv.contains(",1e-20,false,"));
    // flag beats file
    let o = teich(&["verify", "--config", cfg.to_str().unwrap(), "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));

    fs::write(&cfg, r#"{"check": "rays", "colour": "red"}"#).unwrap();
    let o = teich(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("unknown field"));
}

#[test]
fn help_documents_every_command() {
    let o = teich(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for cmd in ["verify", "kernel-table", "measure-table", "ray-trace", "limit-trace"] {
        assert!(text.contains(cmd), "{cmd}");
    }
    let o = teich(&["verify", "--help"]);
    let text = stdout(&o);
    for check in ["poisson", "harmonic-measure", "basepoint", "disintegration", "mvt", "riesz", "gradient", "rays", "all"] {
        assert!(text.contains(check), "{check}");
    }
}

#[test]
fn tables_are_csv() {
    let o = teich(&["measure-table", "--x", "-1,2", "--grid", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("k,theta,endpoint,density,cell_mass,line_density,cauchy_density\n0,0.0,inf,"));
    let o = teich(&["ray-trace", "--x", "0,1", "--lamination", "1,0", "--t-max", "1", "--steps", "1"]);
    assert_eq!(stdout(&o), "t,a,b,ext,ext_predicted,distance\n0.0,0.0,1.0,1.0,1.0,0.0\n1.0,0.0,7.38905609893065,0.1353352832366127,0.1353352832366127,1.0\n");
    let o = teich(&["limit-trace", "--family", "re_cayley", "--x", "0,1", "--lamination", "0,1", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8(o.stderr).unwrap();
    let limit: f64 = err.trim().strip_prefix("radial limit ").unwrap().parse().unwrap();
    assert!((limit + 1.0).abs() < 1e-10, "{err}");
}
