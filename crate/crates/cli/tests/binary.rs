use std::path::Path;
use std::process::{Command, Output};

fn atomsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomsurf")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn plane_to_stdout() {
    let o = atomsurf(&["plane", "--atom", "rb87-static", "--surface", "perfect", "--z", "1e-6,2e-6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = String::from_utf8(o.stdout).unwrap();
    let data: Vec<&str> = s.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "z_A_m,U0_J,U0_err_J,F0_N,F0_err_N,eta_F,eta_F_err");
    assert_eq!(data.len(), 3);
    assert!(s.starts_with("# atomsurf "));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.json",
        r#"{"atom": {"model": "rb87_static"}, "surface": {"model": "gold"}, "z_a_m": [1e-6]}"#,
    );
    let out = dir.path().join("out.csv");
    let o = atomsurf(&["eta", "--config", &cfg, "--surface", "perfect", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let s = std::fs::read_to_string(out).unwrap();
    assert!(s.contains("# surface = perfect conductor"));
    let row = s.lines().last().unwrap();
    let eta: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
    assert!((eta - 1.0).abs() < 1e-6);
}

#[test]
fn corrugation_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.json",
        r#"{"atom": {"model": "rb87_static"}, "surface": {"model": "perfect"}, "z_a_m": [2e-6],
            "corrugation": {"h0_m": 1e-7, "wavelength_m": 1e-5}, "output": {"report": "report.json"}}"#,
    );
    // relative output paths are taken from the working directory
    let o = Command::new(env!("CARGO_BIN_EXE_atomsurf"))
        .args(["corrugation", "--config", &cfg])
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let ev = rep["u1_amplitude_ev"].as_f64().unwrap();
    assert!((ev / 1.13e-14 - 1.0).abs() < 0.01);
    assert_eq!(rep["class"], "marginal");
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["plane", "--atom", "rb87", "--surface", "gold"],
        vec!["plane", "--atom", "cs133", "--surface", "gold", "--z", "1e-6"],
        vec!["plane", "--atom", "rb87", "--surface", "gold", "--z", "-1e-6"],
        vec!["plane", "--atom", "rb87", "--surface", "gold", "--z", "1e-6", "--rel-tol", "0.5"],
        vec!["rho", "--atom", "rb87", "--surface", "gold", "--z", "1e-6"],
        vec!["plane", "--bogus"],
    ] {
        assert_eq!(code(&atomsurf(&args)), 2, "{args:?}");
    }
    let bad = write(dir.path(), "bad.json", r#"{"atom": {"model": "rb87"}, "surfaces": {}}"#);
    assert_eq!(code(&atomsurf(&["plane", "--config", &bad])), 2);
}

#[test]
fn non_convergence_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "tight.json",
        r#"{"atom": {"model": "rb87"}, "surface": {"model": "gold"}, "z_a_m": [1e-6],
            "quadrature": {"rel_tol": 1e-11, "max_subdivisions": 2}}"#,
    );
    let o = atomsurf(&["plane", "--config", &cfg]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("did not converge"));
}

#[test]
fn thread_count_from_environment() {
    let args = ["response", "--atom", "rb87", "--surface", "silicon", "--z", "1e-7,1e-6", "--kz", "0.5,2"];
    let run = |n: &str| {
        Command::new(env!("CARGO_BIN_EXE_atomsurf"))
            .args(args)
            .env("ATOMSURF_THREADS", n)
            .output()
            .unwrap()
    };
    let one = run("1");
    let three = run("3");
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(code(&run("zero")), 2);
}

#[test]
fn ingest_and_selftest() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.csv", "omega_rad_s,eps_imag\n1e15,1\n1e16,0.1\n");
    let o = atomsurf(&["ingest-optical", &input, "--xi", "1e14,1e15"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("xi_rad_s,eps_i_xi"));
    let s = atomsurf(&["selftest"]);
    assert_eq!(code(&s), 0, "{}", String::from_utf8_lossy(&s.stdout));
    let text = String::from_utf8(s.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}
