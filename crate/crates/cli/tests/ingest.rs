use std::io::Write;
use std::path::Path;

use atomsurf::commands::cmd_ingest_optical;
use atomsurf::config::RunConfig;
use atomsurf_core::optics::{PermittivityModel, TabulatedPermittivity};

/// Lorentz oscillator: `Im ε(ω)` on the real axis and the exact `ε(iξ)`.
struct Lorentz {
    omega0: f64,
    omega_p: f64,
    gamma: f64,
}

impl Lorentz {
    fn eps_imag(&self, w: f64) -> f64 {
        let p2 = self.omega_p * self.omega_p;
        let d = self.omega0 * self.omega0 - w * w;
        p2 * self.gamma * w / (d * d + self.gamma * self.gamma * w * w)
    }

    fn eps_imaginary_axis(&self, xi: f64) -> f64 {
        1.0 + self.omega_p * self.omega_p / (self.omega0 * self.omega0 + xi * xi + self.gamma * xi)
    }
}

fn write_input(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    let mut f = std::fs::File::create(&p).unwrap();
    f.write_all(body.as_bytes()).unwrap();
    p
}

fn config(grid: &str) -> RunConfig {
    RunConfig::from_json(&format!(r#"{{"xi_rad_s": {grid}}}"#)).unwrap()
}

#[test]
fn lorentzian_round_trip() {
    let l = Lorentz {
        omega0: 5e15,
        omega_p: 8e15,
        gamma: 5e14,
    };
    let mut body = String::from("omega_rad_s,eps_imag\n");
    let n = 6000;
    for i in 0..n {
        let w = 1e12 * 1e7f64.powf(i as f64 / (n - 1) as f64);
        body.push_str(&format!("{w:.15e},{:.15e}\n", l.eps_imag(w)));
    }
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "lorentz.csv", &body);
    let t = cmd_ingest_optical(&config(r#"{"from": 1e13, "to": 1e18, "n": 26}"#), &input).unwrap();
    let xi = t.column("xi_rad_s").unwrap();
    let eps = t.column("eps_i_xi").unwrap();
    for (x, e) in xi.iter().zip(&eps) {
        let want = l.eps_imaginary_axis(*x);
        assert!(((e - 1.0) / (want - 1.0) - 1.0).abs() < 1e-4, "xi {x:e}: {e} vs {want}");
    }

    // written table read back as a surface model, evaluated between nodes
    let out = dir.path().join("eps.csv");
    t.write_to(Some(&out)).unwrap();
    let cfg = RunConfig::from_json(&format!(
        r#"{{"surface": {{"model": "tabulated", "path": "{}"}}}}"#,
        out.display()
    ))
    .unwrap();
    let (model, _) = cfg.surface().unwrap();
    assert!(matches!(model, PermittivityModel::Tabulated(_)));
    for x in [3e13, 7e14, 2.2e15, 6e16] {
        let e = model.eps(x).unwrap();
        let want = l.eps_imaginary_axis(x);
        assert!(((e - 1.0) / (want - 1.0) - 1.0).abs() < 2e-3, "xi {x:e}: {e} vs {want}");
    }
}

#[test]
fn empty_absorption_gives_vacuum() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "empty.csv", "omega_rad_s,eps_imag\n");
    let t = cmd_ingest_optical(&config("[0, 1e14, 1e16]"), &input).unwrap();
    assert!(t.column("eps_i_xi").unwrap().iter().all(|e| *e == 1.0));
    let samples: Vec<(f64, f64)> = t
        .column("xi_rad_s")
        .unwrap()
        .into_iter()
        .zip(t.column("eps_i_xi").unwrap())
        .collect();
    let tab = TabulatedPermittivity::with_default_extrapolation(&samples).unwrap();
    assert_eq!(tab.eps(1e15).unwrap(), 1.0);
}

#[test]
fn metadata_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "drude.csv",
        "# sample = film A\n# drude_omega_p = 1.37e16\n# drude_gamma = 5.32e13\nomega_rad_s,eps_imag\n1e15,6.0\n1e16,0.6\n",
    );
    let s = cmd_ingest_optical(&config("[1e14, 1e15]"), &input).unwrap().to_csv_string();
    for want in [
        "# input.sample = film A",
        "# input.drude_omega_p = 1.37e16",
        "# input.drude_gamma = 5.32e13",
        "# input_rows = 2",
        "# c = 2.99792458e8 m/s",
    ] {
        assert!(s.lines().any(|l| l == want), "missing '{want}'");
    }
}

#[test]
fn drude_static_limit_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "drude.csv",
        "# drude_omega_p = 1.37e16\n# drude_gamma = 5.32e13\nomega_rad_s,eps_imag\n1e15,6.0\n1e16,0.6\n",
    );
    let e = cmd_ingest_optical(&config("[0, 1e15]"), &input).unwrap_err();
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn malformed_inputs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let half = write_input(dir.path(), "half.csv", "# drude_omega_p = 1e16\nomega_rad_s,eps_imag\n1e15,1\n1e16,0.1\n");
    assert!(cmd_ingest_optical(&config("[1e14, 1e15]"), &half).is_err());
    let rising = write_input(dir.path(), "rising.csv", "omega_rad_s,eps_imag\n1e15,1\n1e16,2\n");
    assert!(cmd_ingest_optical(&config("[1e14, 1e15]"), &rising).is_err());
    let header = write_input(dir.path(), "header.csv", "omega,eps\n1e15,1\n");
    assert!(cmd_ingest_optical(&config("[1e14, 1e15]"), &header).is_err());
    let ok = write_input(dir.path(), "ok.csv", "omega_rad_s,eps_imag\n1e15,1\n1e16,0.1\n");
    assert!(cmd_ingest_optical(&config("[1e15, 1e14]"), &ok).is_err());
    assert_eq!(
        cmd_ingest_optical(&config("[1e14, 1e15]"), &dir.path().join("missing.csv"))
            .unwrap_err()
            .exit_code(),
        1
    );
}
