//! Fixed configurations behind the golden files, shared by the golden and
//! acceptance targets.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use atomsurf::commands::{cmd_corrugation, cmd_eta, cmd_ingest_optical, cmd_plane, cmd_response, cmd_rho};
use atomsurf::config::RunConfig;

pub const PLANE: &str = r#"{"atom": {"model": "rb87"}, "surface": {"model": "silicon"}, "z_a_m": [2e-8, 1e-7, 1e-6, 2e-5]}"#;
pub const RHO: &str = r#"{"atom": {"model": "rb87_static"}, "surface": {"model": "perfect"}, "z_a_m": [2e-6], "kz": [0, 0.5, 1, 2, 5]}"#;
pub const RESPONSE: &str = r#"{"atom": {"model": "rb87"}, "surface": {"model": "gold"}, "z_a_m": [1e-7, 1e-6], "wavelength_m": [1e-5, 1e-6]}"#;
pub const ETA: &str = r#"{"atom": {"model": "rb87"}, "surface": {"model": "gold"}, "z_a_m": {"from": 2e-8, "to": 2e-5, "n": 4}}"#;
pub const CORRUGATION: &str = r#"{"atom": {"model": "rb87_static"}, "surface": {"model": "perfect"}, "z_a_m": [2e-6],
    "corrugation": {"h0_m": 1e-7, "wavelength_m": 1e-5, "method": "closed_form"}}"#;

pub const FILES: [&str; 7] = [
    "plane.csv",
    "rho.csv",
    "response.csv",
    "eta.csv",
    "corrugation.csv",
    "corrugation.json",
    "ingest.csv",
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cfg(json: &str) -> RunConfig {
    RunConfig::from_json(json).unwrap()
}

pub fn pool(n: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()
}

/// Current output for one of [`FILES`].
pub fn render(name: &str) -> String {
    match name {
        "plane.csv" => cmd_plane(&cfg(PLANE)).unwrap().to_csv_string(),
        "rho.csv" => cmd_rho(&cfg(RHO)).unwrap().to_csv_string(),
        "response.csv" => cmd_response(&cfg(RESPONSE)).unwrap().to_csv_string(),
        "eta.csv" => cmd_eta(&cfg(ETA)).unwrap().to_csv_string(),
        "corrugation.csv" => cmd_corrugation(&cfg(CORRUGATION)).unwrap().0.to_csv_string(),
        "corrugation.json" => {
            let (_, report) = cmd_corrugation(&cfg(CORRUGATION)).unwrap();
            serde_json::to_string_pretty(&report).unwrap() + "\n"
        }
        "ingest.csv" => {
            let input = golden_dir().join("optical_input.csv");
            let mut c = cfg(r#"{"xi_rad_s": {"from": 1e13, "to": 1e17, "n": 9}}"#);
            c.base_dir = None;
            let out = cmd_ingest_optical(&c, &input).unwrap().to_csv_string();
            // the preamble records the input path; keep the golden file machine-independent
            out.replace(&input.display().to_string(), "optical_input.csv")
        }
        _ => panic!("no golden case {name}"),
    }
}

/// First differing line, 1-based, or `None` when identical.
pub fn first_difference(expected: &str, actual: &str) -> Option<usize> {
    if expected == actual {
        return None;
    }
    let line = expected
        .lines()
        .zip(actual.lines())
        .position(|(a, b)| a != b)
        .unwrap_or(expected.lines().count().min(actual.lines().count()));
    Some(line + 1)
}
