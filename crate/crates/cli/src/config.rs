//! Run configuration: one JSON document, optionally overridden by flags.
//! The schema is described in `docs/config.md`.

use std::path::{Path, PathBuf};

use atomsurf_core::atomics::{PolarizabilityModel, TabulatedPolarizability, Transition};
use atomsurf_core::constants::{alpha_si_from_volume, omega_from_wavelength};
use atomsurf_core::optics::{PermittivityModel, TabulatedPermittivity};
use atomsurf_core::profile::{BecProbeConfig, Mode, SurfaceProfile};
use atomsurf_core::quadrature::QuadratureSettings;
use atomsurf_core::Vec2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::files;
use crate::grid::{Grid, Range, Spacing};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub atom: Option<AtomSpec>,
    pub surface: Option<SurfaceSpec>,
    pub z_a_m: Option<Grid>,
    pub wavelength_m: Option<Grid>,
    pub k_per_m: Option<Grid>,
    pub kz: Option<Grid>,
    pub corrugation: Option<CorrugationSpec>,
    pub probe: Option<ProbeSpec>,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub output: OutputSpec,
    /// Imaginary frequencies for `ingest-optical`, rad/s.
    pub xi_rad_s: Option<Grid>,
    /// Directory against which relative data paths are resolved.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum AtomSpec {
    Rb87 {},
    Rb87Static {},
    Static {
        alpha0_volume_m3: f64,
    },
    SingleOscillator {
        alpha0_volume_m3: f64,
        transition_wavelength_m: f64,
    },
    Multilevel {
        transitions: Vec<TransitionSpec>,
    },
    /// CSV with columns `xi_rad_s,alpha_si`.
    Tabulated {
        path: PathBuf,
    },
}

/// One line carrying the static contribution `alpha0_volume_m3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub alpha0_volume_m3: f64,
    pub wavelength_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    Perfect {},
    Gold {},
    Silicon {},
    Plasma {
        plasma_wavelength_m: f64,
    },
    DrudeLorentz {
        omega_dl_rad_s: f64,
        eps_static: f64,
    },
    /// CSV with columns `xi_rad_s,eps_i_xi`, e.g. from `ingest-optical`.
    Tabulated {
        path: PathBuf,
    },
}

/// Either a sinusoid (`h0_m`, `wavelength_m`, `phase_rad`) along x or an
/// explicit list of `modes`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrugationSpec {
    pub h0_m: Option<f64>,
    pub wavelength_m: Option<f64>,
    #[serde(default)]
    pub phase_rad: f64,
    pub modes: Option<Vec<ModeSpec>>,
    /// Sample positions along x; one sinusoid period in 8 steps when absent.
    pub x_m: Option<Grid>,
    #[serde(default)]
    pub method: Method,
}

/// `H e^{i k·r}` term of the height profile, amplitude in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub kx_per_m: f64,
    #[serde(default)]
    pub ky_per_m: f64,
    pub re_m: f64,
    #[serde(default)]
    pub im_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Numerical response function for the configured atom and surface.
    #[default]
    Quadrature,
    /// Perfect reflector with the static polarizability, in closed form.
    ClosedForm,
}

/// Overrides of the condensate probe defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    pub omega_tr_rad_s: Option<f64>,
    pub a_scat_m: Option<f64>,
    pub mass_kg: Option<f64>,
    pub delta_n: Option<f64>,
    pub x0_m: Option<f64>,
    pub rho0_m: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_subdivisions")]
    pub max_subdivisions: usize,
}

fn default_rel_tol() -> f64 {
    1e-6
}

fn default_subdivisions() -> usize {
    200
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: default_rel_tol(),
            max_subdivisions: default_subdivisions(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// CSV destination; stdout when absent.
    pub csv: Option<PathBuf>,
    /// JSON report destination (`corrugation`); stderr when absent.
    pub report: Option<PathBuf>,
}

/// Command-line values that replace config keys.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub atom: Option<String>,
    pub surface: Option<String>,
    pub z: Option<String>,
    pub wavelength: Option<String>,
    pub k: Option<String>,
    pub kz: Option<String>,
    pub rel_tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = Self::from_json(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(a) = &o.atom {
            self.atom = Some(AtomSpec::preset(a)?);
        }
        if let Some(s) = &o.surface {
            self.surface = Some(SurfaceSpec::preset(s)?);
        }
        if let Some(z) = &o.z {
            self.z_a_m = Some(Grid::parse(z)?);
        }
        // the wavenumber axis is given in exactly one form; a flag replaces
        // whatever form the config used
        if let Some(w) = &o.wavelength {
            self.set_k_axis(KAxis::Wavelength(Grid::parse(w)?));
        }
        if let Some(k) = &o.k {
            self.set_k_axis(KAxis::K(Grid::parse(k)?));
        }
        if let Some(kz) = &o.kz {
            self.set_k_axis(KAxis::Kz(Grid::parse(kz)?));
        }
        if let Some(r) = o.rel_tol {
            self.quadrature.rel_tol = r;
        }
        if let Some(p) = &o.out {
            self.output.csv = Some(p.clone());
        }
        if let Some(p) = &o.report {
            self.output.report = Some(p.clone());
        }
        Ok(())
    }

    fn set_k_axis(&mut self, axis: KAxis) {
        self.wavelength_m = None;
        self.k_per_m = None;
        self.kz = None;
        match axis {
            KAxis::Wavelength(g) => self.wavelength_m = Some(g),
            KAxis::K(g) => self.k_per_m = Some(g),
            KAxis::Kz(g) => self.kz = Some(g),
        }
    }

    pub fn k_axis(&self) -> Result<KAxis> {
        match (&self.wavelength_m, &self.k_per_m, &self.kz) {
            (Some(g), None, None) => Ok(KAxis::Wavelength(g.clone())),
            (None, Some(g), None) => Ok(KAxis::K(g.clone())),
            (None, None, Some(g)) => Ok(KAxis::Kz(g.clone())),
            (None, None, None) => Err(CliError::validation("one of wavelength_m, k_per_m or kz is required")),
            _ => Err(CliError::validation("give only one of wavelength_m, k_per_m and kz")),
        }
    }

    pub fn z_grid(&self) -> Result<Vec<f64>> {
        self.z_a_m
            .as_ref()
            .ok_or_else(|| CliError::validation("z_a_m is required"))?
            .positive("z_a_m")
    }

    pub fn settings(&self) -> Result<QuadratureSettings> {
        let s = QuadratureSettings {
            rel_tol: self.quadrature.rel_tol,
            max_subdivisions: self.quadrature.max_subdivisions,
            ..Default::default()
        };
        s.validate()?;
        Ok(s)
    }

    fn resolve_path(&self, p: &Path) -> PathBuf {
        match &self.base_dir {
            Some(base) if p.is_relative() => base.join(p),
            _ => p.to_path_buf(),
        }
    }

    pub fn atom(&self) -> Result<(PolarizabilityModel, String)> {
        let spec = self.atom.as_ref().ok_or_else(|| CliError::validation("an atom model is required"))?;
        let model = spec.build(self)?;
        model.validate()?;
        Ok((model, spec.label()))
    }

    pub fn surface(&self) -> Result<(PermittivityModel, String)> {
        let spec = self
            .surface
            .as_ref()
            .ok_or_else(|| CliError::validation("a surface model is required"))?;
        let model = spec.build(self)?;
        model.validate()?;
        Ok((model, spec.label()))
    }

    pub fn probe(&self) -> Result<BecProbeConfig> {
        let mut p = BecProbeConfig::rb87_default();
        if let Some(s) = self.probe {
            p.omega_tr = s.omega_tr_rad_s.unwrap_or(p.omega_tr);
            p.a_scat = s.a_scat_m.unwrap_or(p.a_scat);
            p.mass = s.mass_kg.unwrap_or(p.mass);
            p.delta_n = s.delta_n.unwrap_or(p.delta_n);
            p.x0 = s.x0_m.unwrap_or(p.x0);
            p.rho0 = s.rho0_m.unwrap_or(p.rho0);
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KAxis {
    Wavelength(Grid),
    K(Grid),
    Kz(Grid),
}

impl KAxis {
    /// Wavenumbers for separation `z`. Zero is allowed on the `k` and `kz`
    /// axes and stands for the plane force.
    pub fn wavenumbers(&self, z: f64) -> Result<Vec<f64>> {
        let non_negative = |g: &Grid, what: &str| -> Result<Vec<f64>> {
            let v = g.values();
            if v.is_empty() {
                return Err(CliError::validation(format!("{what}: grid is empty")));
            }
            if let Some(x) = v.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
                return Err(CliError::validation(format!("{what}: grid value {x} is negative")));
            }
            Ok(v)
        };
        match self {
            KAxis::Wavelength(g) => Ok(g
                .positive("wavelength_m")?
                .into_iter()
                .map(|l| 2.0 * std::f64::consts::PI / l)
                .collect()),
            KAxis::K(g) => non_negative(g, "k_per_m"),
            KAxis::Kz(g) => Ok(non_negative(g, "kz")?.into_iter().map(|kz| kz / z).collect()),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            KAxis::Wavelength(g) | KAxis::K(g) | KAxis::Kz(g) => g.values().len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl AtomSpec {
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "rb87" => Ok(AtomSpec::Rb87 {}),
            "rb87-static" | "rb87_static" => Ok(AtomSpec::Rb87Static {}),
            _ => Err(CliError::validation(format!(
                "unknown atom '{name}' (presets: rb87, rb87-static; other models via --config)"
            ))),
        }
    }

    fn build(&self, cfg: &RunConfig) -> Result<PolarizabilityModel> {
        let positive = |v: f64, what: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::validation(format!("{what} must be positive")))
            }
        };
        Ok(match self {
            AtomSpec::Rb87 {} => PolarizabilityModel::rb87(),
            AtomSpec::Rb87Static {} => PolarizabilityModel::rb87_static(),
            AtomSpec::Static { alpha0_volume_m3 } => PolarizabilityModel::Static {
                alpha0: alpha_si_from_volume(positive(*alpha0_volume_m3, "alpha0_volume_m3")?),
            },
            AtomSpec::SingleOscillator {
                alpha0_volume_m3,
                transition_wavelength_m,
            } => PolarizabilityModel::SingleOscillator {
                alpha0: alpha_si_from_volume(positive(*alpha0_volume_m3, "alpha0_volume_m3")?),
                omega_a: omega_from_wavelength(positive(*transition_wavelength_m, "transition_wavelength_m")?),
            },
            AtomSpec::Multilevel { transitions } => {
                if transitions.is_empty() {
                    return Err(CliError::validation("multilevel atom needs at least one transition"));
                }
                let t = transitions
                    .iter()
                    .map(|t| {
                        Ok(Transition::from_static(
                            alpha_si_from_volume(positive(t.alpha0_volume_m3, "alpha0_volume_m3")?),
                            omega_from_wavelength(positive(t.wavelength_m, "wavelength_m")?),
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                PolarizabilityModel::Multilevel(t)
            }
            AtomSpec::Tabulated { path } => {
                let path = cfg.resolve_path(path);
                let t = files::read_table(&path, &["xi_rad_s", "alpha_si"])?;
                PolarizabilityModel::Tabulated(TabulatedPolarizability::new(&t.rows)?)
            }
        })
    }

    pub fn label(&self) -> String {
        match self {
            AtomSpec::Rb87 {} => "rb87 single oscillator (alpha0/4pi eps0 = 47.3e-30 m^3, 780 nm)".into(),
            AtomSpec::Rb87Static {} => "rb87 static (alpha0/4pi eps0 = 47.3e-30 m^3)".into(),
            AtomSpec::Static { alpha0_volume_m3 } => format!("static alpha0/4pi eps0 = {alpha0_volume_m3:e} m^3"),
            AtomSpec::SingleOscillator {
                alpha0_volume_m3,
                transition_wavelength_m,
            } => format!("single oscillator alpha0/4pi eps0 = {alpha0_volume_m3:e} m^3, {transition_wavelength_m:e} m"),
            AtomSpec::Multilevel { transitions } => format!("multilevel, {} transitions", transitions.len()),
            AtomSpec::Tabulated { path } => format!("tabulated {}", path.display()),
        }
    }
}

impl SurfaceSpec {
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "perfect" => Ok(SurfaceSpec::Perfect {}),
            "gold" => Ok(SurfaceSpec::Gold {}),
            "silicon" => Ok(SurfaceSpec::Silicon {}),
            _ => Err(CliError::validation(format!(
                "unknown surface '{name}' (presets: perfect, gold, silicon; other models via --config)"
            ))),
        }
    }

    fn build(&self, cfg: &RunConfig) -> Result<PermittivityModel> {
        Ok(match self {
            SurfaceSpec::Perfect {} => PermittivityModel::PerfectConductor,
            SurfaceSpec::Gold {} => PermittivityModel::gold(),
            SurfaceSpec::Silicon {} => PermittivityModel::silicon(),
            SurfaceSpec::Plasma { plasma_wavelength_m } => {
                if !(*plasma_wavelength_m > 0.0 && plasma_wavelength_m.is_finite()) {
                    return Err(CliError::validation("plasma_wavelength_m must be positive"));
                }
                PermittivityModel::Plasma {
                    omega_p: omega_from_wavelength(*plasma_wavelength_m),
                }
            }
            SurfaceSpec::DrudeLorentz {
                omega_dl_rad_s,
                eps_static,
            } => PermittivityModel::DrudeLorentz {
                omega_dl: *omega_dl_rad_s,
                eps_static: *eps_static,
            },
            SurfaceSpec::Tabulated { path } => {
                let path = cfg.resolve_path(path);
                let t = files::read_table(&path, &["xi_rad_s", "eps_i_xi"])?;
                PermittivityModel::Tabulated(TabulatedPermittivity::with_default_extrapolation(&t.rows)?)
            }
        })
    }

    pub fn label(&self) -> String {
        match self {
            SurfaceSpec::Perfect {} => "perfect conductor".into(),
            SurfaceSpec::Gold {} => "gold, plasma model (lambda_P = 136 nm)".into(),
            SurfaceSpec::Silicon {} => "silicon, Drude-Lorentz (eps(0) = 11.87, omega_DL = 6.6e15 rad/s)".into(),
            SurfaceSpec::Plasma { plasma_wavelength_m } => format!("plasma, lambda_P = {plasma_wavelength_m:e} m"),
            SurfaceSpec::DrudeLorentz {
                omega_dl_rad_s,
                eps_static,
            } => format!("Drude-Lorentz, eps(0) = {eps_static}, omega_DL = {omega_dl_rad_s:e} rad/s"),
            SurfaceSpec::Tabulated { path } => format!("tabulated {}", path.display()),
        }
    }
}

impl CorrugationSpec {
    pub fn profile(&self) -> Result<SurfaceProfile> {
        let p = match (self.h0_m, self.wavelength_m, &self.modes) {
            (Some(h0), Some(wavelength), None) => {
                if !(wavelength > 0.0 && wavelength.is_finite()) {
                    return Err(CliError::validation("corrugation wavelength_m must be positive"));
                }
                SurfaceProfile::Sinusoid {
                    h0,
                    k_c: 2.0 * std::f64::consts::PI / wavelength,
                    phase: self.phase_rad,
                    direction: Vec2::new(1.0, 0.0),
                }
            }
            (None, None, Some(modes)) if !modes.is_empty() => SurfaceProfile::Spectrum(
                modes
                    .iter()
                    .map(|m| Mode {
                        k: Vec2::new(m.kx_per_m, m.ky_per_m),
                        amplitude: Complex64::new(m.re_m, m.im_m),
                    })
                    .collect(),
            ),
            _ => {
                return Err(CliError::validation(
                    "corrugation needs either h0_m and wavelength_m, or a non-empty modes list",
                ))
            }
        };
        p.validate()?;
        Ok(p)
    }

    pub fn is_sinusoid(&self) -> bool {
        self.modes.is_none()
    }

    pub fn x_grid(&self) -> Result<Vec<f64>> {
        let g = match (&self.x_m, self.wavelength_m) {
            (Some(g), _) => g.clone(),
            (None, Some(l)) => Grid::Range(Range {
                from: 0.0,
                to: l,
                n: 9,
                spacing: Spacing::Lin,
            }),
            (None, None) => return Err(CliError::validation("corrugation x_m is required for a mode list")),
        };
        let v = g.values();
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
            return Err(CliError::validation("corrugation x_m must be a non-empty list of finite values"));
        }
        Ok(v)
    }
}
