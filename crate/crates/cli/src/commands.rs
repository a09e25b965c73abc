//! Subcommand bodies. Each returns a [`Table`] (and, for `corrugation`, a
//! JSON report); writing is left to the caller.

use std::path::Path;
use std::sync::Mutex;

use atomsurf_core::atomics::PolarizabilityModel;
use atomsurf_core::closedforms::{f_cp0, rho_cp_perf};
use atomsurf_core::constants::EV;
use atomsurf_core::optics::{kramers_kronig_samples, DrudeTail, PermittivityModel, RealAxisOpticalData};
use atomsurf_core::profile::{
    detectability_report, first_order_potential, lateral_force, CasimirPolderSource, ProximitySource,
    QuadratureSource, ResponseSource,
};
use atomsurf_core::quadrature::{plane_force, plane_potential, ratio, response_g, Estimate, QuadratureSettings, ResponseQuery};
use atomsurf_core::Vec2;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Method, RunConfig};
use crate::error::{CliError, Result};
use crate::files;
use crate::grid::{Grid, Range, Spacing};
use crate::output::{num, Table};

/// Atom, surface and quadrature settings resolved from a config.
pub struct Context {
    pub atom: PolarizabilityModel,
    pub surface: PermittivityModel,
    pub settings: QuadratureSettings,
    pub alpha0: f64,
    atom_label: String,
    surface_label: String,
}

impl Context {
    pub fn new(cfg: &RunConfig) -> Result<Self> {
        let (atom, atom_label) = cfg.atom()?;
        let (surface, surface_label) = cfg.surface()?;
        let settings = cfg.settings()?;
        let alpha0 = atom.static_value()?;
        if !(alpha0 > 0.0) {
            return Err(CliError::validation("the atom needs a positive static polarizability"));
        }
        Ok(Context {
            atom,
            surface,
            settings,
            alpha0,
            atom_label,
            surface_label,
        })
    }

    fn table(&self, command: &str, columns: &[&'static str]) -> Table {
        let mut t = Table::new(command, columns);
        t.note("atom", &self.atom_label);
        t.note("alpha0_si", format!("{:e} C m^2/V", self.alpha0));
        t.note("surface", &self.surface_label);
        t.note("rel_tol", format!("{:e}", self.settings.rel_tol));
        t.note("max_subdivisions", self.settings.max_subdivisions);
        t
    }

    fn source(&self) -> QuadratureSource<'_> {
        QuadratureSource {
            atom: &self.atom,
            surface: &self.surface,
            settings: self.settings,
        }
    }

    fn plane_force(&self, z: f64) -> Result<Estimate> {
        Ok(plane_force(z, &self.atom, &self.surface, &self.settings)?)
    }

    /// `g(k, z)`; `k = 0` is the plane force.
    fn response(&self, k: f64, z: f64) -> Result<(Estimate, bool)> {
        if k == 0.0 {
            return Ok((self.plane_force(z)?, false));
        }
        let q = ResponseQuery::new(k, z, &self.atom, &self.surface).with_settings(self.settings);
        let r = response_g(&q)?;
        Ok((r.estimate, r.negligible))
    }
}

/// Evaluates `f` on every item on the current rayon pool and returns the
/// results in item order; the first failing item (in order) wins.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Result<R> + Sync + Send) -> Result<Vec<R>> {
    let out: Vec<Result<R>> = items.par_iter().map(f).collect();
    out.into_iter().collect()
}

pub const PLANE_COLUMNS: [&str; 7] = ["z_A_m", "U0_J", "U0_err_J", "F0_N", "F0_err_N", "eta_F", "eta_F_err"];

pub fn cmd_plane(cfg: &RunConfig) -> Result<Table> {
    let ctx = Context::new(cfg)?;
    let zs = cfg.z_grid()?;
    let rows = par_map(&zs, |&z| {
        let u = plane_potential(z, &ctx.atom, &ctx.surface, &ctx.settings)?;
        let f = ctx.plane_force(z)?;
        let eta = f.scale(1.0 / f_cp0(z, ctx.alpha0));
        Ok(vec![num(z), num(u.value), num(u.error), num(f.value), num(f.error), num(eta.value), num(eta.error)])
    })?;
    let mut t = ctx.table("plane", &PLANE_COLUMNS);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

pub const RESPONSE_COLUMNS: [&str; 10] = [
    "z_A_m",
    "k_per_m",
    "kz",
    "g_N",
    "g_err_N",
    "g_over_Fcp",
    "g_over_Fcp_err",
    "rho",
    "rho_err",
    "negligible",
];

/// Rows are grouped by the wavenumber axis, separations varying fastest.
pub fn cmd_response(cfg: &RunConfig) -> Result<Table> {
    let ctx = Context::new(cfg)?;
    let zs = cfg.z_grid()?;
    let axis = cfg.k_axis()?;
    let f0 = par_map(&zs, |&z| ctx.plane_force(z))?;
    let mut points = Vec::new();
    for i in 0..axis.len() {
        for (j, &z) in zs.iter().enumerate() {
            points.push((axis.wavenumbers(z)?[i], j));
        }
    }
    let rows = par_map(&points, |&(k, j)| {
        let z = zs[j];
        let (g, negligible) = ctx.response(k, z)?;
        let over_cp = g.scale(1.0 / f_cp0(z, ctx.alpha0));
        let rho = ratio(g, f0[j]);
        Ok(vec![
            num(z),
            num(k),
            num(k * z),
            num(g.value),
            num(g.error),
            num(over_cp.value),
            num(over_cp.error),
            num(rho.value),
            num(rho.error),
            u8::from(negligible).to_string(),
        ])
    })?;
    let mut t = ctx.table("response", &RESPONSE_COLUMNS);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

pub const RHO_COLUMNS: [&str; 8] = ["z_A_m", "kz", "k_per_m", "g_N", "g_err_N", "rho", "rho_err", "rho_cp"];

/// Rows are grouped by separation, `kz` varying fastest.
pub fn cmd_rho(cfg: &RunConfig) -> Result<Table> {
    let ctx = Context::new(cfg)?;
    let zs = cfg.z_grid()?;
    let axis = cfg.k_axis()?;
    let f0 = par_map(&zs, |&z| ctx.plane_force(z))?;
    let mut points = Vec::new();
    for (j, &z) in zs.iter().enumerate() {
        for k in axis.wavenumbers(z)? {
            points.push((k, j));
        }
    }
    let rows = par_map(&points, |&(k, j)| {
        let z = zs[j];
        let (g, _) = ctx.response(k, z)?;
        let rho = ratio(g, f0[j]);
        Ok(vec![
            num(z),
            num(k * z),
            num(k),
            num(g.value),
            num(g.error),
            num(rho.value),
            num(rho.error),
            num(rho_cp_perf(k * z)),
        ])
    })?;
    let mut t = ctx.table("rho", &RHO_COLUMNS);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

pub const ETA_COLUMNS: [&str; 7] = ["z_A_m", "F0_N", "F0_err_N", "F_CP_N", "eta_F", "eta_F_err", "eta_F_over_z_per_m"];

pub fn cmd_eta(cfg: &RunConfig) -> Result<Table> {
    let ctx = Context::new(cfg)?;
    let zs = cfg.z_grid()?;
    let rows = par_map(&zs, |&z| {
        let f = ctx.plane_force(z)?;
        let fcp = f_cp0(z, ctx.alpha0);
        let eta = f.scale(1.0 / fcp);
        Ok(vec![
            num(z),
            num(f.value),
            num(f.error),
            num(fcp),
            num(eta.value),
            num(eta.error),
            num(eta.value / z),
        ])
    })?;
    let mut t = ctx.table("eta", &ETA_COLUMNS);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

/// Memoizes `g` by `(|k|, z)` across all sample positions of one run.
struct Memo<S> {
    inner: S,
    entries: Mutex<Vec<((u64, u64), Estimate)>>,
}

impl<S: ResponseSource> Memo<S> {
    fn new(inner: S) -> Self {
        Memo {
            inner,
            entries: Mutex::new(Vec::new()),
        }
    }
}

impl<S: ResponseSource> ResponseSource for Memo<S> {
    fn response(&self, k: f64, z_a: f64) -> atomsurf_core::Result<Estimate> {
        let key = (k.to_bits(), z_a.to_bits());
        if let Some(&(_, e)) = self.entries.lock().expect("cache lock").iter().find(|(kk, _)| *kk == key) {
            return Ok(e);
        }
        let e = self.inner.response(k, z_a)?;
        self.entries.lock().expect("cache lock").push((key, e));
        Ok(e)
    }
}

pub const CORRUGATION_COLUMNS: [&str; 9] = [
    "x_m",
    "h_m",
    "U1_J",
    "U1_err_J",
    "F_lateral_x_N",
    "F_lateral_y_N",
    "F_lateral_err_N",
    "U1_pfa_J",
    "U1_pfa_err_J",
];

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CorrugationReport {
    pub z_a_m: f64,
    pub method: Method,
    /// Peak first-order potential, J and eV.
    pub u1_amplitude_j: f64,
    pub u1_amplitude_err_j: f64,
    pub u1_amplitude_ev: f64,
    /// The same peak with `g(k)` replaced by the plane force.
    pub u1_pfa_amplitude_j: f64,
    /// Ratio of the two amplitudes; `ρ(k_c z_A)` for a sinusoid.
    pub rho: f64,
    pub delta_v_j: f64,
    pub delta_v_ev: f64,
    pub signal_to_sensitivity: f64,
    pub class: &'static str,
    pub validity_advisory: bool,
    pub probe: ProbeReport,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct ProbeReport {
    pub omega_tr_rad_s: f64,
    pub a_scat_m: f64,
    pub mass_kg: f64,
    pub delta_n: f64,
    pub x0_m: f64,
    pub rho0_m: f64,
    pub gamma_bec_j_m3: f64,
}

enum Source<'a> {
    Quadrature(QuadratureSource<'a>),
    ClosedForm(CasimirPolderSource),
}

impl ResponseSource for Source<'_> {
    fn response(&self, k: f64, z_a: f64) -> atomsurf_core::Result<Estimate> {
        match self {
            Source::Quadrature(s) => s.response(k, z_a),
            Source::ClosedForm(s) => s.response(k, z_a),
        }
    }
}

pub fn cmd_corrugation(cfg: &RunConfig) -> Result<(Table, CorrugationReport)> {
    let ctx = Context::new(cfg)?;
    let spec = cfg
        .corrugation
        .as_ref()
        .ok_or_else(|| CliError::validation("a corrugation object is required"))?;
    let zs = cfg.z_grid()?;
    let [z] = zs[..] else {
        return Err(CliError::validation("corrugation takes exactly one z_a_m value"));
    };
    let profile = spec.profile()?;
    let xs = spec.x_grid()?;
    let probe = cfg.probe()?;
    let source = Memo::new(match spec.method {
        Method::Quadrature => Source::Quadrature(ctx.source()),
        Method::ClosedForm => {
            if !ctx.surface.is_perfect_conductor() {
                return Err(CliError::validation("method closed_form needs the perfect surface"));
            }
            Source::ClosedForm(CasimirPolderSource { alpha0: ctx.alpha0 })
        }
    });
    let pfa = ProximitySource(&source);
    let mut t = ctx.table("corrugation", &CORRUGATION_COLUMNS);
    t.note("z_A_m", num(z));
    t.note(
        "method",
        match spec.method {
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form (perfect reflector, static alpha0)",
        },
    );
    for &x in &xs {
        let r = Vec2::new(x, 0.0);
        let u = first_order_potential(&profile, r, z, &source)?;
        let f = lateral_force(&profile, r, z, &source)?;
        let p = first_order_potential(&profile, r, z, &pfa)?;
        t.push(vec![
            num(x),
            num(profile.height(r)),
            num(u.value.value),
            num(u.value.error),
            num(f.force.x),
            num(f.force.y),
            num(f.error),
            num(p.value.value),
            num(p.value.error),
        ]);
    }
    let rep = detectability_report(&profile, z, &source, &probe)?;
    let rep_pfa = detectability_report(&profile, z, &pfa, &probe)?;
    let report = CorrugationReport {
        z_a_m: z,
        method: spec.method,
        u1_amplitude_j: rep.u1_amplitude.value,
        u1_amplitude_err_j: rep.u1_amplitude.error,
        u1_amplitude_ev: rep.u1_amplitude.value / EV,
        u1_pfa_amplitude_j: rep_pfa.u1_amplitude.value,
        rho: rep.u1_amplitude.value / rep_pfa.u1_amplitude.value,
        delta_v_j: rep.delta_v,
        delta_v_ev: rep.delta_v / EV,
        signal_to_sensitivity: rep.ratio,
        class: rep.class.as_str(),
        validity_advisory: rep.advisory,
        probe: ProbeReport {
            omega_tr_rad_s: probe.omega_tr,
            a_scat_m: probe.a_scat,
            mass_kg: probe.mass,
            delta_n: probe.delta_n,
            x0_m: probe.x0,
            rho0_m: probe.rho0,
            gamma_bec_j_m3: probe.gamma_bec(),
        },
    };
    Ok((t, report))
}

pub const INGEST_COLUMNS: [&str; 2] = ["xi_rad_s", "eps_i_xi"];

/// Default imaginary-frequency grid of `ingest-optical`, rad/s.
pub fn default_xi_grid() -> Grid {
    Grid::Range(Range {
        from: 1e11,
        to: 1e19,
        n: 81,
        spacing: Spacing::Log,
    })
}

pub fn cmd_ingest_optical(cfg: &RunConfig, input: &Path) -> Result<Table> {
    let data = files::read_table(input, &["omega_rad_s", "eps_imag"])?;
    let drude = match (data.meta_f64("drude_omega_p")?, data.meta_f64("drude_gamma")?) {
        (Some(omega_p), Some(gamma)) => Some(DrudeTail { omega_p, gamma }),
        (None, None) => None,
        _ => return Err(CliError::validation("drude_omega_p and drude_gamma must be given together")),
    };
    let optical = RealAxisOpticalData::new(data.rows.clone(), drude)?;
    let grid = cfg.xi_rad_s.clone().unwrap_or_else(default_xi_grid);
    let xi = grid.values();
    if xi.len() < 2 || xi.iter().any(|x| !(*x >= 0.0 && x.is_finite())) || xi.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::validation(
            "xi_rad_s needs at least two non-negative, strictly increasing values",
        ));
    }
    let chunks: Vec<&[f64]> = xi.chunks(1).collect();
    let values = par_map(&chunks, |c| Ok(kramers_kronig_samples(&optical, c)?))?;
    let mut t = Table::new("ingest-optical", &INGEST_COLUMNS);
    t.note("input", input.display());
    t.note("input_rows", data.rows.len());
    for (k, v) in &data.meta {
        t.note(&format!("input.{k}"), v);
    }
    for (x, e) in values.into_iter().flatten() {
        t.push(vec![num(x), num(e)]);
    }
    Ok(t)
}
