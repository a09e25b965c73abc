//! Quick end-to-end checks against closed forms, for a fresh build.

use atomsurf_core::atomics::PolarizabilityModel;
use atomsurf_core::closedforms::{bessel_k0, bessel_k1, f_cp0, g_cp_perf, rho_cp_perf};
use atomsurf_core::constants::EV;
use atomsurf_core::optics::PermittivityModel;
use atomsurf_core::profile::{first_order_potential, CasimirPolderSource, QuadratureSource, SurfaceProfile};
use atomsurf_core::quadrature::{plane_force, response_g, QuadratureSettings, ResponseQuery};
use atomsurf_core::Vec2;

pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub target: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        (self.value / self.target - 1.0).abs() < self.tol
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {:.9e} vs {:.9e} (rel. tol {:e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.target,
            self.tol
        )
    }
}

fn failed(name: &'static str) -> Check {
    Check {
        name,
        value: f64::NAN,
        target: 1.0,
        tol: 0.0,
    }
}

pub fn run() -> Vec<Check> {
    let atom = PolarizabilityModel::rb87_static();
    let alpha0 = atom.static_value().unwrap_or(f64::NAN);
    let pc = PermittivityModel::PerfectConductor;
    let settings = QuadratureSettings::default();
    let z = 2e-6;
    let mut out = vec![
        Check {
            name: "bessel K0(1)",
            value: bessel_k0(1.0),
            target: 0.421_024_438_240_708_3,
            tol: 1e-12,
        },
        Check {
            name: "bessel K1(1)",
            value: bessel_k1(1.0),
            target: 0.601_907_230_197_234_6,
            tol: 1e-12,
        },
        Check {
            name: "rho_cp(1.2566)",
            value: rho_cp_perf(1.2566),
            target: 0.814_620,
            tol: 2e-6,
        },
    ];
    out.push(match plane_force(z, &atom, &pc, &settings) {
        Ok(f) => Check {
            name: "perfect-reflector plane force, 2 um",
            value: f.value,
            target: f_cp0(z, alpha0),
            tol: 1e-5,
        },
        Err(_) => failed("perfect-reflector plane force, 2 um"),
    });
    let k = 1.0 / z;
    out.push(match response_g(&ResponseQuery::new(k, z, &atom, &pc).with_settings(settings)) {
        Ok(g) => Check {
            name: "perfect-reflector response, kz = 1",
            value: g.estimate.value,
            target: g_cp_perf(k, z, alpha0),
            tol: 1e-4,
        },
        Err(_) => failed("perfect-reflector response, kz = 1"),
    });
    let profile = SurfaceProfile::sinusoid(100e-9, 10e-6);
    let closed = first_order_potential(&profile, Vec2::new(0.0, 0.0), z, &CasimirPolderSource { alpha0 });
    let quad = first_order_potential(
        &profile,
        Vec2::new(0.0, 0.0),
        z,
        &QuadratureSource {
            atom: &atom,
            surface: &pc,
            settings,
        },
    );
    out.push(match closed {
        Ok(u) => Check {
            name: "headline amplitude, closed form (eV)",
            value: u.value.value.abs() / EV,
            target: 1.13e-14,
            tol: 1e-2,
        },
        Err(_) => failed("headline amplitude, closed form (eV)"),
    });
    out.push(match quad {
        Ok(u) => Check {
            name: "headline amplitude, quadrature (eV)",
            value: u.value.value.abs() / EV,
            target: 1.13e-14,
            tol: 1e-2,
        },
        Err(_) => failed("headline amplitude, quadrature (eV)"),
    });
    out
}
