//! Acceptance criteria, one line each. Runs as a plain binary so every
//! criterion reports even when an earlier one fails; exits non-zero if any
//! fails.

mod support;

use std::f64::consts::PI;
use std::time::Instant;

use atomsurf::commands::{cmd_plane, cmd_response, cmd_rho};
use atomsurf_core::atomics::{PolarizabilityModel, Transition};
use atomsurf_core::closedforms::{
    bessel_k0, bessel_k1, g_cp_perf, g_vdw_drude_lorentz, g_vdw_perf, g_vdw_plasma, g_vdw_plasmon,
    rho_cp_perf, VdwAtomSpec,
};
use atomsurf_core::constants::{omega_from_wavelength, EV, RB_D2_WAVELENGTH, SILICON_EPS_STATIC, SILICON_OMEGA_DL};
use atomsurf_core::kernel::{a_premultiplied, specular_premultiplied, KernelPoint};
use atomsurf_core::optics::PermittivityModel;
use atomsurf_core::profile::{first_order_potential, CasimirPolderSource, Mode, QuadratureSource, SurfaceProfile};
use atomsurf_core::quadrature::{eta_f, plane_force, plane_potential, response_g, QuadratureSettings, ResponseQuery};
use atomsurf_core::Vec2;
use num_complex::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn settings(rel: f64) -> QuadratureSettings {
    QuadratureSettings::with_rel_tol(rel)
}

fn g(k: f64, z: f64, atom: &PolarizabilityModel, surface: &PermittivityModel, rel: f64) -> Result<f64, String> {
    response_g(&ResponseQuery::new(k, z, atom, surface).with_settings(settings(rel)))
        .map(|r| r.estimate.value)
        .map_err(|e| format!("k={k:e} z={z:e}: {e}"))
}

fn f0(z: f64, atom: &PolarizabilityModel, surface: &PermittivityModel, rel: f64) -> Result<f64, String> {
    plane_force(z, atom, surface, &settings(rel))
        .map(|e| e.value)
        .map_err(|e| format!("z={z:e}: {e}"))
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn materials() -> [(&'static str, PermittivityModel); 2] {
    [("gold", PermittivityModel::gold()), ("silicon", PermittivityModel::silicon())]
}

fn headline() -> Outcome {
    let t = Instant::now();
    let atom = PolarizabilityModel::rb87_static();
    let alpha0 = atom.static_value().map_err(|e| e.to_string())?;
    let surface = PermittivityModel::PerfectConductor;
    let profile = SurfaceProfile::sinusoid(100e-9, 10e-6);
    let z = 2e-6;
    let closed = first_order_potential(&profile, Vec2::ZERO, z, &CasimirPolderSource { alpha0 })
        .map_err(|e| e.to_string())?;
    let source = QuadratureSource {
        atom: &atom,
        surface: &surface,
        settings: settings(1e-6),
    };
    let quad = first_order_potential(&profile, Vec2::ZERO, z, &source).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    let (c, q) = (closed.value.value.abs() / EV, quad.value.value.abs() / EV);
    let target = 1.13e-14;
    verdict(
        rel_dev(c, target) < 0.01 && rel_dev(q, target) < 0.01 && secs < 10.0,
        format!("closed form {c:.4e} eV, quadrature {q:.4e} eV, target {target:e} eV, {secs:.2} s"),
    )
}

fn closed_form_equivalence() -> Outcome {
    let t = Instant::now();
    let atom = PolarizabilityModel::rb87_static();
    let alpha0 = atom.static_value().map_err(|e| e.to_string())?;
    let z = 2e-6;
    let mut worst: f64 = 0.0;
    for kz in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let k = kz / z;
        let q = g(k, z, &atom, &PermittivityModel::PerfectConductor, 1e-7)?;
        worst = worst.max(rel_dev(q, g_cp_perf(k, z, alpha0)));
    }
    let secs = t.elapsed().as_secs_f64();
    verdict(
        worst < 1e-4 && secs < 120.0,
        format!("worst relative deviation {worst:.2e} (bound 1e-4), {secs:.2} s"),
    )
}

fn proximity_force_theorem() -> Outcome {
    let atom = PolarizabilityModel::rb87();
    let mut worst: f64 = 0.0;
    for (_, m) in materials() {
        for z in [1e-7, 1e-6, 1e-5] {
            let r = g(1e-3 / z, z, &atom, &m, 1e-8)? / f0(z, &atom, &m, 1e-8)?;
            worst = worst.max((r - 1.0).abs());
        }
    }
    verdict(worst < 1e-3, format!("worst |g/F0 - 1| = {worst:.2e} (bound 1e-3)"))
}

/// `g` at an in-plane wavevector, read off a single-mode spectrum at `r = 0`.
fn g_at_wavevector(k: Vec2, z: f64, atom: &PolarizabilityModel, surface: &PermittivityModel, rel: f64) -> Result<f64, String> {
    let h = 1e-9;
    let profile = SurfaceProfile::Spectrum(vec![Mode {
        k,
        amplitude: Complex64::new(h, 0.0),
    }]);
    let source = QuadratureSource {
        atom,
        surface,
        settings: settings(rel),
    };
    first_order_potential(&profile, Vec2::ZERO, z, &source)
        .map(|u| u.value.value / h)
        .map_err(|e| e.to_string())
}

/// The symmetric difference uses modes at `±δ`. Since `g` depends on `|k|`
/// only, it vanishes by symmetry, so the slope is also estimated
/// one-sidedly to second order: `ρ'(0) ≈ (4ρ(δ) - ρ(2δ) - 3)/(2δ)`.
fn zero_slope() -> Outcome {
    let atom = PolarizabilityModel::rb87();
    let z = 1e-6;
    let dk = 0.05 / z;
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, m) in materials() {
        let f = f0(z, &atom, &m, 1e-9)?;
        let plus = g_at_wavevector(Vec2::new(dk, 0.0), z, &atom, &m, 1e-9)? / f;
        let minus = g_at_wavevector(Vec2::new(-dk, 0.0), z, &atom, &m, 1e-9)? / f;
        let r2 = g(2.0 * dk, z, &atom, &m, 1e-9)? / f;
        let symmetric = (plus - minus) / (2.0 * dk);
        let one_sided = (4.0 * plus - r2 - 3.0) / (2.0 * dk);
        let bound = 1e-3 * z;
        ok &= symmetric.abs() < bound && one_sided.abs() < bound;
        parts.push(format!("{name}: symmetric {:.1e} z, one-sided {:.2e} z", symmetric / z, one_sided / z));
    }
    verdict(ok, format!("{} (bound 1e-3 z)", parts.join("; ")))
}

fn rho_vs_casimir_polder() -> Outcome {
    let atom = PolarizabilityModel::rb87();
    let si = PermittivityModel::silicon();
    let kzs = [0.3, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
    let mut worst_far: (f64, f64, f64) = (0.0, 0.0, 0.0);
    for z in [1e-6, 1e-5] {
        let f = f0(z, &atom, &si, 1e-8)?;
        for kz in kzs {
            let d = rel_dev(g(kz / z, z, &atom, &si, 1e-8)? / f, rho_cp_perf(kz));
            if d > worst_far.0 {
                worst_far = (d, z, kz);
            }
        }
    }
    let z = 1e-7;
    let spec = VdwAtomSpec::from_model(&atom).map_err(|e| e.to_string())?;
    let vdw0 = g_vdw_drude_lorentz(0.0, z, &spec, SILICON_OMEGA_DL, SILICON_EPS_STATIC).map_err(|e| e.to_string())?;
    let f = f0(z, &atom, &si, 1e-8)?;
    let mut worst_near: f64 = 0.0;
    for kz in kzs {
        let k = kz / z;
        let want = g_vdw_drude_lorentz(k, z, &spec, SILICON_OMEGA_DL, SILICON_EPS_STATIC).map_err(|e| e.to_string())?
            / vdw0;
        worst_near = worst_near.max(rel_dev(g(k, z, &atom, &si, 1e-8)? / f, want));
    }
    verdict(
        worst_far.0 < 0.02 && worst_near < 0.10,
        format!(
            "1-10 um: worst |rho/rho_CP - 1| = {:.2}% at z = {:e} m, kz = {} (bound 2%); \
             100 nm vs van der Waals rho: {:.2}% (bound 10%)",
            100.0 * worst_far.0,
            worst_far.1,
            worst_far.2,
            100.0 * worst_near
        ),
    )
}

fn eta_asymptotics() -> Outcome {
    let atom = PolarizabilityModel::rb87();
    let eta = |z: f64, m: &PermittivityModel| {
        eta_f(z, &atom, m, &settings(1e-8)).map(|e| e.value).map_err(|e| e.to_string())
    };
    let si = PermittivityModel::silicon();
    let au = PermittivityModel::gold();
    let (eta_si, eta_au) = (eta(20e-6, &si)?, eta(20e-6, &au)?);
    let z = 20e-9;
    let slope_si = eta(z, &si)? / z * 1e-6;
    let slope_au = eta(z, &au)? / z * 1e-6;
    let (dev_si, dev_au) = (rel_dev(slope_si, 5.1), rel_dev(slope_au, 5.8));
    verdict(
        (0.62..=0.72).contains(&eta_si)
            && (0.93..=1.0).contains(&eta_au)
            && dev_si < 0.15
            && dev_au < 0.15,
        format!(
            "eta(20 um): silicon {eta_si:.4}, gold {eta_au:.5}; eta/z at 20 nm: \
             silicon {slope_si:.3} um^-1 ({:+.1}% of 5.1), gold {slope_au:.3} um^-1 ({:+.1}% of 5.8) (bound 15%)",
            100.0 * (slope_si / 5.1 - 1.0),
            100.0 * (slope_au / 5.8 - 1.0),
        ),
    )
}

/// Deviations along a ramp must shrink monotonically and end below `tol`.
fn ramp_converges(devs: &[f64], tol: f64) -> bool {
    devs.windows(2).all(|w| w[1] <= w[0]) && devs.last().is_some_and(|&d| d < tol)
}

fn van_der_waals_closed_form() -> Outcome {
    let w0 = omega_from_wavelength(RB_D2_WAVELENGTH);
    let a0 = PolarizabilityModel::rb87_static().static_value().map_err(|e| e.to_string())?;
    let atom = PolarizabilityModel::Multilevel(vec![Transition::from_static(a0, w0)]);
    let spec = VdwAtomSpec::from_model(&atom).map_err(|e| e.to_string())?;
    let gold = PermittivityModel::gold();
    let PermittivityModel::Plasma { omega_p } = gold else {
        return Err("gold is not a plasma model".into());
    };
    let z = 5e-9;
    let kzs = [0.5, 1.0, 2.0];
    let mut worst: f64 = 0.0;
    for kz in kzs {
        let k = kz / z;
        let want = g_vdw_plasma(k, z, &spec, omega_p).map_err(|e| e.to_string())?;
        worst = worst.max(rel_dev(g(k, z, &atom, &gold, 1e-7)?, want));
    }
    let mut perfect_end: f64 = 0.0;
    let mut plasmon_end: f64 = 0.0;
    let mut ramps_ok = true;
    for kz in kzs {
        let k = kz / z;
        let plasma = |x: f64| g_vdw_plasma(k, z, &spec, x * w0).map_err(|e| e.to_string());
        let perf = g_vdw_perf(k, z, &spec).map_err(|e| e.to_string())?;
        let up: Vec<f64> = (1..=6)
            .map(|n| plasma(10f64.powi(n)).map(|v| rel_dev(v, perf)))
            .collect::<Result<_, _>>()?;
        let down: Vec<f64> = (1..=6)
            .map(|n| {
                let x = 10f64.powi(-n);
                let cap = g_vdw_plasmon(k, z, &spec, x * w0).map_err(|e| e.to_string())?;
                plasma(x).map(|v| rel_dev(v, cap))
            })
            .collect::<Result<_, _>>()?;
        ramps_ok &= ramp_converges(&up, 2e-3) && ramp_converges(&down, 2e-3);
        perfect_end = perfect_end.max(*up.last().unwrap());
        plasmon_end = plasmon_end.max(*down.last().unwrap());
    }
    verdict(
        worst < 0.05 && ramps_ok,
        format!(
            "quadrature vs closed form: worst {:.2}% (bound 5%); ramp limits: perfect {perfect_end:.1e}, \
             plasmon {plasmon_end:.1e} (bound 2e-3, monotone: {ramps_ok})",
            100.0 * worst
        ),
    )
}

/// `K_ν(x) = ∫₀^∞ e^{-x cosh t} cosh(νt) dt` by the trapezoid rule.
fn bessel_oracle(nu: f64, x: f64) -> f64 {
    let h: f64 = 0.02;
    let mut sum = 0.5 * (-x).exp();
    let mut t = h;
    loop {
        let v = (-x * t.cosh()).exp() * (nu * t).cosh();
        sum += v;
        if v < 1e-30 * sum {
            break;
        }
        t += h;
    }
    sum * h
}

fn bessel_accuracy() -> Outcome {
    let (lo, hi) = (1e-6f64, 50.0f64);
    let mut worst: (f64, f64) = (0.0, 0.0);
    for i in 0..100 {
        let x = lo * (hi / lo).powf(i as f64 / 99.0);
        worst.0 = worst.0.max(rel_dev(bessel_k0(x), bessel_oracle(0.0, x)));
        worst.1 = worst.1.max(rel_dev(bessel_k1(x), bessel_oracle(1.0, x)));
    }
    verdict(
        worst.0 < 1e-10 && worst.1 < 1e-10,
        format!("worst relative error K0 {:.1e}, K1 {:.1e} (bound 1e-10)", worst.0, worst.1),
    )
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    let models = [PermittivityModel::gold(), PermittivityModel::silicon(), PermittivityModel::PerfectConductor];
    let z = 1e-6;
    let mut specular = true;
    let mut rotation = true;
    for m in &models {
        for i in 0..=12 {
            let xi = 10f64.powf(11.0 + 0.5 * i as f64);
            let medium = m.at(xi).map_err(|e| e.to_string())?;
            for j in 0..=12 {
                let k = 10f64.powf(3.0 + 0.5 * j as f64);
                let kv = Vec2::from_polar(k, 0.77);
                let f = medium.fresnel(k);
                let want = (-2.0 * f.kappa * z).exp() * specular_premultiplied(&f, k, xi);
                let got = a_premultiplied(&KernelPoint::new(medium, kv, kv), z);
                specular &= (got - want).abs() <= 1e-10 * want.abs() + 1e-300;

                let (a, b) = (Vec2::from_polar(k, 0.3 * j as f64), Vec2::from_polar(0.7 * k, 1.1 + 0.2 * i as f64));
                let v0 = a_premultiplied(&KernelPoint::new(medium, a, b), z);
                let v1 = a_premultiplied(&KernelPoint::new(medium, a.rotate(2.1), b.rotate(2.1)), z);
                rotation &= (v0 - v1).abs() <= 1e-9 * v0.abs() + 1e-300;
            }
        }
    }
    check("specular identity", specular);
    check("kernel rotation invariance", rotation);

    // a rotated corrugation seen from a rotated atom position
    let atom = PolarizabilityModel::rb87();
    let gold = PermittivityModel::gold();
    let source = QuadratureSource {
        atom: &atom,
        surface: &gold,
        settings: settings(1e-7),
    };
    let base = SurfaceProfile::Sinusoid {
        h0: 20e-9,
        k_c: 2.0 * PI / 3e-6,
        phase: 0.4,
        direction: Vec2::new(1.0, 0.0),
    };
    let turned = SurfaceProfile::Sinusoid {
        h0: 20e-9,
        k_c: 2.0 * PI / 3e-6,
        phase: 0.4,
        direction: Vec2::from_polar(1.0, 1.3),
    };
    let r = Vec2::new(0.4e-6, -0.2e-6);
    let u0 = first_order_potential(&base, r, z, &source).map_err(|e| e.to_string())?.value.value;
    let u1 = first_order_potential(&turned, r.rotate(1.3), z, &source).map_err(|e| e.to_string())?.value.value;
    check("profile rotation invariance", rel_dev(u1, u0) < 1e-9);

    let mut alpha_linear = true;
    for (_, m) in materials() {
        for kz in [0.5, 2.0] {
            let g1 = g(kz / z, z, &atom, &m, 1e-7)?;
            let g3 = g(kz / z, z, &atom.scaled(3.0), &m, 1e-7)?;
            alpha_linear &= rel_dev(g3, 3.0 * g1) < 1e-9;
        }
    }
    check("linearity in alpha", alpha_linear);

    let thin = SurfaceProfile::sinusoid(10e-9, 3e-6);
    let thick = SurfaceProfile::sinusoid(40e-9, 3e-6);
    let r = Vec2::new(0.3e-6, 0.0);
    let ut = first_order_potential(&thin, r, z, &source).map_err(|e| e.to_string())?.value.value;
    let uk = first_order_potential(&thick, r, z, &source).map_err(|e| e.to_string())?.value.value;
    check("linearity in h0", rel_dev(uk, 4.0 * ut) < 1e-12);

    let mut negative = true;
    for m in &models {
        for z in [1e-8, 1e-7, 1e-6, 1e-5] {
            let u = plane_potential(z, &atom, m, &settings(1e-6)).map_err(|e| e.to_string())?.value;
            negative &= u < 0.0 && f0(z, &atom, m, 1e-6)? < 0.0;
            for kz in [0.5, 2.0, 6.0] {
                negative &= g(kz / z, z, &atom, m, 1e-6)? < 0.0;
            }
        }
    }
    check("negativity of U0, F0 and g", negative);

    for name in support::FILES {
        let path = support::golden_dir().join(name);
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        check(&format!("golden {name}"), support::first_difference(&expected, &support::render(name)).is_none());
    }
    let run = |n: usize| {
        support::pool(n).install(|| {
            (
                cmd_plane(&support::cfg(support::PLANE)).map(|t| t.to_csv_string()).ok(),
                cmd_response(&support::cfg(support::RESPONSE)).map(|t| t.to_csv_string()).ok(),
                cmd_rho(&support::cfg(support::RHO)).map(|t| t.to_csv_string()).ok(),
            )
        })
    };
    check("thread-count independence", run(1) == run(4));

    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            "specular identity, rotation, linearity in alpha and h0, negativity, golden files, thread independence".into()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("headline corrugation potential", headline),
        ("closed-form/quadrature equivalence", closed_form_equivalence),
        ("proximity force theorem", proximity_force_theorem),
        ("zero slope of rho at k = 0", zero_slope),
        ("rho vs Casimir-Polder form (silicon)", rho_vs_casimir_polder),
        ("eta_F asymptotics", eta_asymptotics),
        ("van der Waals closed form", van_der_waals_closed_form),
        ("Bessel K0/K1 accuracy", bessel_accuracy),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} {tag}  {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
