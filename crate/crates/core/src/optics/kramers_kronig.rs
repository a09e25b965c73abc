//! Imaginary-axis permittivity from real-axis absorption data:
//! `ε(iξ) = 1 + (2/π) ∫₀^∞ ω Im ε(ω) / (ω² + ξ²) dω`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::TabulatedPermittivity;
use crate::quadrature::engine::{integrate, Tolerance};
use crate::{Error, Result};

const KK_REL_TOL: f64 = 1e-8;
const KK_MAX_PANELS: usize = 200;

/// Drude continuation `Im ε(ω) = ω_P² γ / (ω (ω² + γ²))` below the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeTail {
    pub omega_p: f64,
    pub gamma: f64,
}

/// Measured `Im ε(ω)` on the real axis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RealAxisOpticalData {
    samples: Vec<(f64, f64)>,
    drude: Option<DrudeTail>,
}

impl RealAxisOpticalData {
    /// `samples` are `(ω, Im ε)` with ω strictly increasing and `Im ε ≥ 0`.
    pub fn new(samples: Vec<(f64, f64)>, drude: Option<DrudeTail>) -> Result<Self> {
        if samples.iter().any(|&(w, e)| !(w > 0.0) || !w.is_finite() || !(e >= 0.0) || !e.is_finite()) {
            return Err(Error::Invalid("optical data needs omega > 0 and eps_imag >= 0"));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::Invalid("optical data frequencies must be strictly increasing"));
        }
        if let Some(d) = drude {
            if !(d.omega_p > 0.0 && d.gamma > 0.0) {
                return Err(Error::Invalid("Drude parameters must be positive"));
            }
        }
        let n = samples.len();
        if n >= 2 {
            let last = samples[n - 1].1;
            let back = samples[n - 1 - (n - 1).min(5)].1;
            if last > 0.0 && last >= back {
                return Err(Error::Invalid(
                    "eps_imag does not decay at the high-frequency end; the dispersion tail diverges",
                ));
            }
        }
        Ok(RealAxisOpticalData { samples, drude })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn drude(&self) -> Option<DrudeTail> {
        self.drude
    }
}

fn tol() -> Tolerance {
    Tolerance {
        rel: KK_REL_TOL,
        abs: 0.0,
        l1_rel: KK_REL_TOL,
        max_panels: KK_MAX_PANELS,
    }
}

/// `(2/π) ∫ ω Im ε / (ω² + ξ²)` over the Drude region `(0, upper)`.
fn drude_part(d: DrudeTail, xi: f64, upper: Option<f64>) -> f64 {
    let num = d.omega_p * d.omega_p * d.gamma;
    let f = |s: f64| {
        let w = libm::exp(s);
        w * num / ((w * w + d.gamma * d.gamma) * (w * w + xi * xi))
    };
    let lo_scale = d.gamma.min(xi);
    let hi = match upper {
        Some(u) => libm::log(u),
        None => libm::log(d.gamma.max(xi)) + 40.0,
    };
    let lo = libm::log(lo_scale.min(libm::exp(hi))) - 40.0;
    let breaks = [libm::log(d.gamma), libm::log(xi)];
    2.0 / PI * integrate(f, lo, hi, &breaks, tol()).value
}

/// `ε(iξ)` for a single frequency. `ξ = 0` with a Drude continuation is
/// reported as [`Error::Divergent`].
pub fn kramers_kronig_point(data: &RealAxisOpticalData, xi: f64) -> Result<f64> {
    if !(xi >= 0.0) || !xi.is_finite() {
        return Err(Error::Invalid("imaginary frequency must be finite and non-negative"));
    }
    let s = &data.samples;
    if let Some(d) = data.drude {
        if xi == 0.0 {
            return Err(Error::Divergent("static permittivity of a Drude metal is infinite"));
        }
        if s.is_empty() {
            return Ok(1.0 + drude_part(d, xi, None));
        }
    }
    let mut total = 0.0;
    if let (Some(d), Some(first)) = (data.drude, s.first()) {
        total += drude_part(d, xi, Some(first.0));
    }
    let lxi = if xi > 0.0 { libm::log(xi) } else { f64::NEG_INFINITY };
    for w in s.windows(2) {
        let ((w0, e0), (w1, e1)) = (w[0], w[1]);
        if e0 == 0.0 && e1 == 0.0 {
            continue;
        }
        let slope = (e1 - e0) / (w1 - w0);
        let f = |t: f64| {
            let om = libm::exp(t);
            let im = e0 + slope * (om - w0);
            om * om * im / (om * om + xi * xi)
        };
        let (a, b) = (libm::log(w0), libm::log(w1));
        total += 2.0 / PI * integrate(f, a, b, &[lxi], tol()).value;
    }
    if let Some(&(wm, a)) = s.last() {
        if a > 0.0 {
            // Im ε ∝ ω⁻³ above the data, integrated in t = ω_max / ω
            let f = |t: f64| a * wm * wm * t * t / (wm * wm + xi * xi * t * t);
            total += 2.0 / PI * integrate(f, 0.0, 1.0, &[], tol()).value;
        }
    }
    Ok(1.0 + total)
}

/// `(ξ, ε(iξ))` on `grid`.
pub fn kramers_kronig_samples(data: &RealAxisOpticalData, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    grid.iter().map(|&xi| Ok((xi, kramers_kronig_point(data, xi)?))).collect()
}

/// Tabulated model from the dispersion transform on `grid` (strictly
/// increasing, `ξ ≥ 0`).
pub fn kramers_kronig_to_imaginary_axis(
    data: &RealAxisOpticalData,
    grid: &[f64],
) -> Result<TabulatedPermittivity> {
    if grid.is_empty() {
        return Err(Error::Invalid("empty frequency grid"));
    }
    let samples = kramers_kronig_samples(data, grid)?;
    TabulatedPermittivity::with_default_extrapolation(&samples)
}
