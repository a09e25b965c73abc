//! Plane potential, plane force and the first-order response function by
//! nested adaptive quadrature on the imaginary frequency axis.
//!
//! Frequency and in-plane wavenumber are mapped to the unit interval with
//! `ξ = ξ₀ u/(1-u)` and `k' = s v/(1-v)`, `ξ₀ = c/z_A`, `s = 1/z_A` unless
//! overridden. The response function adds an inner angular integral over
//! `φ' ∈ [0, π]`; the integrand is even in `φ'`.

pub mod engine;

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::atomics::PolarizabilityModel;
use crate::closedforms::f_cp0;
use crate::constants::{C, EPS0, HBAR};
use crate::kernel::{a_premultiplied, specular_premultiplied, KernelPoint};
use crate::optics::{MediumAt, PermittivityModel};
use crate::{Error, Result};
pub use engine::{Estimate, Outcome, Tolerance};
use engine::{clenshaw_curtis, gauss_kronrod, ClenshawCurtis};

/// Beyond this `k z_A` the response function is below `e^{-40}` of the
/// plane force and is reported as zero.
pub const NEGLIGIBLE_KZ: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    /// Panel budget of each one-dimensional integration.
    pub max_subdivisions: usize,
    /// Frequency mapping scale, rad/s; `c/z_A` when `None`.
    pub xi_scale: Option<f64>,
    /// Wavenumber mapping scale, 1/m; `1/z_A` when `None`.
    pub k_scale: Option<f64>,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: 1e-6,
            max_subdivisions: 200,
            xi_scale: None,
            k_scale: None,
        }
    }
}

impl QuadratureSettings {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureSettings {
            rel_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 1e-12 && self.rel_tol < 1e-2) {
            return Err(Error::Invalid("rel_tol must lie in (1e-12, 1e-2)"));
        }
        if self.max_subdivisions < 2 {
            return Err(Error::Invalid("max_subdivisions must be at least 2"));
        }
        for s in [self.xi_scale, self.k_scale].into_iter().flatten() {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::Invalid("mapping scales must be positive"));
            }
        }
        Ok(())
    }

    fn scales(&self, z_a: f64) -> (f64, f64) {
        (self.xi_scale.unwrap_or(C / z_a), self.k_scale.unwrap_or(1.0 / z_a))
    }

    fn tol(&self, rel: f64) -> Tolerance {
        Tolerance::relative(rel, self.max_subdivisions)
    }
}

/// Input record of one response-function evaluation.
#[derive(Debug, Clone, Copy)]
pub struct ResponseQuery<'a> {
    /// Corrugation wavenumber, 1/m.
    pub k: f64,
    pub z_a: f64,
    pub atom: &'a PolarizabilityModel,
    pub surface: &'a PermittivityModel,
    pub settings: QuadratureSettings,
}

impl<'a> ResponseQuery<'a> {
    pub fn new(k: f64, z_a: f64, atom: &'a PolarizabilityModel, surface: &'a PermittivityModel) -> Self {
        ResponseQuery {
            k,
            z_a,
            atom,
            surface,
            settings: QuadratureSettings::default(),
        }
    }

    pub fn with_settings(mut self, settings: QuadratureSettings) -> Self {
        self.settings = settings;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.k >= 0.0 && self.k.is_finite()) {
            return Err(Error::Invalid("k must be finite and non-negative"));
        }
        validate_common(self.z_a, self.atom, self.surface, &self.settings)
    }
}

/// Response function value; `negligible` is set when `k z_A` exceeds
/// [`NEGLIGIBLE_KZ`] and the value was not computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Response {
    pub estimate: Estimate,
    pub negligible: bool,
}

fn validate_common(
    z_a: f64,
    atom: &PolarizabilityModel,
    surface: &PermittivityModel,
    settings: &QuadratureSettings,
) -> Result<()> {
    if !(z_a > 0.0 && z_a.is_finite()) {
        return Err(Error::Invalid("z_A must be positive"));
    }
    atom.validate()?;
    surface.validate()?;
    settings.validate()?;
    if !atom.covers_half_line() || !surface.covers_half_line() {
        return Err(Error::Invalid(
            "tabulated models need extrapolation rules covering all frequencies",
        ));
    }
    Ok(())
}

/// `ħ/(ε₀c²) · 1/(4π²)`, the common prefactor of the plane integrals.
const fn plane_prefactor() -> f64 {
    HBAR / (EPS0 * C * C) / (4.0 * PI * PI)
}

/// Unit-interval breakpoints for the variable `s t/(1-t)`.
fn mapped_breaks(scale: f64, points: impl IntoIterator<Item = f64>) -> Vec<f64> {
    points
        .into_iter()
        .filter(|p| *p > 0.0 && p.is_finite())
        .map(|p| p / (scale + p))
        .collect()
}

/// `(x, dx/dt)` for `x = s t/(1-t)`.
fn unmap(scale: f64, t: f64) -> (f64, f64) {
    let one = 1.0 - t;
    (scale * t / one, scale / (one * one))
}

fn finish(out: Outcome, requested: f64) -> Result<Estimate> {
    if out.converged && out.value.is_finite() {
        Ok(out.estimate())
    } else {
        Err(Error::NonConvergence {
            value: out.value,
            error: out.error,
            requested,
        })
    }
}

/// Material and atom state at one frequency.
struct Frequency {
    jac: f64,
    alpha: f64,
    medium: MediumAt,
}

/// Maps the outer variable to a frequency and returns `None` where the
/// integrand vanishes identically.
fn frequency(
    u: f64,
    xi0: f64,
    atom: &PolarizabilityModel,
    surface: &PermittivityModel,
) -> Result<Option<Frequency>> {
    let (xi, jac) = unmap(xi0, u);
    if !xi.is_finite() || !jac.is_finite() {
        return Ok(None);
    }
    let alpha = atom.alpha(xi)?;
    if alpha == 0.0 {
        return Ok(None);
    }
    Ok(Some(Frequency {
        jac,
        alpha,
        medium: surface.at(xi)?,
    }))
}

fn xi_breaks(
    xi0: f64,
    atom: &PolarizabilityModel,
    surface: &PermittivityModel,
) -> Vec<f64> {
    let mut pts = atom.characteristic_frequencies();
    pts.extend(surface.characteristic_frequencies());
    mapped_breaks(xi0, pts)
}

/// Shared 2D driver for the plane potential (`with_inverse_kappa`) and force.
fn plane_integral(
    z_a: f64,
    atom: &PolarizabilityModel,
    surface: &PermittivityModel,
    settings: &QuadratureSettings,
    with_inverse_kappa: bool,
) -> Result<Estimate> {
    validate_common(z_a, atom, surface, settings)?;
    let (xi0, ks) = settings.scales(z_a);
    let rel = settings.rel_tol;
    let breaks = xi_breaks(xi0, atom, surface);
    let mut failure = None;
    let outer = gauss_kronrod(
        |u| {
            if failure.is_some() {
                return (0.0, 0.0);
            }
            let f = match frequency(u, xi0, atom, surface) {
                Ok(Some(f)) => f,
                Ok(None) => return (0.0, 0.0),
                Err(e) => {
                    failure = Some(e);
                    return (0.0, 0.0);
                }
            };
            let xi = f.medium.xi;
            let inner = gauss_kronrod(
                |v| {
                    let (k, jk) = unmap(ks, v);
                    if !k.is_finite() || !jk.is_finite() {
                        return (0.0, 0.0);
                    }
                    let fr = f.medium.fresnel(k);
                    let decay = libm::exp(-2.0 * fr.kappa * z_a);
                    if decay == 0.0 {
                        return (0.0, 0.0);
                    }
                    let mut val = k * decay * specular_premultiplied(&fr, k, xi);
                    if with_inverse_kappa {
                        val /= 2.0 * fr.kappa;
                    }
                    (val * jk, 0.0)
                },
                0.0,
                1.0,
                &[],
                settings.tol(rel / 10.0),
            );
            let w = f.jac * f.alpha;
            (inner.value * w, inner.error * w.abs())
        },
        0.0,
        1.0,
        &breaks,
        settings.tol(rel),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    finish(outer, rel).map(|e| e.scale(plane_prefactor()))
}

/// `U⁽⁰⁾(z_A)`, J.
pub fn plane_potential(
    z_a: f64,
    atom: &PolarizabilityModel,
    surface: &PermittivityModel,
    settings: &QuadratureSettings,
) -> Result<Estimate> {
    plane_integral(z_a, atom, surface, settings, true)
}

/// `F⁽⁰⁾(z_A) = -∂U⁽⁰⁾/∂z_A`, N, from the analytically differentiated
/// integrand.
pub fn plane_force(
    z_a: f64,
    atom: &PolarizabilityModel,
    surface: &PermittivityModel,
    settings: &QuadratureSettings,
) -> Result<Estimate> {
    plane_integral(z_a, atom, surface, settings, false)
}

/// Response function `g(k, z_A)`, N (potential per unit corrugation height).
///
/// `g = (ħ/ε₀c²)(1/8π³) ∫dξ α(iξ) ∫k'dk' ∫dφ' ξ² a_{k',k'-k}`, with the
/// angular integral folded onto `[0, π]`.
pub fn response_g(query: &ResponseQuery) -> Result<Response> {
    query.validate()?;
    let ResponseQuery {
        k,
        z_a,
        atom,
        surface,
        settings,
    } = *query;
    if k * z_a > NEGLIGIBLE_KZ {
        return Ok(Response {
            estimate: Estimate::ZERO,
            negligible: true,
        });
    }
    let (xi0, ks) = settings.scales(z_a);
    let rel = settings.rel_tol;
    let cc = ClenshawCurtis::new();
    let k_breaks = mapped_breaks(ks, [k, 0.5 * k]);
    let xb = xi_breaks(xi0, atom, surface);
    let mut failure = None;
    let outer = gauss_kronrod(
        |u| {
            if failure.is_some() {
                return (0.0, 0.0);
            }
            let f = match frequency(u, xi0, atom, surface) {
                Ok(Some(f)) => f,
                Ok(None) => return (0.0, 0.0),
                Err(e) => {
                    failure = Some(e);
                    return (0.0, 0.0);
                }
            };
            let medium = f.medium;
            let middle = gauss_kronrod(
                |v| {
                    let (k1, jk) = unmap(ks, v);
                    if !k1.is_finite() || !jk.is_finite() || k1 == 0.0 {
                        return (0.0, 0.0);
                    }
                    let f1 = medium.fresnel(k1);
                    // the angular integrand is bounded by this envelope
                    if libm::exp(-(f1.kappa + (k1 - k).abs()) * z_a) == 0.0 {
                        return (0.0, 0.0);
                    }
                    let inner = clenshaw_curtis(
                        &cc,
                        |phi| {
                            let (s, c) = libm::sincos(phi);
                            let kx = k1 * c - k;
                            let ky = k1 * s;
                            let k2 = libm::hypot(kx, ky);
                            let (cos, sin) = if k2 > 0.0 {
                                ((k1 * k1 - k * k1 * c) / (k1 * k2), -k * s / k2)
                            } else {
                                (1.0, 0.0)
                            };
                            let p = KernelPoint::from_parts(medium, k1, f1, k2, medium.fresnel(k2), cos, sin);
                            (a_premultiplied(&p, z_a), 0.0)
                        },
                        0.0,
                        PI,
                        settings.tol(rel / 30.0),
                    );
                    let w = k1 * jk;
                    (inner.value * w, inner.error * w)
                },
                0.0,
                1.0,
                &k_breaks,
                settings.tol(rel / 10.0),
            );
            let w = f.jac * f.alpha;
            (middle.value * w, middle.error * w.abs())
        },
        0.0,
        1.0,
        &xb,
        settings.tol(rel),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    // 2 (half-range fold) / 8π³ = (1/4π²)(1/π)
    let estimate = finish(outer, rel)?.scale(plane_prefactor() / PI);
    Ok(Response {
        estimate,
        negligible: false,
    })
}

/// Ratio of two estimates with first-order error propagation.
pub fn ratio(num: Estimate, den: Estimate) -> Estimate {
    let value = num.value / den.value;
    let error = value.abs() * (num.rel_error() + den.rel_error());
    Estimate::new(value, error)
}

/// `ρ(k, z_A) = g(k, z_A)/g(0, z_A)`, with `g(0, ·)` the plane force.
pub fn rho(query: &ResponseQuery) -> Result<Estimate> {
    let g = response_g(query)?.estimate;
    let f0 = plane_force(query.z_a, query.atom, query.surface, &query.settings)?;
    Ok(ratio(g, f0))
}

/// `η_F = F⁽⁰⁾/F_CP⁽⁰⁾`, the reduction of the plane force relative to a
/// perfect reflector with the static polarizability.
pub fn eta_f(
    z_a: f64,
    atom: &PolarizabilityModel,
    surface: &PermittivityModel,
    settings: &QuadratureSettings,
) -> Result<Estimate> {
    let f0 = plane_force(z_a, atom, surface, settings)?;
    let alpha0 = atom.static_value()?;
    if !(alpha0 > 0.0) {
        return Err(Error::Invalid("eta_F needs a positive static polarizability"));
    }
    Ok(f0.scale(1.0 / f_cp0(z_a, alpha0)))
}
