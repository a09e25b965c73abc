//! Non-retarded response functions for multilevel atoms.

use super::bessel::{bessel_k0_scaled, bessel_k1_scaled};
use crate::atomics::{PolarizabilityModel, Transition};
use crate::constants::EPS0;
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

/// Transitions of a multilevel atom, as used by the van der Waals formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct VdwAtomSpec {
    pub transitions: Vec<Transition>,
}

impl VdwAtomSpec {
    pub fn new(transitions: Vec<Transition>) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::Invalid("vdW atom needs at least one transition"));
        }
        for t in &transitions {
            if !(t.omega > 0.0 && t.omega.is_finite()) || !(t.dipole >= 0.0 && t.dipole.is_finite()) {
                return Err(Error::Invalid("transition needs omega > 0 and dipole >= 0"));
            }
        }
        Ok(VdwAtomSpec { transitions })
    }

    /// Single transition with static polarizability `alpha0` at `omega`.
    pub fn single(alpha0: f64, omega: f64) -> Result<Self> {
        Self::new(alloc::vec![Transition::from_static(alpha0, omega)])
    }

    /// Transitions of a single-oscillator or multilevel model.
    pub fn from_model(model: &PolarizabilityModel) -> Result<Self> {
        match model.transitions() {
            Some(t) => Self::new(t),
            None => Err(Error::Invalid("vdW formulas need a model with transitions")),
        }
    }

    pub fn sum_d2(&self) -> f64 {
        self.transitions.iter().map(|t| t.dipole * t.dipole).sum()
    }
}

/// `Z K₀(Z) e^{-Z}`-free pieces: returns `(Z² K₀(Z), Z K₁(Z))`, finite at
/// `Z = 0` and underflowing gracefully for large `Z`.
fn z_bessel(z: f64) -> (f64, f64) {
    if z == 0.0 {
        return (0.0, 1.0);
    }
    let e = libm::exp(-z);
    (z * z * bessel_k0_scaled(z) * e, z * bessel_k1_scaled(z) * e)
}

fn check(k: f64, z_a: f64) -> Result<()> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::Invalid("k must be finite and non-negative"));
    }
    if !(z_a > 0.0 && z_a.is_finite()) {
        return Err(Error::Invalid("z_A must be positive"));
    }
    Ok(())
}

/// Shared prefactor `d² / (π ε₀ z⁴)`; the `k` of the formulas is absorbed
/// into the Bessel products as `k = Z / z`.
fn pref(d: f64, z_a: f64) -> f64 {
    d * d / (PI * EPS0 * libm::pow(z_a, 4.0))
}

/// Plasma half-space, non-retarded:
/// `-Σ k d² x / (192√2 π ε₀ z³ (x² + 2√2x + 2)) [6√2 Z (x+√2) K₀ + (√2(Z²+12)x + Z²+24) K₁]`
/// with `x = ω_P/ω_n0`.
pub fn g_vdw_plasma(k: f64, z_a: f64, spec: &VdwAtomSpec, omega_p: f64) -> Result<f64> {
    check(k, z_a)?;
    if !(omega_p > 0.0) {
        return Err(Error::Invalid("plasma frequency must be positive"));
    }
    let zz = k * z_a;
    let (zk0, zk1) = z_bessel(zz);
    let z2 = zz * zz;
    Ok(spec
        .transitions
        .iter()
        .map(|t| {
            let x = omega_p / t.omega;
            let den = 192.0 * SQRT_2 * (x * x + 2.0 * SQRT_2 * x + 2.0);
            let br = 6.0 * SQRT_2 * (x + SQRT_2) * zk0 + (SQRT_2 * (z2 + 12.0) * x + z2 + 24.0) * zk1;
            -pref(t.dipole, z_a) * x * br / den
        })
        .sum())
}

/// Perfect conductor, non-retarded:
/// `-Σ k d²/(192 π ε₀ z³) [6 Z K₀ + (Z²+12) K₁]`.
pub fn g_vdw_perf(k: f64, z_a: f64, spec: &VdwAtomSpec) -> Result<f64> {
    check(k, z_a)?;
    let zz = k * z_a;
    let (zk0, zk1) = z_bessel(zz);
    let br = 6.0 * zk0 + (zz * zz + 12.0) * zk1;
    Ok(-spec.sum_d2() / (PI * EPS0 * libm::pow(z_a, 4.0)) * br / 192.0)
}

/// Plasmon limit `ω_P ≪ ω_n0`:
/// `-Σ k d² x/(384√2 π ε₀ z³) [12 Z K₀ + (Z²+24) K₁]`.
pub fn g_vdw_plasmon(k: f64, z_a: f64, spec: &VdwAtomSpec, omega_p: f64) -> Result<f64> {
    check(k, z_a)?;
    if !(omega_p > 0.0) {
        return Err(Error::Invalid("plasma frequency must be positive"));
    }
    let zz = k * z_a;
    let (zk0, zk1) = z_bessel(zz);
    let br = 12.0 * zk0 + (zz * zz + 24.0) * zk1;
    Ok(spec
        .transitions
        .iter()
        .map(|t| -pref(t.dipole, z_a) * (omega_p / t.omega) * br / (384.0 * SQRT_2))
        .sum())
}

/// One Drude-Lorentz transition term without the `d²/(πε₀z⁴)` prefactor.
/// Singular-looking at `(γ+2)x² = 2`, where numerator and denominator
/// vanish together.
fn dl_term(x: f64, gamma: f64, zz: f64, zk0: f64, zk1: f64) -> f64 {
    let g2 = gamma + 2.0;
    let sg2 = libm::sqrt(g2);
    let g32 = g2 * sg2;
    let s = g2 * x * x - 2.0;
    let z2 = zz * zz;
    let a0 = g2 * (sg2 * x - SQRT_2) * s;
    let a1 = 2.0 * g32 * ((z2 + 12.0) * gamma + 24.0) * x * x * x
        - 3.0 * SQRT_2 * g2 * ((z2 + 8.0) * gamma + 16.0) * x * x
        - 48.0 * g32 * x
        + 2.0 * SQRT_2 * ((z2 + 24.0) * gamma + 48.0);
    -gamma * x * (12.0 * a0 * zk0 + a1 * zk1) / (384.0 * g32 * s * s)
}

/// Drude-Lorentz half-space, non-retarded, with `γ = ε(0) - 1` and
/// `x = ω_DL/ω_n0`.
pub fn g_vdw_drude_lorentz(k: f64, z_a: f64, spec: &VdwAtomSpec, omega_dl: f64, eps_static: f64) -> Result<f64> {
    check(k, z_a)?;
    if !(omega_dl > 0.0) || !(eps_static >= 1.0) {
        return Err(Error::Invalid("Drude-Lorentz needs omega_DL > 0 and eps_static >= 1"));
    }
    let gamma_eps = eps_static - 1.0;
    let zz = k * z_a;
    let (zk0, zk1) = z_bessel(zz);
    const GAP: f64 = 2e-3;
    Ok(spec
        .transitions
        .iter()
        .map(|t| {
            let x = omega_dl / t.omega;
            let g2 = gamma_eps + 2.0;
            let s = g2 * x * x - 2.0;
            let v = if s.abs() < GAP {
                // interpolate linearly in s across the removable singularity
                let at = |s: f64| dl_term(libm::sqrt((2.0 + s) / g2), gamma_eps, zz, zk0, zk1);
                let (lo, hi) = (at(-GAP), at(GAP));
                lo + (hi - lo) * (s + GAP) / (2.0 * GAP)
            } else {
                dl_term(x, gamma_eps, zz, zk0, zk1)
            };
            pref(t.dipole, z_a) * v
        })
        .sum())
}
