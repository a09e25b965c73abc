//! Analytic limits: the Casimir-Polder plane force, the perfect-reflector
//! response function, the van der Waals family and the Bessel functions
//! they are built from.

mod bessel;
mod vdw;

pub use bessel::{bessel_k0, bessel_k0_k1, bessel_k0_scaled, bessel_k1, bessel_k1_scaled};
pub use vdw::{g_vdw_drude_lorentz, g_vdw_perf, g_vdw_plasma, g_vdw_plasmon, VdwAtomSpec};

use crate::constants::{C, EPS0, HBAR};
use core::f64::consts::PI;

/// Casimir-Polder plane force `-3ħcα₀/(8π²ε₀z⁵)`, N. `alpha0` in SI.
pub fn f_cp0(z_a: f64, alpha0: f64) -> f64 {
    -3.0 * HBAR * C * alpha0 / (8.0 * PI * PI * EPS0 * libm::pow(z_a, 5.0))
}

/// Casimir-Polder plane potential `-3ħcα₀/(32π²ε₀z⁴)`, J.
pub fn u_cp0(z_a: f64, alpha0: f64) -> f64 {
    -3.0 * HBAR * C * alpha0 / (32.0 * PI * PI * EPS0 * libm::pow(z_a, 4.0))
}

/// `ρ_CP(Z) = e^{-Z}(1 + Z + 16Z²/45 + Z³/45)`.
pub fn rho_cp_perf(z: f64) -> f64 {
    libm::exp(-z) * (1.0 + z * (1.0 + z * (16.0 / 45.0 + z / 45.0)))
}

/// Perfect-reflector response function in the retarded regime,
/// `F_CP(z_A) ρ_CP(k z_A)`, N.
pub fn g_cp_perf(k: f64, z_a: f64, alpha0: f64) -> f64 {
    f_cp0(z_a, alpha0) * rho_cp_perf(k * z_a)
}
