//! Physical constants (CODATA 2018, exact where the SI fixes them).

/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity, F/m.
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Elementary charge, C. Used for eV conversions.
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Atomic mass constant, kg.
pub const AMU: f64 = 1.660_539_066_60e-27;

/// Joules per electron-volt.
pub const EV: f64 = E_CHARGE;

/// Converts a polarizability volume `alpha / (4 pi eps0)` in m^3 to SI
/// polarizability (C m^2 / V).
pub fn alpha_si_from_volume(volume_m3: f64) -> f64 {
    4.0 * core::f64::consts::PI * EPS0 * volume_m3
}

/// Inverse of [`alpha_si_from_volume`].
pub fn alpha_volume_from_si(alpha_si: f64) -> f64 {
    alpha_si / (4.0 * core::f64::consts::PI * EPS0)
}

/// Static polarizability volume of 87Rb, m^3.
pub const RB87_ALPHA0_VOLUME: f64 = 47.3e-30;
/// Rb D2 line wavelength, m.
pub const RB_D2_WAVELENGTH: f64 = 780e-9;
/// 87Rb mass, kg.
pub const RB87_MASS: f64 = 86.909_180_527 * AMU;
/// 87Rb s-wave scattering length, m (about 100 a0).
pub const RB87_SCATTERING_LENGTH: f64 = 5.29e-9;

/// Plasma wavelength used for the default gold model, m.
pub const GOLD_PLASMA_WAVELENGTH: f64 = 136e-9;
/// Static permittivity of the default silicon model.
pub const SILICON_EPS_STATIC: f64 = 11.87;
/// Drude-Lorentz frequency of the default silicon model, rad/s.
pub const SILICON_OMEGA_DL: f64 = 6.6e15;

/// Angular frequency of a vacuum wavelength, rad/s.
pub fn omega_from_wavelength(lambda: f64) -> f64 {
    2.0 * core::f64::consts::PI * C / lambda
}
