//! Atomic dynamic polarizability and the plane-wave matrix elements of the
//! atomic reflection operator (electric and magnetic dipole).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::constants::{self, C, EPS0, HBAR};
use crate::interp::{Extrapolation, LogTable};
use crate::optics::FresnelSet;
use crate::{Error, Result, Vec2};

/// Transition from the ground state: frequency ω_n0 (rad/s) and dipole
/// matrix element d_n0 (C m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub omega: f64,
    pub dipole: f64,
}

impl Transition {
    /// Dipole element reproducing a static polarizability with a single line.
    pub fn from_static(alpha0: f64, omega: f64) -> Self {
        Transition {
            omega,
            dipole: libm::sqrt(1.5 * HBAR * omega * alpha0),
        }
    }
}

/// Dynamic polarizability `α(iξ)` in SI units (C m²/V).
#[derive(Debug, Clone, PartialEq)]
pub enum PolarizabilityModel {
    Static { alpha0: f64 },
    /// `α₀ ω_A² / (ω_A² + ξ²)`.
    SingleOscillator { alpha0: f64, omega_a: f64 },
    /// `(2/3ħ) Σ ω_n0 d_n0² / (ω_n0² + ξ²)`.
    Multilevel(Vec<Transition>),
    Tabulated(TabulatedPolarizability),
}

impl PolarizabilityModel {
    /// 87Rb: one oscillator at the D2 line carrying the full static value.
    pub fn rb87() -> Self {
        PolarizabilityModel::SingleOscillator {
            alpha0: constants::alpha_si_from_volume(constants::RB87_ALPHA0_VOLUME),
            omega_a: constants::omega_from_wavelength(constants::RB_D2_WAVELENGTH),
        }
    }

    /// 87Rb static polarizability at every frequency.
    pub fn rb87_static() -> Self {
        PolarizabilityModel::Static {
            alpha0: constants::alpha_si_from_volume(constants::RB87_ALPHA0_VOLUME),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            PolarizabilityModel::Static { alpha0 } => *alpha0 >= 0.0 && alpha0.is_finite(),
            PolarizabilityModel::SingleOscillator { alpha0, omega_a } => {
                *alpha0 >= 0.0 && alpha0.is_finite() && *omega_a > 0.0 && omega_a.is_finite()
            }
            PolarizabilityModel::Multilevel(t) => t
                .iter()
                .all(|t| t.omega > 0.0 && t.omega.is_finite() && t.dipole.is_finite()),
            PolarizabilityModel::Tabulated(_) => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid("polarizability parameters must be finite, non-negative, with positive frequencies"))
        }
    }

    pub fn alpha(&self, xi: f64) -> Result<f64> {
        if !(xi >= 0.0) {
            return Err(Error::Invalid("imaginary frequency must be non-negative"));
        }
        Ok(match self {
            PolarizabilityModel::Static { alpha0 } => *alpha0,
            PolarizabilityModel::SingleOscillator { alpha0, omega_a } => {
                let w2 = omega_a * omega_a;
                alpha0 * w2 / (w2 + xi * xi)
            }
            PolarizabilityModel::Multilevel(ts) => {
                2.0 / (3.0 * HBAR)
                    * ts
                        .iter()
                        .map(|t| t.omega * t.dipole * t.dipole / (t.omega * t.omega + xi * xi))
                        .sum::<f64>()
            }
            PolarizabilityModel::Tabulated(t) => t.alpha(xi)?,
        })
    }

    /// `α(0)`.
    pub fn static_value(&self) -> Result<f64> {
        self.alpha(0.0)
    }

    pub fn covers_half_line(&self) -> bool {
        match self {
            PolarizabilityModel::Tabulated(t) => t.table.covers_half_line(),
            _ => true,
        }
    }

    /// Multiply every `d_n0²` (equivalently α) by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        match self {
            PolarizabilityModel::Static { alpha0 } => PolarizabilityModel::Static { alpha0: alpha0 * factor },
            PolarizabilityModel::SingleOscillator { alpha0, omega_a } => PolarizabilityModel::SingleOscillator {
                alpha0: alpha0 * factor,
                omega_a: *omega_a,
            },
            PolarizabilityModel::Multilevel(ts) => PolarizabilityModel::Multilevel(
                ts.iter()
                    .map(|t| Transition {
                        omega: t.omega,
                        dipole: t.dipole * libm::sqrt(factor),
                    })
                    .collect(),
            ),
            PolarizabilityModel::Tabulated(t) => PolarizabilityModel::Tabulated(t.scaled(factor)),
        }
    }

    /// Transition list equivalent to the model, if it has one.
    pub fn transitions(&self) -> Option<Vec<Transition>> {
        match self {
            PolarizabilityModel::SingleOscillator { alpha0, omega_a } => {
                Some(alloc::vec![Transition::from_static(*alpha0, *omega_a)])
            }
            PolarizabilityModel::Multilevel(ts) => Some(ts.clone()),
            _ => None,
        }
    }

    pub fn characteristic_frequencies(&self) -> Vec<f64> {
        match self {
            PolarizabilityModel::SingleOscillator { omega_a, .. } => alloc::vec![*omega_a],
            PolarizabilityModel::Multilevel(ts) => ts.iter().map(|t| t.omega).collect(),
            _ => Vec::new(),
        }
    }
}

/// `α(iξ)` sampled on the imaginary axis; monotone cubic in `(ln ξ, ln α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPolarizability {
    table: LogTable,
    static_value: Option<f64>,
}

impl TabulatedPolarizability {
    /// Samples `(ξ, α)`; a leading `ξ = 0` sample is the static value. Below
    /// the first positive sample the table blends towards the static value
    /// (or holds the first value); above the last it decays as `ξ⁻²`.
    pub fn new(samples: &[(f64, f64)]) -> Result<Self> {
        let (rest, static_value) = match samples.first() {
            Some(&(x, a)) if x == 0.0 => (&samples[1..], Some(a)),
            _ => (samples, None),
        };
        let low = match static_value {
            Some(a) => Extrapolation::ToStatic(a),
            None => Extrapolation::Constant,
        };
        let x: Vec<f64> = rest.iter().map(|s| s.0).collect();
        let y: Vec<f64> = rest.iter().map(|s| s.1).collect();
        let table = LogTable::new(&x, &y, low, Extrapolation::PowerLaw(-2.0))?;
        if y.windows(2).any(|w| w[1] > w[0]) || static_value.is_some_and(|a| a < y[0]) {
            return Err(Error::Invalid("tabulated polarizability must be non-increasing in xi"));
        }
        Ok(TabulatedPolarizability { table, static_value })
    }

    pub fn alpha(&self, xi: f64) -> Result<f64> {
        self.table.eval(xi, "tabulated polarizability")
    }

    fn scaled(&self, factor: f64) -> Self {
        let mut s: Vec<(f64, f64)> = self.table.samples().map(|(x, y)| (x, y * factor)).collect();
        if let Some(a) = self.static_value {
            s.insert(0, (0.0, a * factor));
        }
        Self::new(&s).expect("scaling preserves table invariants")
    }
}

/// Magnetic polarizability β(iξ) in m³ (SI, m = β H). Same model family as
/// the electric polarizability.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticPolarizabilityModel(pub PolarizabilityModel);

impl MagneticPolarizabilityModel {
    pub fn beta(&self, xi: f64) -> Result<f64> {
        self.0.alpha(xi)
    }
}

/// Polarization index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Te,
    Tm,
}

/// Propagation direction along z: `Up` (+, away from the surface) or `Down`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

type CVec3 = [Complex64; 3];

fn cdot(a: &CVec3, b: &CVec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn ccross(a: &CVec3, b: &CVec3) -> CVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit_or_x(k: Vec2) -> Vec2 {
    k.normalized().unwrap_or(Vec2::new(1.0, 0.0))
}

/// Wave vector `K± = k ± i κ ẑ` on the imaginary axis.
pub fn wave_vector(k: Vec2, xi: f64, dir: Direction) -> CVec3 {
    let kappa = libm::sqrt((xi / C) * (xi / C) + k.dot(k));
    let s = if dir == Direction::Up { 1.0 } else { -1.0 };
    [
        Complex64::new(k.x, 0.0),
        Complex64::new(k.y, 0.0),
        Complex64::new(0.0, s * kappa),
    ]
}

/// Polarization unit vector `ε̂±_p(k)` continued to `ω = iξ`:
/// TE is `ẑ × k̂`; TM is `ε̂_TE × K± / |K|` with `|K| = iξ/c`.
pub fn polarization_vector(p: Polarization, k: Vec2, xi: f64, dir: Direction) -> CVec3 {
    let u = unit_or_x(k);
    let te = [
        Complex64::new(-u.y, 0.0),
        Complex64::new(u.x, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    match p {
        Polarization::Te => te,
        Polarization::Tm => {
            let kv = wave_vector(k, xi, dir);
            let inv_norm = Complex64::new(0.0, -C / xi);
            let v = ccross(&te, &kv);
            [v[0] * inv_norm, v[1] * inv_norm, v[2] * inv_norm]
        }
    }
}

fn displacement(k: Vec2, k2: Vec2, xi: f64, r_a: Vec2, z_a: f64) -> Complex64 {
    let kappa = FresnelSet::vacuum_kappa(k.norm(), xi);
    let kappa2 = FresnelSet::vacuum_kappa(k2.norm(), xi);
    let phase = -(k - k2).dot(r_a);
    Complex64::new(libm::cos(phase), libm::sin(phase)) * libm::exp(-(kappa + kappa2) * z_a)
}

/// `⟨k, p| R_A |k', p'⟩` for an electric dipole of polarizability α (SI).
pub fn electric_reflection_element(
    alpha: f64,
    xi: f64,
    k: Vec2,
    p: Polarization,
    k2: Vec2,
    p2: Polarization,
    r_a: Vec2,
    z_a: f64,
) -> Complex64 {
    let kappa = FresnelSet::vacuum_kappa(k.norm(), xi);
    let amp = -(xi * xi / (2.0 * kappa)) * alpha / (EPS0 * C * C);
    let dot = cdot(
        &polarization_vector(p, k, xi, Direction::Down),
        &polarization_vector(p2, k2, xi, Direction::Up),
    );
    dot * amp * displacement(k, k2, xi, r_a, z_a)
}

/// `⟨k, p| R_A^m |k', p'⟩` for a magnetic dipole of polarizability β (m³):
/// `-(β / 2κ) ε̂⁻_p(k) · [K⁻ × (K'⁺ × ε̂⁺_p'(k'))]` times the displacement
/// factors.
pub fn magnetic_reflection_element(
    beta: f64,
    xi: f64,
    k: Vec2,
    p: Polarization,
    k2: Vec2,
    p2: Polarization,
    r_a: Vec2,
    z_a: f64,
) -> Complex64 {
    let kappa = FresnelSet::vacuum_kappa(k.norm(), xi);
    let inner = ccross(&wave_vector(k2, xi, Direction::Up), &polarization_vector(p2, k2, xi, Direction::Up));
    let outer = ccross(&wave_vector(k, xi, Direction::Down), &inner);
    let triple = cdot(&polarization_vector(p, k, xi, Direction::Down), &outer);
    triple * (-beta / (2.0 * kappa)) * displacement(k, k2, xi, r_a, z_a)
}
