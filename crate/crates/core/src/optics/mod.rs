//! Dielectric response on the imaginary frequency axis and specular Fresnel
//! coefficients of a homogeneous, non-magnetic half-space.

mod kramers_kronig;

pub use kramers_kronig::{
    kramers_kronig_point, kramers_kronig_samples, kramers_kronig_to_imaginary_axis, DrudeTail, RealAxisOpticalData,
};

use crate::constants::{self, C};
use crate::interp::{Extrapolation, LogTable};
use crate::{Error, Result};

/// Permittivity `ε(iξ)` of a bulk medium.
#[derive(Debug, Clone, PartialEq)]
pub enum PermittivityModel {
    Vacuum,
    /// `ε → ∞`; callers branch to exact limit formulas.
    PerfectConductor,
    /// `ε = 1 + ω_P² / ξ²`.
    Plasma { omega_p: f64 },
    /// `ε = 1 + ω_DL² (ε(0) - 1) / (ω_DL² + ξ²)`.
    DrudeLorentz { omega_dl: f64, eps_static: f64 },
    Tabulated(TabulatedPermittivity),
}

impl PermittivityModel {
    /// Gold as a plasma metal with λ_P = 136 nm.
    pub fn gold() -> Self {
        PermittivityModel::Plasma {
            omega_p: constants::omega_from_wavelength(constants::GOLD_PLASMA_WAVELENGTH),
        }
    }

    /// Silicon as a Drude-Lorentz dielectric, ε(0) = 11.87.
    pub fn silicon() -> Self {
        PermittivityModel::DrudeLorentz {
            omega_dl: constants::SILICON_OMEGA_DL,
            eps_static: constants::SILICON_EPS_STATIC,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PermittivityModel::Plasma { omega_p } if !(omega_p > 0.0 && omega_p.is_finite()) => {
                Err(Error::Invalid("plasma frequency must be positive"))
            }
            PermittivityModel::DrudeLorentz { omega_dl, eps_static }
                if !(omega_dl > 0.0 && omega_dl.is_finite() && eps_static >= 1.0) =>
            {
                Err(Error::Invalid("Drude-Lorentz needs omega_dl > 0 and eps_static >= 1"))
            }
            _ => Ok(()),
        }
    }

    pub fn is_perfect_conductor(&self) -> bool {
        matches!(self, PermittivityModel::PerfectConductor)
    }

    /// True when `ε(iξ)` is defined for every `ξ ≥ 0`.
    pub fn covers_half_line(&self) -> bool {
        match self {
            PermittivityModel::Tabulated(t) => t.table.covers_half_line(),
            _ => true,
        }
    }

    /// `ε(iξ)`. Returns `f64::INFINITY` for a perfect conductor and for the
    /// plasma model at `ξ = 0`.
    pub fn eps(&self, xi: f64) -> Result<f64> {
        if !(xi >= 0.0) {
            return Err(Error::Invalid("imaginary frequency must be non-negative"));
        }
        Ok(match self {
            PermittivityModel::Vacuum => 1.0,
            PermittivityModel::PerfectConductor => f64::INFINITY,
            PermittivityModel::Plasma { omega_p } => {
                if xi == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 + (omega_p / xi) * (omega_p / xi)
                }
            }
            PermittivityModel::DrudeLorentz { omega_dl, eps_static } => {
                let w2 = omega_dl * omega_dl;
                1.0 + w2 * (eps_static - 1.0) / (w2 + xi * xi)
            }
            PermittivityModel::Tabulated(t) => t.eps(xi)?,
        })
    }

    /// Medium response at `ξ`, with `ε ξ² / c²` computed without forming
    /// `ε` where that would overflow.
    pub fn at(&self, xi: f64) -> Result<MediumAt> {
        let eps = self.eps(xi)?;
        let q2 = (xi / C) * (xi / C);
        let eps_q2 = match self {
            PermittivityModel::Plasma { omega_p } => (xi * xi + omega_p * omega_p) / (C * C),
            PermittivityModel::PerfectConductor => f64::INFINITY,
            _ => eps * q2,
        };
        Ok(MediumAt { xi, eps, eps_q2 })
    }

    /// Characteristic frequencies of the model (rad/s), used to place
    /// quadrature breakpoints.
    pub fn characteristic_frequencies(&self) -> impl Iterator<Item = f64> {
        let v = match *self {
            PermittivityModel::Plasma { omega_p } => Some(omega_p / core::f64::consts::SQRT_2),
            PermittivityModel::DrudeLorentz { omega_dl, eps_static } => {
                Some(omega_dl * libm::sqrt((eps_static + 1.0) / 2.0))
            }
            _ => None,
        };
        v.into_iter()
    }
}

/// `ε(iξ)` sampled on the imaginary axis; monotone cubic in
/// `(ln ξ, ln(ε - 1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPermittivity {
    table: LogTable,
    /// `ε - 1` is floored here before taking logs.
    floor: f64,
}

const EPS_FLOOR: f64 = 1e-300;

impl TabulatedPermittivity {
    /// Samples `(ξ, ε)` with `ξ > 0` strictly increasing and `ε ≥ 1`. A
    /// leading sample at `ξ = 0` becomes the static value reached by the low
    /// extrapolation.
    pub fn new(samples: &[(f64, f64)], low: Extrapolation, high: Extrapolation) -> Result<Self> {
        if samples.iter().any(|&(_, e)| !(e >= 1.0) || !e.is_finite()) {
            return Err(Error::Invalid("tabulated permittivity must satisfy eps >= 1"));
        }
        let (samples, low) = match samples.first() {
            Some(&(x, e)) if x == 0.0 => (&samples[1..], Extrapolation::ToStatic((e - 1.0).max(EPS_FLOOR))),
            _ => (samples, low),
        };
        let x: alloc::vec::Vec<f64> = samples.iter().map(|s| s.0).collect();
        let y: alloc::vec::Vec<f64> = samples.iter().map(|s| (s.1 - 1.0).max(EPS_FLOOR)).collect();
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Invalid("tabulated frequencies must be strictly increasing"));
        }
        let table = LogTable::new(&x, &y, low, high)?;
        Ok(TabulatedPermittivity { table, floor: EPS_FLOOR })
    }

    /// Default rules for data produced by the dispersion transform: hold the
    /// lowest value below the grid, decay as `ξ⁻²` above it.
    pub fn with_default_extrapolation(samples: &[(f64, f64)]) -> Result<Self> {
        Self::new(samples, Extrapolation::Constant, Extrapolation::PowerLaw(-2.0))
    }

    pub fn eps(&self, xi: f64) -> Result<f64> {
        let v = self.table.eval(xi, "tabulated permittivity")?;
        Ok(if v <= self.floor * 1.000_001 { 1.0 } else { 1.0 + v })
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.table
            .samples()
            .map(move |(x, y)| (x, if y <= self.floor * 1.000_001 { 1.0 } else { 1.0 + y }))
    }
}

/// `ε(iξ)` and `ε ξ²/c²` at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumAt {
    pub xi: f64,
    pub eps: f64,
    /// `ε(iξ) ξ² / c²` in 1/m². Finite for the plasma model at `ξ → 0`.
    pub eps_q2: f64,
}

impl MediumAt {
    pub fn perfect(xi: f64) -> Self {
        MediumAt {
            xi,
            eps: f64::INFINITY,
            eps_q2: f64::INFINITY,
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.eps.is_infinite()
    }

    /// Fresnel set at in-plane wavenumber `k`.
    pub fn fresnel(&self, k: f64) -> FresnelSet {
        let kappa = FresnelSet::vacuum_kappa(k, self.xi);
        if self.is_perfect() {
            return FresnelSet {
                r_te: -1.0,
                r_tm: 1.0,
                t_te: 0.0,
                t_tm: 0.0,
                kappa,
                kappa_t: f64::INFINITY,
            };
        }
        let eps = self.eps;
        let kappa_t = libm::hypot(k, libm::sqrt(self.eps_q2));
        let r_te = (kappa - kappa_t) / (kappa + kappa_t);
        let r_tm = (eps * kappa - kappa_t) / (eps * kappa + kappa_t);
        let t_te = 2.0 * kappa / (kappa + kappa_t);
        let t_tm = 2.0 * libm::sqrt(eps) * kappa / (eps * kappa + kappa_t);
        FresnelSet {
            r_te,
            r_tm,
            t_te,
            t_tm,
            kappa,
            kappa_t,
        }
    }
}

/// Specular reflection and transmission coefficients on the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelSet {
    pub r_te: f64,
    pub r_tm: f64,
    pub t_te: f64,
    pub t_tm: f64,
    /// `√(ξ²/c² + k²)`, 1/m.
    pub kappa: f64,
    /// `√(k² + ε ξ²/c²)`, 1/m; infinite for a perfect conductor.
    pub kappa_t: f64,
}

impl FresnelSet {
    /// `√(ξ²/c² + k²)`.
    pub fn vacuum_kappa(k: f64, xi: f64) -> f64 {
        libm::hypot(xi / C, k)
    }
}

/// Fresnel coefficients of `model` at `(k, ξ)`.
pub fn fresnel(model: &PermittivityModel, k: f64, xi: f64) -> Result<FresnelSet> {
    if !(k >= 0.0) || !(xi >= 0.0) || (k == 0.0 && xi == 0.0) {
        return Err(Error::Invalid("fresnel needs k, xi >= 0, not both zero"));
    }
    Ok(model.at(xi)?.fresnel(k))
}

/// `ε(iξ)` of `model`; alias of [`PermittivityModel::eps`].
pub fn permittivity_imaginary_axis(model: &PermittivityModel, xi: f64) -> Result<f64> {
    model.eps(xi)
}
