//! Surface profiles, the first-order corrugation potential and lateral
//! force, and the quasi-1D condensate probe estimator.
//!
//! Profiles are finite mode sums `h(r) = Σ H_m e^{i k_m·r}` with amplitudes
//! in metres; a sinusoid `h₀ cos(k_c x_∥ + φ)` is the pair of modes
//! `±k_c` with amplitudes `(h₀/2) e^{±iφ}`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::atomics::PolarizabilityModel;
use crate::closedforms::{f_cp0, g_cp_perf};
use crate::constants::{self, HBAR};
use crate::optics::PermittivityModel;
use crate::quadrature::{plane_force, response_g, Estimate, QuadratureSettings, ResponseQuery};
use crate::{Error, Result, Vec2};

/// Bound on `h₀ k_c` and `h₀/z_A` beyond which first-order results are
/// flagged.
pub const VALIDITY_LIMIT: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    /// Wavevector, 1/m.
    pub k: Vec2,
    /// Complex amplitude, m.
    pub amplitude: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceProfile {
    /// `h₀ cos(k_c (r·d) + phase)` with unit direction `d`.
    Sinusoid {
        h0: f64,
        k_c: f64,
        phase: f64,
        direction: Vec2,
    },
    Spectrum(Vec<Mode>),
}

impl SurfaceProfile {
    pub fn sinusoid(h0: f64, wavelength: f64) -> Self {
        SurfaceProfile::Sinusoid {
            h0,
            k_c: 2.0 * core::f64::consts::PI / wavelength,
            phase: 0.0,
            direction: Vec2::new(1.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SurfaceProfile::Sinusoid {
                h0,
                k_c,
                phase,
                direction,
            } => {
                if !(*h0 >= 0.0 && h0.is_finite()) || !(*k_c >= 0.0 && k_c.is_finite()) || !phase.is_finite() {
                    return Err(Error::Invalid("sinusoid needs h0 >= 0, k_c >= 0, finite phase"));
                }
                if (direction.norm() - 1.0).abs() > 1e-9 {
                    return Err(Error::Invalid("corrugation direction must be a unit vector"));
                }
            }
            SurfaceProfile::Spectrum(modes) => {
                for m in modes {
                    if !(m.k.x.is_finite() && m.k.y.is_finite() && m.amplitude.re.is_finite() && m.amplitude.im.is_finite()) {
                        return Err(Error::Invalid("spectrum modes must be finite"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn modes(&self) -> Vec<Mode> {
        match *self {
            SurfaceProfile::Sinusoid {
                h0,
                k_c,
                phase,
                direction,
            } => {
                let k = direction * k_c;
                let a = Complex64::from_polar(0.5 * h0, phase);
                alloc::vec![Mode { k, amplitude: a }, Mode { k: -k, amplitude: a.conj() }]
            }
            SurfaceProfile::Spectrum(ref m) => m.clone(),
        }
    }

    /// Upper bound on `|h|`.
    pub fn max_height(&self) -> f64 {
        match self {
            SurfaceProfile::Sinusoid { h0, .. } => *h0,
            SurfaceProfile::Spectrum(m) => m.iter().map(|m| m.amplitude.norm()).sum(),
        }
    }

    fn max_wavenumber(&self) -> f64 {
        match self {
            SurfaceProfile::Sinusoid { k_c, .. } => *k_c,
            SurfaceProfile::Spectrum(m) => m.iter().map(|m| m.k.norm()).fold(0.0, f64::max),
        }
    }

    /// `h(r)`; the real part of the mode sum.
    pub fn height(&self, r: Vec2) -> f64 {
        match *self {
            SurfaceProfile::Sinusoid {
                h0,
                k_c,
                phase,
                direction,
            } => h0 * libm::cos(k_c * r.dot(direction) + phase),
            SurfaceProfile::Spectrum(_) => self.modes().iter().map(|m| (m.amplitude * phase(m.k, r)).re).sum(),
        }
    }

    /// True when the first-order expansion is outside its comfortable range.
    pub fn advisory(&self, z_a: f64) -> bool {
        let h = self.max_height();
        h * self.max_wavenumber() > VALIDITY_LIMIT || h / z_a > VALIDITY_LIMIT
    }
}

fn phase(k: Vec2, r: Vec2) -> Complex64 {
    let (s, c) = libm::sincos(k.dot(r));
    Complex64::new(c, s)
}

/// Anything that can evaluate `g(|k|, z_A)`.
pub trait ResponseSource {
    fn response(&self, k: f64, z_a: f64) -> Result<Estimate>;
}

/// Full quadrature of the response function.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSource<'a> {
    pub atom: &'a PolarizabilityModel,
    pub surface: &'a PermittivityModel,
    pub settings: QuadratureSettings,
}

impl ResponseSource for QuadratureSource<'_> {
    fn response(&self, k: f64, z_a: f64) -> Result<Estimate> {
        if k == 0.0 {
            return plane_force(z_a, self.atom, self.surface, &self.settings);
        }
        let q = ResponseQuery::new(k, z_a, self.atom, self.surface).with_settings(self.settings);
        Ok(response_g(&q)?.estimate)
    }
}

/// Perfect reflector, static polarizability: the closed form
/// `F_CP(z_A) ρ_CP(k z_A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirPolderSource {
    pub alpha0: f64,
}

impl ResponseSource for CasimirPolderSource {
    fn response(&self, k: f64, z_a: f64) -> Result<Estimate> {
        Ok(Estimate::new(g_cp_perf(k, z_a, self.alpha0), 0.0))
    }
}

/// Proximity-force stand-in: `g(k, ·)` replaced by `g(0, ·)`.
#[derive(Debug, Clone, Copy)]
pub struct ProximitySource<S>(pub S);

impl<S: ResponseSource> ResponseSource for ProximitySource<S> {
    fn response(&self, _k: f64, z_a: f64) -> Result<Estimate> {
        self.0.response(0.0, z_a)
    }
}

impl<S: ResponseSource + ?Sized> ResponseSource for &S {
    fn response(&self, k: f64, z_a: f64) -> Result<Estimate> {
        (**self).response(k, z_a)
    }
}

/// `g` values keyed by `|k|` within one assembly.
struct Cache<'s, S: ?Sized> {
    source: &'s S,
    z_a: f64,
    entries: Vec<(f64, Estimate)>,
}

impl<'s, S: ResponseSource + ?Sized> Cache<'s, S> {
    fn new(source: &'s S, z_a: f64) -> Self {
        Cache {
            source,
            z_a,
            entries: Vec::new(),
        }
    }

    fn get(&mut self, k: f64) -> Result<Estimate> {
        if let Some(&(_, e)) = self.entries.iter().find(|(kk, _)| *kk == k) {
            return Ok(e);
        }
        let e = self.source.response(k, self.z_a)?;
        self.entries.push((k, e));
        Ok(e)
    }

    fn evaluations(&self) -> usize {
        self.entries.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderPotential {
    /// `U⁽¹⁾`, J, with absolute error.
    pub value: Estimate,
    /// Imaginary part of the assembled mode sum; zero up to rounding for
    /// Hermitian spectra.
    pub imaginary: f64,
    /// First-order validity flag (see [`VALIDITY_LIMIT`]).
    pub advisory: bool,
    /// Distinct `|k|` values evaluated.
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LateralForce {
    /// `-∇_∥ U⁽¹⁾`, N.
    pub force: Vec2,
    pub error: f64,
    pub advisory: bool,
}

fn check_geometry(profile: &SurfaceProfile, z_a: f64) -> Result<()> {
    profile.validate()?;
    if !(z_a > 0.0 && z_a.is_finite()) {
        return Err(Error::Invalid("z_A must be positive"));
    }
    if z_a <= profile.max_height() {
        return Err(Error::Invalid("atom must sit above the highest point of the surface"));
    }
    Ok(())
}

/// `U⁽¹⁾(r_A, z_A) = Σ_m e^{i k_m·r_A} g(|k_m|, z_A) H_m`.
pub fn first_order_potential<S: ResponseSource + ?Sized>(
    profile: &SurfaceProfile,
    r_a: Vec2,
    z_a: f64,
    source: &S,
) -> Result<FirstOrderPotential> {
    check_geometry(profile, z_a)?;
    let mut cache = Cache::new(source, z_a);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for m in profile.modes() {
        if m.amplitude == Complex64::new(0.0, 0.0) {
            continue;
        }
        let g = cache.get(m.k.norm())?;
        sum += m.amplitude * phase(m.k, r_a) * g.value;
        err += m.amplitude.norm() * g.error;
    }
    Ok(FirstOrderPotential {
        value: Estimate::new(sum.re, err),
        imaginary: sum.im,
        advisory: profile.advisory(z_a),
        evaluations: cache.evaluations(),
    })
}

/// `-∇_∥ U⁽¹⁾ = -Σ_m i k_m H_m g(|k_m|) e^{i k_m·r_A}`.
pub fn lateral_force<S: ResponseSource + ?Sized>(
    profile: &SurfaceProfile,
    r_a: Vec2,
    z_a: f64,
    source: &S,
) -> Result<LateralForce> {
    check_geometry(profile, z_a)?;
    let mut cache = Cache::new(source, z_a);
    let (mut fx, mut fy) = (0.0, 0.0);
    let mut err = 0.0;
    for m in profile.modes() {
        if m.amplitude == Complex64::new(0.0, 0.0) {
            continue;
        }
        let g = cache.get(m.k.norm())?;
        // -i H e^{ik·r} g
        let w = -Complex64::i() * m.amplitude * phase(m.k, r_a) * g.value;
        fx += m.k.x * w.re;
        fy += m.k.y * w.re;
        err += m.k.norm() * m.amplitude.norm() * g.error;
    }
    Ok(LateralForce {
        force: Vec2::new(fx, fy),
        error: err,
        advisory: profile.advisory(z_a),
    })
}

/// Proximity-force first-order term `-h(r_A) ∂_z U⁽⁰⁾ = h(r_A) F⁽⁰⁾(z_A)`.
pub fn pfa_first_order<S: ResponseSource>(
    profile: &SurfaceProfile,
    r_a: Vec2,
    z_a: f64,
    source: S,
) -> Result<FirstOrderPotential> {
    first_order_potential(profile, r_a, z_a, &ProximitySource(source))
}

/// Quasi-1D condensate used as a local potential probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BecProbeConfig {
    /// Transverse trap frequency, rad/s.
    pub omega_tr: f64,
    /// s-wave scattering length, m.
    pub a_scat: f64,
    pub mass: f64,
    /// Atom-number noise per resolution cell.
    pub delta_n: f64,
    /// Longitudinal resolution, m.
    pub x0: f64,
    /// Transverse resolution, m.
    pub rho0: f64,
}

impl BecProbeConfig {
    /// 87Rb in a 2π × 300 Hz transverse trap, four-atom noise over a 3 µm
    /// cell, transverse size equal to the trap oscillator length.
    pub fn rb87_default() -> Self {
        let omega_tr = 2.0 * core::f64::consts::PI * 300.0;
        let mass = constants::RB87_MASS;
        BecProbeConfig {
            omega_tr,
            a_scat: constants::RB87_SCATTERING_LENGTH,
            mass,
            delta_n: 4.0,
            x0: 3e-6,
            rho0: libm::sqrt(HBAR / (mass * omega_tr)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.omega_tr, self.a_scat, self.mass, self.delta_n, self.x0, self.rho0];
        if all.iter().all(|v| *v > 0.0 && v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Invalid("condensate probe parameters must be positive"))
        }
    }

    /// `2ħ² a_scat / m`, J m³.
    pub fn gamma_bec(&self) -> f64 {
        2.0 * HBAR * HBAR * self.a_scat / self.mass
    }

    /// Smallest resolvable potential step `γ ΔN/(ρ₀² x₀)`, J.
    pub fn delta_v(&self) -> f64 {
        self.gamma_bec() * self.delta_n / (self.rho0 * self.rho0 * self.x0)
    }
}

/// `V_ho + V_CP = -ħω_tr √(1 + 4 a_scat n₁ᴅ)` for a line density `n`, J.
///
/// For large densities this approaches the quadratic law
/// `n ≃ (V/ħω_tr)²/(4a)`; only the exact relation is used here.
pub fn bec_density_to_potential(n_1d: f64, cfg: &BecProbeConfig) -> Result<f64> {
    cfg.validate()?;
    if !(n_1d >= 0.0 && n_1d.is_finite()) {
        return Err(Error::Invalid("line density must be non-negative"));
    }
    Ok(-HBAR * cfg.omega_tr * libm::sqrt(1.0 + 4.0 * cfg.a_scat * n_1d))
}

/// Inverse of [`bec_density_to_potential`].
pub fn bec_potential_to_density(v: f64, cfg: &BecProbeConfig) -> Result<f64> {
    cfg.validate()?;
    let s = -v / (HBAR * cfg.omega_tr);
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::Invalid("potential above -ħω_tr has no physical density"));
    }
    Ok((s - 1.0) * (s + 1.0) / (4.0 * cfg.a_scat))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detectability {
    Detectable,
    Marginal,
    Undetectable,
}

impl Detectability {
    pub fn classify(ratio: f64) -> Self {
        if ratio > 3.0 {
            Detectability::Detectable
        } else if ratio >= 1.0 / 3.0 {
            Detectability::Marginal
        } else {
            Detectability::Undetectable
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Detectability::Detectable => "detectable",
            Detectability::Marginal => "marginal",
            Detectability::Undetectable => "undetectable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectabilityReport {
    /// Peak `|U⁽¹⁾|` bound `Σ |H_m| |g(k_m)|`, J.
    pub u1_amplitude: Estimate,
    pub delta_v: f64,
    pub ratio: f64,
    pub class: Detectability,
    pub advisory: bool,
}

pub fn detectability_report<S: ResponseSource + ?Sized>(
    profile: &SurfaceProfile,
    z_a: f64,
    source: &S,
    cfg: &BecProbeConfig,
) -> Result<DetectabilityReport> {
    check_geometry(profile, z_a)?;
    cfg.validate()?;
    let mut cache = Cache::new(source, z_a);
    let (mut amp, mut err) = (0.0, 0.0);
    for m in profile.modes() {
        let g = cache.get(m.k.norm())?;
        amp += m.amplitude.norm() * g.value.abs();
        err += m.amplitude.norm() * g.error;
    }
    let dv = cfg.delta_v();
    let ratio = amp / dv;
    Ok(DetectabilityReport {
        u1_amplitude: Estimate::new(amp, err),
        delta_v: dv,
        ratio,
        class: Detectability::classify(ratio),
        advisory: profile.advisory(z_a),
    })
}

/// PFA reference for the headline configuration: `h₀ F_CP(z_A)`.
pub fn pfa_cp_amplitude(h0: f64, z_a: f64, alpha0: f64) -> f64 {
    h0 * f_cp0(z_a, alpha0).abs()
}
