//! Polarization algebra, first-order non-specular reflection coefficients
//! and the contracted integrand `a_{k',k''}` of the response function.
//!
//! The production kernels return `ξ² a` with every `c²/ξ²` cancelled
//! symbolically, so the `ξ → 0` end of the frequency integral is finite.

use crate::constants::C;
use crate::optics::{FresnelSet, MediumAt};
use crate::Vec2;

/// One integrand evaluation point: frequency `ξ`, the two in-plane
/// wavevectors `k'` and `k'' = k' - k`, and the medium response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub xi: f64,
    /// |k'|, 1/m.
    pub k1: f64,
    /// |k''|, 1/m.
    pub k2: f64,
    /// cos(φ' - φ'').
    pub cos: f64,
    /// sin(φ' - φ'').
    pub sin: f64,
    pub fresnel1: FresnelSet,
    pub fresnel2: FresnelSet,
    pub medium: MediumAt,
}

impl KernelPoint {
    /// Point from explicit wavevectors.
    pub fn new(medium: MediumAt, k1: Vec2, k2: Vec2) -> Self {
        let (n1, n2) = (k1.norm(), k2.norm());
        let (cos, sin) = if n1 > 0.0 && n2 > 0.0 {
            (k1.dot(k2) / (n1 * n2), -k1.cross(k2) / (n1 * n2))
        } else {
            (1.0, 0.0)
        };
        Self::from_parts(medium, n1, medium.fresnel(n1), n2, medium.fresnel(n2), cos, sin)
    }

    /// Point from magnitudes, precomputed Fresnel sets and the relative
    /// angle.
    pub fn from_parts(
        medium: MediumAt,
        k1: f64,
        fresnel1: FresnelSet,
        k2: f64,
        fresnel2: FresnelSet,
        cos: f64,
        sin: f64,
    ) -> Self {
        KernelPoint {
            xi: medium.xi,
            k1,
            k2,
            cos,
            sin,
            fresnel1,
            fresnel2,
            medium,
        }
    }

    /// |k' - k''|², the corrugation wavenumber squared.
    pub fn k_transfer_sq(&self) -> f64 {
        (self.k1 * self.k1 + self.k2 * self.k2 - 2.0 * self.k1 * self.k2 * self.cos).max(0.0)
    }

    fn exp_factor(&self, z_a: f64) -> f64 {
        libm::exp(-(self.fresnel1.kappa + self.fresnel2.kappa) * z_a)
    }
}

/// Scalar products `ε̂⁺_p(k') · ε̂⁻_q(k'')` on the imaginary axis, in the
/// order TE·TE, TE·TM, TM·TE, TM·TM.
pub fn polarization_dots(p: &KernelPoint) -> [f64; 4] {
    let q = C / p.xi;
    let (ka, kb) = (p.fresnel1.kappa, p.fresnel2.kappa);
    [
        p.cos,
        q * kb * p.sin,
        q * ka * p.sin,
        -q * q * (p.k1 * p.k2 + ka * kb * p.cos),
    ]
}

/// `Λ⁽¹⁾ = Λ₊ - Λ₋` in the (TE, TM) basis.
///
/// Panics if `1 ± β β_t` vanishes, which cannot happen for `ξ > 0`.
pub fn lambda_matrix(p: &KernelPoint) -> [[f64; 2]; 2] {
    let (f1, f2) = (&p.fresnel1, &p.fresnel2);
    let sqrt_eps_q = libm::sqrt(p.medium.eps_q2);
    let b1 = f1.kappa_t / sqrt_eps_q;
    let b2 = f2.kappa_t / sqrt_eps_q;
    let bbt = p.k1 * p.k1 / (f1.kappa * f1.kappa_t);
    let bbt2 = (p.k1 / f1.kappa) * (p.k2 / f2.kappa_t);
    let mut out = [[0.0; 2]; 2];
    for (sign, s) in [(1.0, 1.0), (-1.0, -1.0)] {
        let den = 1.0 + sign * bbt;
        assert!(den.abs() > 1e-300, "1 ± β β_t vanished");
        let pref = f1.kappa_t + sign * f1.kappa;
        let m = [
            [p.cos, p.sin],
            [-p.sin / den, (p.cos + sign * bbt2) / den],
        ];
        // B_t⁻¹ M B'_t with B = diag(1, c κ_t / (√ε ξ))
        let scaled = [
            [m[0][0], m[0][1] * b2],
            [m[1][0] / b1, m[1][1] * b2 / b1],
        ];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += s * pref * scaled[i][j];
            }
        }
    }
    out
}

/// First-order non-specular reflection coefficients
/// `R⁽¹⁾_{pq}(k', k'') = u_{pq} Λ⁽¹⁾_{pq}` per unit profile amplitude, 1/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonSpecularBlock {
    /// Indexed `[p'][p'']` with 0 = TE, 1 = TM.
    pub r: [[f64; 2]; 2],
}

/// `u_{pq} = r^p(k') t^q(k'') / t^p(k')`.
fn u_matrix(p: &KernelPoint) -> [[f64; 2]; 2] {
    let (f1, f2) = (&p.fresnel1, &p.fresnel2);
    let r = [f1.r_te, f1.r_tm];
    let t1 = [f1.t_te, f1.t_tm];
    let t2 = [f2.t_te, f2.t_tm];
    let mut u = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            u[i][j] = r[i] * t2[j] / t1[i];
        }
    }
    u
}

pub fn nonspecular_block(p: &KernelPoint) -> NonSpecularBlock {
    let l = lambda_matrix(p);
    let u = u_matrix(p);
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = u[i][j] * l[i][j];
        }
    }
    NonSpecularBlock { r }
}

/// `a_{k',k''}` assembled from the polarization products and the explicit
/// `R⁽¹⁾` block (not premultiplied). Independent of [`a_exact`]; used to
/// cross-check it.
pub fn a_from_block(p: &KernelPoint, z_a: f64) -> f64 {
    let d = polarization_dots(p);
    let b = nonspecular_block(p).r;
    let sum = d[0] * b[0][0] + d[1] * b[0][1] + d[2] * b[1][0] + d[3] * b[1][1];
    p.exp_factor(z_a) / (2.0 * p.fresnel2.kappa) * sum
}

/// `ξ² a_{k',k''}` for a dielectric half-space with finite `ε(iξ)`.
///
/// Panics if the TM denominator `ξ²/c² - κ'²(ε + 1)` is not negative or the
/// point carries a perfect conductor.
pub fn a_exact(p: &KernelPoint, z_a: f64) -> f64 {
    assert!(!p.medium.is_perfect(), "a_exact called with a perfect conductor; use a_perfect");
    let (f1, f2) = (&p.fresnel1, &p.fresnel2);
    let eps = p.medium.eps;
    let xi2 = p.xi * p.xi;
    let c2 = C * C;
    let (ka, kb) = (f1.kappa, f2.kappa);
    let (kta, ktb) = (f1.kappa_t, f2.kappa_t);
    // ξ²/c² - κ'²(ε+1) = -(ε ξ²/c² + (ε+1) k'²)
    let den = -(p.medium.eps_q2 + (eps + 1.0) * p.k1 * p.k1);
    assert!(den < 0.0, "TM denominator must be negative, got {den:e}");
    let s2 = p.sin * p.sin;

    // transmission ratios with √ε cancelled
    let te_ratio = (kb / (kb + ktb)) * ((ka + kta) / ka); // t_TE(k'')/t_TE(k')
    let tm_ratio = (kb / (eps * kb + ktb)) * ((eps * ka + kta) / ka); // t_TM(k'')/t_TM(k')
    let tm_te = 2.0 * kb / (eps * kb + ktb) * (ka + kta) / (2.0 * ka); // t_TM(k'')/(√ε t_TE(k'))
    let te_tm = (2.0 * kb / (kb + ktb)) * (eps * ka + kta) / (2.0 * ka); // √ε t_TE(k'')/t_TM(k')

    let ee = xi2 * p.cos * p.cos * f1.r_te * te_ratio;
    let em = c2 * kb * ktb * s2 * f1.r_te * tm_te;
    let me = xi2 * ka * kta * s2 * f1.r_tm * te_tm / den;
    let mm = c2 * (p.k1 * p.k2 + ka * kb * p.cos) * (eps * p.k1 * p.k2 + kta * ktb * p.cos) * f1.r_tm * tm_ratio / den;
    p.exp_factor(z_a) * (ka / kb) * (ee + em + me + mm)
}

/// `ξ² a_{k',k''}` for a perfect reflector:
/// `½ e^{-(κ'+κ'')z} {ξ² [k² + (κ'-κ'')²]/(κ'κ'') + c² [k² - (κ'+κ'')²]}`.
pub fn a_perfect(p: &KernelPoint, z_a: f64) -> f64 {
    let (ka, kb) = (p.fresnel1.kappa, p.fresnel2.kappa);
    let k2 = p.k_transfer_sq();
    let d = ka - kb;
    let s = ka + kb;
    0.5 * p.exp_factor(z_a) * (p.xi * p.xi * (k2 + d * d) / (ka * kb) + C * C * (k2 - s * s))
}

/// Dispatches on the medium: perfect conductor or finite permittivity.
pub fn a_premultiplied(p: &KernelPoint, z_a: f64) -> f64 {
    if p.medium.is_perfect() {
        a_perfect(p, z_a)
    } else {
        a_exact(p, z_a)
    }
}

/// Specular plane integrand `ξ² [r_TE - (1 + 2c²k²/ξ²) r_TM]`.
pub fn specular_premultiplied(f: &FresnelSet, k: f64, xi: f64) -> f64 {
    xi * xi * f.r_te - (xi * xi + 2.0 * C * C * k * k) * f.r_tm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::PermittivityModel;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn point(model: &PermittivityModel, xi: f64, k1: Vec2, k2: Vec2) -> KernelPoint {
        KernelPoint::new(model.at(xi).unwrap(), k1, k2)
    }

    fn const_eps(e: f64) -> PermittivityModel {
        PermittivityModel::DrudeLorentz {
            omega_dl: 1e40,
            eps_static: e,
        }
    }

    #[test]
    fn dots_examples() {
        let m = PermittivityModel::silicon();
        let k = Vec2::new(2e6, 0.0);
        let p = point(&m, 3e14, k, k * 0.4);
        let d = polarization_dots(&p);
        assert_eq!((d[1], d[2]), (0.0, 0.0));
        let p = point(&m, 3e14, k, Vec2::new(0.0, 1e6));
        assert!(polarization_dots(&p)[0].abs() < 1e-16);
        let p = point(&m, 3e14, k, k);
        let kap = p.fresnel1.kappa;
        assert_relative_eq!(
            polarization_dots(&p)[3],
            -(C / 3e14) * (C / 3e14) * (4e12 + kap * kap),
            max_relative = 1e-14
        );
    }

    #[test]
    fn specular_block_is_diagonal() {
        for m in [PermittivityModel::silicon(), PermittivityModel::gold(), const_eps(4.0)] {
            let k = Vec2::from_polar(3e6, 0.4);
            let p = point(&m, 5e14, k, k);
            let b = nonspecular_block(&p).r;
            let f = p.fresnel1;
            assert_relative_eq!(b[0][0], 2.0 * f.kappa * f.r_te, max_relative = 1e-12);
            assert_relative_eq!(b[1][1], 2.0 * f.kappa * f.r_tm, max_relative = 1e-12);
            assert!(b[0][1].abs() < 1e-12 * b[0][0].abs() && b[1][0].abs() < 1e-12 * b[0][0].abs());
        }
    }

    #[test]
    fn parallel_vectors_kill_off_diagonal_lambda() {
        let k = Vec2::new(3e6, 0.0);
        let p = point(&PermittivityModel::silicon(), 5e14, k, k * -0.5);
        let l = lambda_matrix(&p);
        assert_eq!(l[0][1], 0.0);
        assert_eq!(l[1][0], 0.0);
    }

    #[test]
    fn contracted_kernel_matches_explicit_block() {
        let models = [PermittivityModel::silicon(), PermittivityModel::gold(), const_eps(2.5)];
        let mut n = 0;
        for m in &models {
            for &xi in &[1e12, 3e14, 1e16] {
                for &(a, fa, b, fb) in &[(1e6, 0.2, 3e6, 2.0), (5e6, 0.0, 1e5, 1.0), (2e5, 3.0, 2e5, -1.2)] {
                    let p = point(m, xi, Vec2::from_polar(a, fa), Vec2::from_polar(b, fb));
                    let z = 4e-7;
                    let want = a_from_block(&p, z);
                    let got = a_exact(&p, z) / (xi * xi);
                    assert_relative_eq!(got, want, max_relative = 1e-9);
                    n += 1;
                }
            }
        }
        assert_eq!(n, 27);
    }

    #[test]
    fn specular_limit_identity_on_log_grid() {
        for m in [PermittivityModel::silicon(), PermittivityModel::gold(), const_eps(7.0)] {
            for i in 0..=20 {
                let xi = libm::pow(10.0, 11.0 + 0.3 * i as f64);
                for j in 0..=20 {
                    let k = libm::pow(10.0, 3.0 + 0.3 * j as f64);
                    let kv = Vec2::from_polar(k, 0.77);
                    let p = point(&m, xi, kv, kv);
                    let z = 1e-6;
                    let f = p.fresnel1;
                    let want = libm::exp(-2.0 * f.kappa * z) * specular_premultiplied(&f, k, xi);
                    let got = a_exact(&p, z);
                    assert!(
                        (got - want).abs() <= 1e-10 * want.abs() + 1e-300,
                        "xi={xi:e} k={k:e}: {got:e} vs {want:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn perfect_kernel_specular_point() {
        let (xi, k) = (2e14, 1.3e6);
        let m = PermittivityModel::PerfectConductor;
        let kv = Vec2::new(k, 0.0);
        let p = point(&m, xi, kv, kv);
        let z = 2e-6;
        let kap = p.fresnel1.kappa;
        // r_TE = -1, r_TM = 1 in the specular integrand
        let want = libm::exp(-2.0 * kap * z) * (-xi * xi - (xi * xi + 2.0 * C * C * k * k));
        assert_relative_eq!(a_perfect(&p, z), want, max_relative = 1e-13);
        assert_relative_eq!(a_perfect(&p, z), -0.5 * libm::exp(-2.0 * kap * z) * C * C * 4.0 * kap * kap, max_relative = 1e-13);
    }

    #[test]
    fn perfect_kernel_symmetric() {
        let m = PermittivityModel::PerfectConductor;
        let a = Vec2::from_polar(2e6, 0.3);
        let b = Vec2::from_polar(7e5, 2.1);
        let p = point(&m, 1e14, a, b);
        let q = point(&m, 1e14, b, a);
        assert_relative_eq!(a_perfect(&p, 1e-6), a_perfect(&q, 1e-6), max_relative = 1e-14);
    }

    #[test]
    fn epsilon_ramp_tends_to_perfect_kernel() {
        let cases = [
            (3e14, Vec2::from_polar(1e6, 0.3), Vec2::from_polar(2e6, 1.7)),
            (1e13, Vec2::from_polar(4e5, 0.0), Vec2::from_polar(1e5, 2.9)),
            (2e15, Vec2::from_polar(5e6, 1.0), Vec2::from_polar(5e6, 1.5)),
        ];
        for (xi, a, b) in cases {
            let z = 1e-6;
            let perfect = a_perfect(&point(&PermittivityModel::PerfectConductor, xi, a, b), z);
            let mut devs = Vec::new();
            for e in [1e3, 1e5, 1e7, 1e9] {
                let v = a_exact(&point(&const_eps(e), xi, a, b), z);
                devs.push((v / perfect - 1.0).abs());
            }
            assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
            // the approach is O(1/√ε): each step of 100 in ε gains a decade
            assert!(devs[3] < 0.12 * devs[2], "{devs:?}");
        }
    }

    #[test]
    fn exponential_factor_is_explicit() {
        let p = point(&PermittivityModel::silicon(), 4e14, Vec2::from_polar(1e6, 0.1), Vec2::from_polar(3e6, 1.1));
        let (z1, z2) = (3e-7, 6e-7);
        let ratio = a_exact(&p, z2) / a_exact(&p, z1);
        let want = libm::exp(-(p.fresnel1.kappa + p.fresnel2.kappa) * (z2 - z1));
        assert_relative_eq!(ratio, want, max_relative = 1e-13);
    }

    #[test]
    fn finite_at_vanishing_frequency() {
        let p = point(&PermittivityModel::gold(), 1e-3, Vec2::from_polar(1e6, 0.1), Vec2::from_polar(3e6, 1.1));
        assert!(a_exact(&p, 1e-6).is_finite());
        let p = point(&PermittivityModel::silicon(), 1e-3, Vec2::from_polar(1e6, 0.0), Vec2::from_polar(1e-3, 0.0));
        assert!(a_exact(&p, 1e-6).is_finite());
    }

    proptest! {
        #[test]
        fn rotation_invariance(
            xi in 1e11f64..1e17, ka in 1e3f64..1e8, kb in 1e3f64..1e8,
            fa in 0.0f64..core::f64::consts::TAU, fb in 0.0f64..core::f64::consts::TAU, rot in 0.0f64..core::f64::consts::TAU,
            model in 0usize..3,
        ) {
            let m = [PermittivityModel::silicon(), PermittivityModel::gold(), PermittivityModel::PerfectConductor][model].clone();
            let (a, b) = (Vec2::from_polar(ka, fa), Vec2::from_polar(kb, fb));
            let z = 5e-7;
            let v0 = a_premultiplied(&point(&m, xi, a, b), z);
            let v1 = a_premultiplied(&point(&m, xi, a.rotate(rot), b.rotate(rot)), z);
            prop_assert!((v0 - v1).abs() <= 1e-9 * v0.abs() + 1e-300);
        }

        #[test]
        fn tm_denominator_negative(xi in 0.0f64..1e18, k in 0.0f64..1e9, model in 0usize..2) {
            let m = [PermittivityModel::silicon(), PermittivityModel::gold()][model].clone();
            let med = m.at(xi.max(1e-6)).unwrap();
            let den = -(med.eps_q2 + (med.eps + 1.0) * k * k);
            prop_assert!(den < 0.0);
        }
    }
}
