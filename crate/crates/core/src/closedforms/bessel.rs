//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! Power series for `x <= 2`; above that, a Chebyshev expansion of
//! `e^x √x K_ν(x)` in `s = 4/x - 1`.

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;
const SERIES_LIMIT: f64 = 2.0;

/// `e^x √x K₀(x)`, Chebyshev coefficients on `x ∈ [2, ∞)`, leading term halved.
const CHEB_K0: [f64; 26] = [
    1.22015154103297773,
    -0.0314481013119645005,
    0.00156988388573005337,
    -0.000128495495816278026,
    0.0000139498137188764994,
    -1.83175552271911948e-6,
    2.76681363944501508e-7,
    -4.66048989768794767e-8,
    8.57403401741422609e-9,
    -1.69753450938906152e-9,
    3.57739728140032845e-10,
    -7.95748924447739704e-11,
    1.85594911495492655e-11,
    -4.51459788337451918e-12,
    1.14034058820734423e-12,
    -2.98009692314817835e-13,
    8.03289077506837437e-14,
    -2.22751332674629636e-14,
    6.34007647627664596e-15,
    -1.84859337792090717e-15,
    5.51205599940433327e-16,
    -1.67823112575490042e-16,
    5.21039177764354903e-17,
    -1.6475805939842516e-17,
    5.30043377117706547e-18,
    -1.7331712005814716e-18,
];

/// `e^x √x K₁(x)`, same layout.
const CHEB_K1: [f64; 26] = [
    1.36031309524222133,
    0.103923736576817238,
    -0.00285781685962277939,
    0.000195215518471351631,
    -0.0000193619797416608296,
    2.40648494783721712e-6,
    -3.50196060308781254e-7,
    5.74108412545004929e-8,
    -1.0345762465678097e-8,
    2.01504975519703462e-9,
    -4.19035475934192558e-10,
    9.21831518760531413e-11,
    -2.12996783842779102e-11,
    5.13963967348234354e-12,
    -1.28917396094982294e-12,
    3.34841966605224312e-13,
    -8.97670518201014607e-14,
    2.47715442421959868e-14,
    -7.01983708921476885e-15,
    2.03870316623986088e-15,
    -6.05704727064301772e-16,
    1.83809357524304519e-16,
    -5.68946284919364307e-17,
    1.79405104788634507e-17,
    -5.75674448207301964e-18,
    1.87786519016166885e-18,
];

fn clenshaw(c: &[f64], s: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * s * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    s * b1 - b2 + c[0]
}

/// Returns `(I₀, I₁, Σ H_k t^k/(k!)², Σ [ψ(k+1)+ψ(k+2)] t^k/(k!(k+1)!))`
/// with `t = x²/4`.
fn series(x: f64) -> (f64, f64, f64, f64) {
    let t = 0.25 * x * x;
    let (mut i0, mut i1) = (0.0, 0.0);
    let (mut s0, mut s1) = (0.0, 0.0);
    // term0 = t^k/(k!)², term1 = t^k/(k!(k+1)!)
    let (mut term0, mut term1) = (1.0, 1.0);
    let mut harmonic = 0.0;
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            term0 *= t / (kf * kf);
            term1 *= t / (kf * (kf + 1.0));
            harmonic += 1.0 / kf;
        }
        i0 += term0;
        i1 += term1;
        s0 += harmonic * term0;
        // ψ(k+1) + ψ(k+2) = 2H_k + 1/(k+1) - 2γ
        s1 += (2.0 * harmonic + 1.0 / (kf + 1.0) - 2.0 * EULER_GAMMA) * term1;
        if term0 < 1e-18 * i0 && k > 2 {
            break;
        }
    }
    (i0, 0.5 * x * i1, s0, s1)
}

fn check(x: f64) {
    assert!(x > 0.0, "modified Bessel K needs x > 0, got {x}");
}

/// `K₀(x)`, `x > 0`.
pub fn bessel_k0(x: f64) -> f64 {
    check(x);
    if x <= SERIES_LIMIT {
        let (i0, _, s0, _) = series(x);
        -(libm::log(0.5 * x) + EULER_GAMMA) * i0 + s0
    } else {
        bessel_k0_scaled(x) * libm::exp(-x)
    }
}

/// `K₁(x)`, `x > 0`.
pub fn bessel_k1(x: f64) -> f64 {
    check(x);
    if x <= SERIES_LIMIT {
        let (_, i1, _, s1) = series(x);
        1.0 / x + libm::log(0.5 * x) * i1 - 0.25 * x * s1
    } else {
        bessel_k1_scaled(x) * libm::exp(-x)
    }
}

/// `e^x K₀(x)`.
pub fn bessel_k0_scaled(x: f64) -> f64 {
    check(x);
    if x <= SERIES_LIMIT {
        libm::exp(x) * bessel_k0(x)
    } else {
        clenshaw(&CHEB_K0, 4.0 / x - 1.0) / libm::sqrt(x)
    }
}

/// `e^x K₁(x)`.
pub fn bessel_k1_scaled(x: f64) -> f64 {
    check(x);
    if x <= SERIES_LIMIT {
        libm::exp(x) * bessel_k1(x)
    } else {
        clenshaw(&CHEB_K1, 4.0 / x - 1.0) / libm::sqrt(x)
    }
}

/// `(K₀(x), K₁(x))`.
pub fn bessel_k0_k1(x: f64) -> (f64, f64) {
    (bessel_k0(x), bessel_k1(x))
}
