//! One-dimensional globally adaptive integrators.
//!
//! Both rules keep a list of panels and bisect the one with the largest
//! error estimate until the summed estimate meets the tolerance. Panel sums
//! are accumulated in panel order with Neumaier compensation, so results do
//! not depend on bisection history beyond the final panel set.

use alloc::vec::Vec;

/// Gauss-Kronrod 7/15 abscissae (non-negative half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss 7-point weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Value with absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: 0.0,
        error: 0.0,
    };

    pub fn new(value: f64, error: f64) -> Self {
        Estimate { value, error }
    }

    pub fn scale(self, s: f64) -> Self {
        Estimate::new(self.value * s, self.error * s.abs())
    }

    pub fn rel_error(&self) -> f64 {
        if self.value == 0.0 {
            if self.error == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.error / self.value.abs()
        }
    }
}

/// Result of one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub value: f64,
    /// Absolute error estimate including error propagated from the
    /// integrand.
    pub error: f64,
    /// Integral of `|f|`, used for tolerance floors by callers.
    pub l1: f64,
    pub converged: bool,
    pub evaluations: usize,
}

impl Outcome {
    pub fn estimate(&self) -> Estimate {
        Estimate::new(self.value, self.error)
    }
}

/// Stopping rule: `error <= max(abs, rel * |I|, l1_rel * ∫|f|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub l1_rel: f64,
    pub max_panels: usize,
}

impl Tolerance {
    pub fn relative(rel: f64, max_panels: usize) -> Self {
        Tolerance {
            rel,
            abs: 0.0,
            l1_rel: rel * 1e-3,
            max_panels,
        }
    }

    fn target(&self, value: f64, l1: f64) -> f64 {
        self.abs.max(self.rel * value.abs()).max(self.l1_rel * l1)
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    l1: f64,
}

fn compensated_sum(it: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in it {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// A panel rule: evaluates `f` on `[a, b]` returning (value, error, l1).
/// The integrand returns its own value and an absolute error estimate.
trait PanelRule {
    fn apply<F: FnMut(f64) -> (f64, f64)>(&self, f: &mut F, a: f64, b: f64) -> (f64, f64, f64);
    fn points(&self) -> usize;
}

struct Gk15;

impl PanelRule for Gk15 {
    fn apply<F: FnMut(f64) -> (f64, f64)>(&self, f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let (fc, ec) = f(c);
        let mut kron = WGK[7] * fc;
        let mut gauss = WG[3] * fc;
        let mut l1 = WGK[7] * fc.abs();
        let mut inner = WGK[7] * ec;
        for j in 0..7 {
            let dx = h * XGK[j];
            let (f1, e1) = f(c - dx);
            let (f2, e2) = f(c + dx);
            kron += WGK[j] * (f1 + f2);
            l1 += WGK[j] * (f1.abs() + f2.abs());
            inner += WGK[j] * (e1 + e2);
            if j % 2 == 1 {
                gauss += WG[j / 2] * (f1 + f2);
            }
        }
        let ah = h.abs();
        (kron * h, ((kron - gauss) * h).abs() + inner * ah, l1 * ah)
    }

    fn points(&self) -> usize {
        15
    }
}

/// Nested Clenshaw-Curtis pair with 9 and 17 points.
pub(crate) struct ClenshawCurtis {
    nodes: [f64; 17],
    w17: [f64; 17],
    w9: [f64; 9],
}

impl ClenshawCurtis {
    pub fn new() -> Self {
        let mut nodes = [0.0; 17];
        for (j, x) in nodes.iter_mut().enumerate() {
            *x = libm::cos(core::f64::consts::PI * j as f64 / 16.0);
        }
        let mut w17 = [0.0; 17];
        cc_weights(16, &mut w17);
        let mut w9 = [0.0; 9];
        cc_weights(8, &mut w9);
        ClenshawCurtis { nodes, w17, w9 }
    }
}

impl Default for ClenshawCurtis {
    fn default() -> Self {
        Self::new()
    }
}

/// Clenshaw-Curtis weights on [-1, 1] for nodes cos(j pi / n), j = 0..=n.
fn cc_weights(n: usize, w: &mut [f64]) {
    let nf = n as f64;
    for (j, wj) in w.iter_mut().enumerate().take(n + 1) {
        let theta = core::f64::consts::PI * j as f64 / nf;
        let mut s = 0.0;
        for k in 1..=n / 2 {
            let b = if 2 * k == n { 1.0 } else { 2.0 };
            s += b / (4.0 * (k * k) as f64 - 1.0) * libm::cos(2.0 * k as f64 * theta);
        }
        let c = if j == 0 || j == n { 1.0 } else { 2.0 };
        *wj = c / nf * (1.0 - s);
    }
}

impl PanelRule for ClenshawCurtis {
    fn apply<F: FnMut(f64) -> (f64, f64)>(&self, f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut i17 = 0.0;
        let mut i9 = 0.0;
        let mut l1 = 0.0;
        let mut inner = 0.0;
        for j in 0..17 {
            let (v, e) = f(c + h * self.nodes[j]);
            i17 += self.w17[j] * v;
            l1 += self.w17[j] * v.abs();
            inner += self.w17[j] * e;
            if j % 2 == 0 {
                i9 += self.w9[j / 2] * v;
            }
        }
        let ah = h.abs();
        (i17 * h, ((i17 - i9) * h).abs() + inner * ah, l1 * ah)
    }

    fn points(&self) -> usize {
        17
    }
}

fn adaptive<R: PanelRule, F: FnMut(f64) -> (f64, f64)>(
    rule: &R,
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: Tolerance,
) -> Outcome {
    let mut edges: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    edges.push(a);
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > lo && x < hi).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).unwrap());
    if a > b {
        inner.reverse();
    }
    inner.dedup();
    edges.extend(inner);
    edges.push(b);

    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    let mut evaluations = 0;
    for w in edges.windows(2) {
        let (value, error, l1) = rule.apply(&mut f, w[0], w[1]);
        evaluations += rule.points();
        panels.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
            l1,
        });
    }
    let max_panels = tol.max_panels.max(panels.len());
    loop {
        let value = compensated_sum(panels.iter().map(|p| p.value));
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let l1: f64 = panels.iter().map(|p| p.l1).sum();
        let done = error <= tol.target(value, l1);
        if done || panels.len() >= max_panels {
            return Outcome {
                value,
                error,
                l1,
                converged: done,
                evaluations,
            };
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, be), (i, p)| if p.error > be { (i, p.error) } else { (bi, be) });
        let p = panels[worst];
        let mid = 0.5 * (p.a + p.b);
        if mid == p.a || mid == p.b {
            // panel cannot be split further in floating point
            return Outcome {
                value,
                error,
                l1,
                converged: false,
                evaluations,
            };
        }
        let (v1, e1, l1a) = rule.apply(&mut f, p.a, mid);
        let (v2, e2, l1b) = rule.apply(&mut f, mid, p.b);
        evaluations += 2 * rule.points();
        panels[worst] = Panel {
            a: p.a,
            b: mid,
            value: v1,
            error: e1,
            l1: l1a,
        };
        panels.insert(
            worst + 1,
            Panel {
                a: mid,
                b: p.b,
                value: v2,
                error: e2,
                l1: l1b,
            },
        );
    }
}

/// Adaptive Gauss-Kronrod 7/15 on `[a, b]` with optional interior
/// breakpoints. The integrand returns `(value, abs_error)`; integrand errors
/// are propagated into the outcome.
pub fn gauss_kronrod<F: FnMut(f64) -> (f64, f64)>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: Tolerance,
) -> Outcome {
    adaptive(&Gk15, f, a, b, breaks, tol)
}

/// Adaptive nested Clenshaw-Curtis (9/17 points) on `[a, b]`.
pub(crate) fn clenshaw_curtis<F: FnMut(f64) -> (f64, f64)>(
    rule: &ClenshawCurtis,
    f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Outcome {
    adaptive(rule, f, a, b, &[], tol)
}

/// Convenience wrapper over [`gauss_kronrod`] for exact integrands.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, breaks: &[f64], tol: Tolerance) -> Outcome {
    gauss_kronrod(|x| (f(x), 0.0), a, b, breaks, tol)
}
