//! Monotone piecewise-cubic interpolation (Fritsch-Carlson) on log-log data.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Rule applied outside the sample range of a [`LogTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extrapolation {
    /// Out-of-range queries fail with [`Error::OutOfRange`].
    Error,
    /// Hold the boundary value.
    Constant,
    /// Continue as `y ∝ x^p` from the boundary sample.
    PowerLaw(f64),
    /// Low side only: blend quadratically in `x` towards a known value at
    /// `x = 0`, i.e. `y(x) = y0 + (y1 - y0) (x / x1)^2`.
    ToStatic(f64),
}

/// Samples `(x_i, y_i)` with `x_i > 0` strictly increasing and `y_i > 0`,
/// interpolated with a monotone cubic in `(ln x, ln y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogTable {
    x: Vec<f64>,
    y: Vec<f64>,
    lx: Vec<f64>,
    ly: Vec<f64>,
    slopes: Vec<f64>,
    low: Extrapolation,
    high: Extrapolation,
}

impl LogTable {
    pub fn new(x: &[f64], y: &[f64], low: Extrapolation, high: Extrapolation) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Invalid("table abscissae and ordinates differ in length"));
        }
        if x.is_empty() {
            return Err(Error::Invalid("table needs at least one sample"));
        }
        if x.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::Invalid("table abscissae must be positive and finite"));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Invalid("table abscissae must be strictly increasing"));
        }
        if y.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::Invalid("table ordinates must be positive and finite"));
        }
        let lx: Vec<f64> = x.iter().map(|&v| libm::log(v)).collect();
        let ly: Vec<f64> = y.iter().map(|&v| libm::log(v)).collect();
        let slopes = fritsch_carlson(&lx, &ly);
        Ok(LogTable {
            x: x.to_vec(),
            y: y.to_vec(),
            lx,
            ly,
            slopes,
            low,
            high,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    pub fn low(&self) -> Extrapolation {
        self.low
    }

    pub fn high(&self) -> Extrapolation {
        self.high
    }

    /// True when every `x >= 0` can be evaluated.
    pub fn covers_half_line(&self) -> bool {
        !matches!(self.low, Extrapolation::Error | Extrapolation::PowerLaw(_))
            && !matches!(self.high, Extrapolation::Error | Extrapolation::ToStatic(_))
    }

    /// Sample points as `(x, y)` pairs.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }

    pub fn eval(&self, x: f64, what: &'static str) -> Result<f64> {
        let n = self.lx.len();
        let (x0, x1) = (self.x_min(), self.x_max());
        let out = |_: ()| Error::OutOfRange {
            what,
            value: x,
            min: x0,
            max: x1,
        };
        if x < x0 {
            let y0 = self.y[0];
            return match self.low {
                Extrapolation::Error => Err(out(())),
                Extrapolation::Constant => Ok(y0),
                Extrapolation::PowerLaw(p) => {
                    if x <= 0.0 {
                        Err(out(()))
                    } else {
                        Ok(y0 * libm::pow(x / x0, p))
                    }
                }
                Extrapolation::ToStatic(ys) => {
                    let t = x / x0;
                    Ok(ys + (y0 - ys) * t * t)
                }
            };
        }
        if x > x1 {
            let y1 = self.y[n - 1];
            return match self.high {
                Extrapolation::Error | Extrapolation::ToStatic(_) => Err(out(())),
                Extrapolation::Constant => Ok(y1),
                Extrapolation::PowerLaw(p) => Ok(y1 * libm::pow(x / x1, p)),
            };
        }
        if n == 1 || x == x0 {
            return Ok(self.y[0]);
        }
        if x == x1 {
            return Ok(self.y[n - 1]);
        }
        let t = libm::log(x);
        // last index i with lx[i] <= t, clamped to a valid segment
        let i = match self.lx.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        let h = self.lx[i + 1] - self.lx[i];
        let s = (t - self.lx[i]) / h;
        let (h00, h10, h01, h11) = hermite(s);
        let v = h00 * self.ly[i]
            + h10 * h * self.slopes[i]
            + h01 * self.ly[i + 1]
            + h11 * h * self.slopes[i + 1];
        Ok(libm::exp(v))
    }
}

fn hermite(s: f64) -> (f64, f64, f64, f64) {
    let s2 = s * s;
    let s3 = s2 * s;
    (
        2.0 * s3 - 3.0 * s2 + 1.0,
        s3 - 2.0 * s2 + s,
        -2.0 * s3 + 3.0 * s2,
        s3 - s2,
    )
}

fn fritsch_carlson(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = alloc::vec![0.0; n];
    if n < 2 {
        return m;
    }
    let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i])).collect();
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for i in 1..n - 1 {
        m[i] = if d[i - 1] * d[i] <= 0.0 {
            0.0
        } else {
            (d[i - 1] + d[i]) / 2.0
        };
    }
    for i in 0..n - 1 {
        if d[i] == 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        let a = m[i] / d[i];
        let b = m[i + 1] / d[i];
        let r = a * a + b * b;
        if r > 9.0 {
            let tau = 3.0 / libm::sqrt(r);
            m[i] = tau * a * d[i];
            m[i + 1] = tau * b * d[i];
        }
    }
    m
}
