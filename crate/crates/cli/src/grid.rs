//! Value grids: explicit lists or generated ranges.
//!
//! Text form, as accepted on the command line:
//! `1e-7,1e-6,1e-5`, `log:1e-8:1e-5:31` or `lin:0:1e-5:11`.

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Range(Range),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub from: f64,
    pub to: f64,
    pub n: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Log,
    Lin,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::List(v) => v.clone(),
            Grid::Range(r) => r.values(),
        }
    }

    /// Expands the grid and checks it is non-empty, finite and positive.
    pub fn positive(&self, what: &str) -> Result<Vec<f64>> {
        let v = self.values();
        if v.is_empty() {
            return Err(CliError::validation(format!("{what}: grid is empty")));
        }
        if let Some(x) = v.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(CliError::validation(format!("{what}: grid value {x} is not positive")));
        }
        Ok(v)
    }

    pub fn parse(s: &str) -> Result<Grid> {
        let bad = || CliError::validation(format!("cannot parse grid '{s}'"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let range = match s.split_once(':') {
            Some(("log", body)) => Some((body, Spacing::Log)),
            Some(("lin", body)) => Some((body, Spacing::Lin)),
            _ => None,
        };
        if let Some((body, spacing)) = range {
            let parts: Vec<&str> = body.split(':').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let n = parts[2].trim().parse::<usize>().map_err(|_| bad())?;
            return Ok(Grid::Range(Range {
                from: num(parts[0])?,
                to: num(parts[1])?,
                n,
                spacing,
            }));
        }
        s.split(',').map(num).collect::<Result<Vec<_>>>().map(Grid::List)
    }
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        match self.n {
            0 => Vec::new(),
            1 => vec![self.from],
            n => (0..n)
                .map(|i| {
                    let t = i as f64 / (n - 1) as f64;
                    match self.spacing {
                        Spacing::Log => self.from * (self.to / self.from).powf(t),
                        Spacing::Lin => self.from + (self.to - self.from) * t,
                    }
                })
                .collect(),
        }
    }
}
