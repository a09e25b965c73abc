//! CSV tables with a `#` preamble echoing the build constants and the run
//! parameters.

use std::io::Write;

use atomsurf_core::constants::{AMU, C, E_CHARGE, EPS0, HBAR};

use crate::error::{CliError, Result};

/// Numeric cells are written with ten significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.9e}")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub preamble: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(command: &str, columns: &[&'static str]) -> Self {
        let preamble = vec![
            format!("atomsurf {} {command}", env!("CARGO_PKG_VERSION")),
            format!("c = {C:e} m/s"),
            format!("hbar = {HBAR:e} J s"),
            format!("eps0 = {EPS0:e} F/m"),
            format!("e = {E_CHARGE:e} C"),
            format!("u = {AMU:e} kg"),
        ];
        Table {
            preamble,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl std::fmt::Display) {
        self.preamble.push(format!("{key} = {value}"));
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[j].parse().unwrap_or(f64::NAN)).collect())
    }

    pub fn write<W: Write>(&self, out: W) -> std::result::Result<(), csv::Error> {
        let mut out = out;
        for line in &self.preamble {
            writeln!(out, "# {line}")?;
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn write_to(&self, path: Option<&std::path::Path>) -> Result<()> {
        match path {
            Some(p) => {
                let f = std::fs::File::create(p).map_err(|source| CliError::Io {
                    path: p.to_path_buf(),
                    source,
                })?;
                self.write(std::io::BufWriter::new(f)).map_err(|source| CliError::Csv {
                    path: p.to_path_buf(),
                    source,
                })
            }
            None => self.write(std::io::stdout().lock()).map_err(|source| CliError::Csv {
                path: "<stdout>".into(),
                source,
            }),
        }
    }
}
