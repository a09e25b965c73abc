//! Two-column data files: `#` metadata lines, then a CSV header and rows.

use std::path::Path;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DataTable {
    /// `# key = value` lines, in file order.
    pub meta: Vec<(String, String)>,
    pub rows: Vec<(f64, f64)>,
}

impl DataTable {
    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn meta_f64(&self, key: &str) -> Result<Option<f64>> {
        self.meta_value(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::validation(format!("metadata {key}: '{v}' is not a number")))
            })
            .transpose()
    }
}

/// `# key = value` or `# key: value`; free-text comments yield `None`.
fn parse_meta(line: &str) -> Option<(String, String)> {
    let body = line.trim_start_matches('#').trim();
    let (k, v) = body
        .split_once('=')
        .or_else(|| body.split_once(':'))?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() || v.is_empty() || k.contains(char::is_whitespace) {
        return None;
    }
    Some((k.to_string(), v.to_string()))
}

pub fn parse_table(text: &str, columns: &[&str; 2], origin: &Path) -> Result<DataTable> {
    let mut meta = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        if line.trim_start().starts_with('#') {
            meta.extend(parse_meta(line.trim_start()));
        } else if !line.trim().is_empty() {
            body.push_str(line);
            body.push('\n');
        }
    }
    let csv_err = |source| CliError::Csv {
        path: origin.to_path_buf(),
        source,
    };
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(body.as_bytes());
    let header = rdr.headers().map_err(csv_err)?.clone();
    if header.len() != 2 || header.get(0) != Some(columns[0]) || header.get(1) != Some(columns[1]) {
        return Err(CliError::validation(format!(
            "{}: expected header '{},{}', found '{}'",
            origin.display(),
            columns[0],
            columns[1],
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let num = |j: usize| -> Result<f64> {
            let s = rec.get(j).unwrap_or("");
            s.parse::<f64>().map_err(|_| {
                CliError::validation(format!("{}: data row {}: '{}' is not a number", origin.display(), i + 1, s))
            })
        };
        rows.push((num(0)?, num(1)?));
    }
    Ok(DataTable { meta, rows })
}

pub fn read_table(path: &Path, columns: &[&str; 2]) -> Result<DataTable> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_table(&text, columns, path)
}
