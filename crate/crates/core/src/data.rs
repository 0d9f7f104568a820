//! Input data: the built-in repair-times sample and a one-column text reader.

use std::path::Path;

use crate::error::{Error, Result};
use crate::estimation::Dataset;

/// Token accepted by [`ingest`] for the built-in sample.
pub const BUILTIN_REPAIR_TIMES: &str = "builtin:repair-times";

/// Active repair times (hours) of 40 airborne communication transceivers.
pub const REPAIR_TIMES: [f64; 40] = [
    0.50, 0.60, 0.60, 0.70, 0.70, 0.70, 0.80, 0.80, 1.00, 1.00, 1.00, 1.00, 1.10, 1.30, 1.50,
    1.50, 1.50, 1.50, 2.00, 2.00, 2.20, 2.50, 2.70, 3.00, 3.00, 3.30, 4.00, 4.00, 4.50, 4.70,
    5.00, 5.40, 5.40, 7.00, 7.50, 8.80, 9.00, 10.20, 22.00, 24.50,
];

pub fn repair_times() -> Dataset {
    Dataset::new(REPAIR_TIMES.to_vec(), "repair-times").expect("built-in data is valid")
}

/// Loads [`BUILTIN_REPAIR_TIMES`] or a file path.
pub fn ingest(source: &str) -> Result<Dataset> {
    if source == BUILTIN_REPAIR_TIMES {
        return Ok(repair_times());
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::Data(format!("cannot read {source}: {e}")))?;
    let label = Path::new(source)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| source.to_string());
    parse(&text, label)
}

/// One value per line. Blank lines are ignored; the first non-blank line
/// may be a non-numeric header.
pub fn parse(text: &str, label: impl Into<String>) -> Result<Dataset> {
    let mut values = Vec::new();
    let mut seen_first = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let first = !seen_first;
        seen_first = true;
        let v: f64 = match line.parse() {
            Ok(v) => v,
            Err(_) if first && !starts_numeric(line) => continue,
            Err(_) => {
                return Err(Error::Data(format!(
                    "line {}: cannot parse '{line}' as a number",
                    idx + 1
                )))
            }
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Data(format!(
                "line {}: value {line} is not positive",
                idx + 1
            )));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Data("no data values found".into()));
    }
    Dataset::new(values, label)
}

fn starts_numeric(line: &str) -> bool {
    line.starts_with(|c: char| c.is_ascii_digit() || matches!(c, '-' | '+' | '.' | '\u{2212}'))
}
