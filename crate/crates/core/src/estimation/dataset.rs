use serde::Serialize;

use crate::error::{Error, Result};

/// Sorted positive observations with cached logarithms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    label: String,
    values: Vec<f64>,
    #[serde(skip)]
    logs: Vec<f64>,
}

impl Dataset {
    pub fn new(mut values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Data("dataset is empty".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Data(format!("value {v} is not a finite positive number")));
        }
        values.sort_by(f64::total_cmp);
        let logs = values.iter().map(|v| v.ln()).collect();
        Ok(Self {
            label: label.into(),
            values,
            logs,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn logs(&self) -> &[f64] {
        &self.logs
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn median(&self) -> f64 {
        let n = self.values.len();
        if n % 2 == 1 {
            self.values[n / 2]
        } else {
            0.5 * (self.values[n / 2 - 1] + self.values[n / 2])
        }
    }

    /// True when every observation is the same value.
    pub fn is_degenerate(&self) -> bool {
        self.values[0] == self.values[self.values.len() - 1]
    }
}
