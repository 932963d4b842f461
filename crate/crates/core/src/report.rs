//! Diagnostic reports shared by the validators.

use serde::{Deserialize, Serialize};

/// A named nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    pub value: String,
}

/// Residuals of a validation; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub residuals: Vec<Residual>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn push(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.residuals.push(Residual {
            name: name.into(),
            value: value.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.residuals.extend(other.residuals);
    }
}
