//! Canonical JSON format for elements of `Σ_n(𝔤)`.

use serde::{Deserialize, Serialize};

use crate::algebra::Poly;
use crate::forms::{omega, PolyForm, VectorForm};
use crate::lie::{DGLAModel, Vector};

use super::{SigmaError, SigmaSimplex, TensorAlgebra};

/// One term `coeffs · dt_{i1} ∧ … ∧ dt_{ik}` with `1 ≤ i1 < … < ik ≤ n`;
/// its coefficients lie in `𝔤^{1-k}` and are written in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaTerm {
    pub form: Vec<usize>,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaFile {
    pub n: usize,
    pub terms: Vec<SigmaTerm>,
}

impl SigmaSimplex {
    pub fn to_file(&self) -> SigmaFile {
        let mut terms = Vec::new();
        for form in self.mu.parts.values() {
            for (mask, v) in form.terms() {
                terms.push(SigmaTerm {
                    form: (0..self.n)
                        .filter(|l| mask & (1 << l) != 0)
                        .map(|l| l + 1)
                        .collect(),
                    coeffs: v.0.iter().map(Poly::to_string).collect(),
                });
            }
        }
        SigmaFile { n: self.n, terms }
    }

    /// Reads and shape-checks a simplex; the Maurer-Cartan equation is not
    /// checked here.
    pub fn from_file(model: &DGLAModel, file: &SigmaFile) -> Result<Self, SigmaError> {
        let n = file.n;
        let t = TensorAlgebra::new(model, n);
        let ctx = omega(n);
        let mut parts: Vec<(u32, VectorForm)> = Vec::new();
        for term in &file.terms {
            let mut mask = 0u32;
            for (pos, &i) in term.form.iter().enumerate() {
                if i == 0 || i > n || (pos > 0 && term.form[pos - 1] >= i) {
                    return Err(SigmaError::File(format!(
                        "form indices {:?} must increase within 1..={n}",
                        term.form
                    )));
                }
                mask |= 1 << (i - 1);
            }
            let coeffs = term
                .coeffs
                .iter()
                .map(|s| s.parse::<Poly>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| SigmaError::File(e.to_string()))?;
            let form = PolyForm::from_terms(&ctx, [(mask, Vector(coeffs))]);
            parts.push((term.form.len() as u32, form));
        }
        Ok(SigmaSimplex {
            n,
            mu: t.element(1, parts)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("simplex serializes")
    }

    pub fn from_json(model: &DGLAModel, text: &str) -> Result<Self, SigmaError> {
        let file: SigmaFile = serde_json::from_str(text).map_err(|e| {
            SigmaError::File(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        SigmaSimplex::from_file(model, &file)
    }
}
