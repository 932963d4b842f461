//! Loading models and simplices from their canonical JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::deligne::{nerve_validate, DeligneError, NerveFile, NerveSimplex};
use crate::hinich::{sigma_defect, SigmaError, SigmaSimplex};
use crate::lie::{DGLAModel, LieError};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Model { path: PathBuf, source: LieError },
    #[error("{path}: {source}")]
    Sigma { path: PathBuf, source: SigmaError },
    #[error("{path}: {message}")]
    Nerve { path: PathBuf, message: String },
    #[error("{path}: {what} fails: {report:?}")]
    Invariant {
        path: PathBuf,
        what: &'static str,
        report: Report,
    },
}

/// A model together with optional simplices over it, all validated.
#[derive(Clone, Debug)]
pub struct ModelBundle {
    pub model: DGLAModel,
    pub sigma: Option<SigmaSimplex>,
    pub nerve: Option<NerveSimplex>,
}

fn read(path: &Path) -> Result<String, BundleError> {
    fs::read_to_string(path).map_err(|source| BundleError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a model file; every DGLA axiom and the declared class are checked.
pub fn parse_model(path: &Path) -> Result<DGLAModel, BundleError> {
    DGLAModel::from_json(&read(path)?).map_err(|source| BundleError::Model {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a simplex of `Σ(𝔤)` without checking the Maurer-Cartan equation.
pub fn read_sigma(model: &DGLAModel, path: &Path) -> Result<SigmaSimplex, BundleError> {
    SigmaSimplex::from_json(model, &read(path)?).map_err(|source| BundleError::Sigma {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a simplex of the nerve without checking its conditions.
pub fn read_nerve(model: &DGLAModel, path: &Path) -> Result<NerveSimplex, BundleError> {
    let bad = |message: String| BundleError::Nerve {
        path: path.to_path_buf(),
        message,
    };
    let file: NerveFile = serde_json::from_str(&read(path)?)
        .map_err(|e| bad(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let s = NerveSimplex::from_file(&file).map_err(|e: DeligneError| bad(e.to_string()))?;
    let dims = s.mu.iter().map(|m| (m.coeffs.dim(), model.dim(1)));
    let dims = dims
        .chain(s.g.values().map(|g| (g.coeffs.dim(), model.dim(0))))
        .chain(s.c.values().map(|c| (c.coeffs.dim(), model.dim(-1))));
    for (found, expected) in dims {
        if found != expected {
            return Err(bad(format!(
                "entry has {found} coefficients, the model needs {expected}"
            )));
        }
    }
    Ok(s)
}

impl ModelBundle {
    /// Loads a model and optional simplices, running every invariant: the
    /// simplex must be Maurer-Cartan and the nerve simplex must pass
    /// `nerve_validate`.
    pub fn load(
        model: &Path,
        sigma: Option<&Path>,
        nerve: Option<&Path>,
    ) -> Result<Self, BundleError> {
        let m = parse_model(model)?;
        let sigma = match sigma {
            Some(path) => {
                let s = read_sigma(&m, path)?;
                let defect = sigma_defect(&m, &s);
                if !defect.is_zero() {
                    let mut report = Report::default();
                    report.push("Maurer-Cartan defect", format!("{:?}", defect.total));
                    return Err(BundleError::Invariant {
                        path: path.to_path_buf(),
                        what: "Maurer-Cartan equation",
                        report,
                    });
                }
                Some(s)
            }
            None => None,
        };
        let nerve = match nerve {
            Some(path) => {
                let s = read_nerve(&m, path)?;
                let report = nerve_validate(&m, &s);
                if !report.is_valid() {
                    return Err(BundleError::Invariant {
                        path: path.to_path_buf(),
                        what: "nerve conditions",
                        report,
                    });
                }
                Some(s)
            }
            None => None,
        };
        Ok(ModelBundle {
            model: m,
            sigma,
            nerve,
        })
    }
}
