//! Python bindings: models, Maurer-Cartan simplices, the integration map and
//! the verification campaigns.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dgla_holonomy::algebra::{parse_rational, Poly};
use dgla_holonomy::catalog::{tensor_model, LieFamily};
use dgla_holonomy::checks::{run_campaign, CampaignParams, CheckKind, Format, VerificationReport};
use dgla_holonomy::deligne::{nerve_validate, NerveFile, NerveSimplex};
use dgla_holonomy::hinich::{generate_mc, sigma_defect, SigmaSimplex};
use dgla_holonomy::integration::integrate_simplex;
use dgla_holonomy::lie::{DGLAModel, Vector};
use dgla_holonomy::report::Report;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn residuals(report: &Report) -> Vec<(String, String)> {
    report
        .residuals
        .iter()
        .map(|r| (r.name.clone(), r.value.clone()))
        .collect()
}

/// A finite-dimensional nilpotent DGLA with exact rational structure constants.
#[pyclass(name = "Model", frozen)]
struct PyModel(DGLAModel);

#[pymethods]
impl PyModel {
    /// Parses and validates a model file.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        DGLAModel::from_json(text).map(PyModel).map_err(value_error)
    }

    /// The model `L ⊗ C` of a catalog Lie algebra with differential parameter `p`.
    #[staticmethod]
    #[pyo3(signature = (family, p = "1"))]
    fn catalog(family: &str, p: &str) -> PyResult<Self> {
        let family: LieFamily = family.parse().map_err(value_error)?;
        let p = parse_rational(p).map_err(value_error)?;
        tensor_model(&family.structure(), &p)
            .map(PyModel)
            .map_err(value_error)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn dim(&self, degree: i32) -> usize {
        self.0.dim(degree)
    }

    #[getter]
    fn nilpotency_class(&self) -> usize {
        self.0.class()
    }

    fn lower_central_class(&self) -> usize {
        self.0.lower_central_class()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(dim={}, degrees -1..2: {:?}, class={})",
            self.0.len(),
            (-1..=2).map(|d| self.0.dim(d)).collect::<Vec<_>>(),
            self.0.class()
        )
    }
}

/// An n-simplex of Hinich's simplicial set.
#[pyclass(name = "Sigma", frozen)]
struct PySigma(SigmaSimplex);

#[pymethods]
impl PySigma {
    /// Parses a simplex file; the Maurer-Cartan equation is not checked.
    #[staticmethod]
    fn from_json(model: &PyModel, text: &str) -> PyResult<Self> {
        SigmaSimplex::from_json(&model.0, text)
            .map(PySigma)
            .map_err(value_error)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    fn is_mc(&self, model: &PyModel) -> bool {
        sigma_defect(&model.0, &self.0).is_zero()
    }
}

/// An n-simplex of the nerve of the Deligne 2-groupoid.
#[pyclass(name = "Nerve", frozen)]
struct PyNerve(NerveSimplex);

#[pymethods]
impl PyNerve {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file: NerveFile = serde_json::from_str(text).map_err(value_error)?;
        NerveSimplex::from_file(&file)
            .map(PyNerve)
            .map_err(value_error)
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.0.to_file()).expect("nerve serializes")
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    /// Nonzero residuals of the vertex, edge, triangle and cocycle conditions.
    fn validate(&self, model: &PyModel) -> Vec<(String, String)> {
        residuals(&nerve_validate(&model.0, &self.0))
    }
}

/// Result of a verification campaign.
#[pyclass(name = "VerificationReport", frozen)]
struct PyReport(VerificationReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.0.pass()
    }

    #[getter]
    fn failures(&self) -> usize {
        self.0.failures()
    }

    #[getter]
    fn instances(&self) -> usize {
        self.0.instances.len()
    }

    fn to_json(&self) -> String {
        self.0.emit(Format::Structured)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        VerificationReport::parse(text)
            .map(PyReport)
            .map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.0.emit(Format::Human)
    }
}

/// A random gauge-orbit Maurer-Cartan n-simplex.
#[pyfunction]
#[pyo3(signature = (model, n, seed = 0, degree = 1))]
fn generate(model: &PyModel, n: usize, seed: u64, degree: u32) -> PySigma {
    PySigma(generate_mc(
        &mut ChaCha8Rng::seed_from_u64(seed),
        &model.0,
        n,
        degree,
    ))
}

/// Integrates a Maurer-Cartan simplex to a validated nerve simplex.
#[pyfunction]
fn integrate(model: &PyModel, sigma: &PySigma) -> PyResult<PyNerve> {
    integrate_simplex(&model.0, &sigma.0)
        .map(PyNerve)
        .map_err(value_error)
}

/// Runs a seeded property suite; unset bounds take the suite defaults.
#[pyfunction]
#[pyo3(signature = (check, seed = None, count = None, class_ = None, dim = None, degree = None))]
fn verify(
    py: Python<'_>,
    check: &str,
    seed: Option<u64>,
    count: Option<usize>,
    class_: Option<usize>,
    dim: Option<usize>,
    degree: Option<u32>,
) -> PyResult<PyReport> {
    let kind: CheckKind = check.parse().map_err(value_error)?;
    let d = kind.default_params();
    let params = CampaignParams {
        seed: seed.unwrap_or(d.seed),
        count: count.unwrap_or(d.count),
        class: class_.unwrap_or(d.class),
        dim: dim.unwrap_or(d.dim),
        degree: degree.unwrap_or(d.degree),
    };
    if params.dim > 6 || params.degree > 3 || params.class == 0 {
        return Err(value_error("bounds: 1 <= class, dim <= 6, degree <= 3"));
    }
    Ok(PyReport(py.detach(|| run_campaign(kind, &params))))
}

/// Names of the suites accepted by `verify`.
#[pyfunction]
fn list_checks() -> Vec<&'static str> {
    CheckKind::all().iter().map(|k| k.name()).collect()
}

/// Baker-Campbell-Hausdorff product in a catalog Lie algebra; coordinates are
/// polynomial strings.
#[pyfunction]
fn bch(family: &str, a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
    let family: LieFamily = family.parse().map_err(value_error)?;
    let lie = family.structure();
    let dim = lie.names.len();
    let parse = |v: Vec<String>| -> PyResult<Vector> {
        if v.len() != dim {
            return Err(value_error(format!(
                "expected {dim} coordinates, got {}",
                v.len()
            )));
        }
        v.iter()
            .map(|s| s.parse::<Poly>().map_err(value_error))
            .collect::<PyResult<_>>()
            .map(Vector)
    };
    let c = lie.algebra().bch(&parse(a)?, &parse(b)?);
    Ok(c.0.iter().map(Poly::to_string).collect())
}

#[pymodule]
#[pyo3(name = "dgla_holonomy")]
fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModel>()?;
    m.add_class::<PySigma>()?;
    m.add_class::<PyNerve>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(list_checks, m)?)?;
    m.add_function(wrap_pyfunction!(bch, m)?)?;
    Ok(())
}
