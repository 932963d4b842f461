//! The integration map `Σ_n(𝔤) → 𝔑_n MC²(𝔤)` and its verifications.

mod morphism;

pub use morphism::{
    add_central_nerve, central_submodel, check_central, quotient_model, DglaMorphism,
};

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Poly, Rational, Var};
use crate::deligne::{nerve_structure_map, nerve_validate, DeligneError, NerveSimplex};
use crate::forms::{edge_parametrization, triangle_parametrization, FormError, MonotoneMap};
use crate::hinich::{sigma_defect, sigma_structure_map, SigmaError, SigmaSimplex};
use crate::holonomy::{Connection, HolonomyError};
use crate::lie::{DGLAModel, LieElement, LieError};
use crate::report::Report;
use crate::surface::{simplex_holonomy_1, simplex_holonomy_2, ConnectionCurvaturePair};

/// Sign `σ` in `β = σ μ^{2,-1}`, forced by `ρ(F) = ad β` and `F = δβ`.
pub const BETA_SIGN: i64 = -1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntegrationError {
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Holonomy(#[from] HolonomyError),
    #[error(transparent)]
    Deligne(#[from] DeligneError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("input is not a Maurer-Cartan element")]
    NotMaurerCartan,
    #[error("integrated simplex fails validation: {0:?}")]
    InvalidNerve(Report),
    #[error("model is not abelian")]
    NotAbelian,
    #[error("sub-DGLA is not central or not closed: {0:?}")]
    NotCentral(Report),
}

/// `d + μ^{1,0}` on a 1-simplex.
pub fn edge_connection(model: &DGLAModel, mu: &SigmaSimplex) -> Connection {
    Connection::new(model.degree_zero_algebra(), mu.mu10()).expect("dimensions match")
}

/// `(d + μ^{1,0}, σ μ^{2,-1})` on a 2-simplex with the `μ^{0,1}`-twisted
/// crossed module.
pub fn face_pair(model: &DGLAModel, mu: &SigmaSimplex) -> ConnectionCurvaturePair {
    let gamma = mu
        .mu01()
        .coefficient(0)
        .cloned()
        .unwrap_or_else(|| model.zero(1).coeffs);
    let cm = model.crossed_module_unchecked(&LieElement::new(1, gamma));
    let beta = mu
        .mu2m1()
        .map(|v| v.scale(&Rational::from_integer(BETA_SIGN.into())));
    ConnectionCurvaturePair::new(cm, mu.mu10(), beta).expect("dimensions match")
}

fn inclusion(images: Vec<usize>, n: usize) -> MonotoneMap {
    MonotoneMap::new(images, n).expect("increasing indices")
}

/// Integrates without validating input or output.
pub fn integrate_simplex_unchecked(
    model: &DGLAModel,
    mu: &SigmaSimplex,
) -> Result<NerveSimplex, IntegrationError> {
    let n = mu.n;
    let mu_vertices = (0..=n)
        .map(|i| mu.vertex(model, i))
        .collect::<Result<Vec<_>, _>>()?;
    let edges: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let faces: Vec<(usize, usize, usize)> = (0..=n)
        .flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (i, j, k))))
        .collect();
    let g = edges
        .par_iter()
        .map(|&(i, j)| -> Result<_, IntegrationError> {
            let e = sigma_structure_map(mu, &inclusion(vec![i, j], n))?;
            let hol = simplex_holonomy_1(&edge_connection(model, &e))?;
            Ok(((i, j), LieElement::new(0, hol.inverse().log)))
        })
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    let c = faces
        .par_iter()
        .map(|&(i, j, k)| -> Result<_, IntegrationError> {
            let f = sigma_structure_map(mu, &inclusion(vec![i, j, k], n))?;
            let hol = simplex_holonomy_2(&face_pair(model, &f))?;
            Ok(((i, j, k), LieElement::new(-1, hol.log)))
        })
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    Ok(NerveSimplex {
        n,
        mu: mu_vertices,
        g,
        c,
    })
}

/// `𝕀_n`: vertex values of `μ^{0,1}`, inverse edge holonomies `g_ij: μ_j → μ_i`
/// and face 2-holonomies `c_ijk`. Checks the input and the output.
pub fn integrate_simplex(
    model: &DGLAModel,
    mu: &SigmaSimplex,
) -> Result<NerveSimplex, IntegrationError> {
    if !sigma_defect(model, mu).is_zero() {
        return Err(IntegrationError::NotMaurerCartan);
    }
    let s = integrate_simplex_unchecked(model, mu)?;
    let report = nerve_validate(model, &s);
    if !report.is_valid() {
        return Err(IntegrationError::InvalidNerve(report));
    }
    Ok(s)
}

fn compare_nerves(report: &mut Report, label: &str, lhs: &NerveSimplex, rhs: &NerveSimplex) {
    for (i, (a, b)) in lhs.mu.iter().zip(&rhs.mu).enumerate() {
        if a != b {
            report.push(
                format!("{label}: vertex {i}"),
                format!("{:?} vs {:?}", a.coeffs, b.coeffs),
            );
        }
    }
    for (k, a) in &lhs.g {
        if rhs.g.get(k) != Some(a) {
            report.push(
                format!("{label}: edge {k:?}"),
                format!("{:?} vs {:?}", a.coeffs, rhs.g.get(k).map(|b| &b.coeffs)),
            );
        }
    }
    for (k, a) in &lhs.c {
        if rhs.c.get(k) != Some(a) {
            report.push(
                format!("{label}: triangle {k:?}"),
                format!("{:?} vs {:?}", a.coeffs, rhs.c.get(k).map(|b| &b.coeffs)),
            );
        }
    }
    if lhs.mu.len() != rhs.mu.len() || lhs.g.len() != rhs.g.len() || lhs.c.len() != rhs.c.len() {
        report.push(
            format!("{label}: shape"),
            "different simplex dimensions".to_string(),
        );
    }
}

/// Compares `f*(𝕀μ)` with `𝕀(f*μ)`.
pub fn verify_simplicial(
    model: &DGLAModel,
    mu: &SigmaSimplex,
    f: &MonotoneMap,
) -> Result<Report, IntegrationError> {
    let lhs = nerve_structure_map(model, &integrate_simplex_unchecked(model, mu)?, f)?;
    let rhs = integrate_simplex_unchecked(model, &sigma_structure_map(mu, f)?)?;
    let mut report = Report::default();
    compare_nerves(&mut report, "simplicial", &lhs, &rhs);
    Ok(report)
}

/// Direct integration for abelian models: `g_ij = ∫_edge μ^{1,0}` and
/// `c_ijk = -σ ∫_face μ^{2,-1}` over the parametrized simplices.
pub fn abelian_integrate(
    model: &DGLAModel,
    mu: &SigmaSimplex,
) -> Result<NerveSimplex, IntegrationError> {
    if !model.is_abelian() {
        return Err(IntegrationError::NotAbelian);
    }
    let n = mu.n;
    let (zero, one) = (Poly::zero(), Poly::one());
    let x1 = Var::fiber("x1");
    let x2 = Var::fiber("x2");
    let mut s = NerveSimplex {
        n,
        mu: (0..=n)
            .map(|i| mu.vertex(model, i))
            .collect::<Result<_, _>>()?,
        g: BTreeMap::new(),
        c: BTreeMap::new(),
    };
    let (edge_ctx, phi1) = edge_parametrization();
    let (tri_ctx, phi2) = triangle_parametrization();
    for i in 0..=n {
        for j in i + 1..=n {
            let e = sigma_structure_map(mu, &inclusion(vec![i, j], n))?;
            let a = e.mu10().pullback(&edge_ctx, &phi1)?;
            let v = match a.component(&[x1])? {
                Some(c) => c.integrate(x1, &zero, &one),
                None => model.zero(0).coeffs,
            };
            s.g.insert((i, j), LieElement::new(0, v));
            for k in j + 1..=n {
                let f = sigma_structure_map(mu, &inclusion(vec![i, j, k], n))?;
                let b = f.mu2m1().pullback(&tri_ctx, &phi2)?;
                let v = match b.component(&[x1, x2])? {
                    Some(c) => c.integrate(x1, &zero, &one).integrate(x2, &zero, &one),
                    None => model.zero(-1).coeffs,
                };
                s.c.insert(
                    (i, j, k),
                    LieElement::new(-1, v.scale(&Rational::from_integer((-BETA_SIGN).into()))),
                );
            }
        }
    }
    Ok(s)
}

/// Projection compatibility `𝕀(πμ) = π(𝕀μ)` and central equivariance
/// `𝕀(μ + α) = 𝕀(μ) + ∫α` for `α` valued in the central sub-DGLA `indices`.
pub fn central_quotient_check(
    model: &DGLAModel,
    indices: &[usize],
    mu: &SigmaSimplex,
    alpha: &SigmaSimplex,
) -> Result<Report, IntegrationError> {
    let central = check_central(model, indices);
    if !central.is_valid() {
        return Err(IntegrationError::NotCentral(central));
    }
    let (sub, inc) = central_submodel(model, indices)?;
    let (quot, proj) = quotient_model(model, indices)?;
    let mut report = Report::default();
    let integrated = integrate_simplex_unchecked(model, mu)?;
    let projected = integrate_simplex_unchecked(&quot, &proj.apply_sigma(model, &quot, mu))?;
    compare_nerves(
        &mut report,
        "projection",
        &projected,
        &proj.apply_nerve(model, &quot, &integrated),
    );
    let shifted = SigmaSimplex {
        n: mu.n,
        mu: mu.mu.add(&inc.apply_total(&sub, model, &alpha.mu)),
    };
    let lhs = integrate_simplex_unchecked(model, &shifted)?;
    let abelian = inc.apply_nerve(&sub, model, &abelian_integrate(&sub, alpha)?);
    compare_nerves(
        &mut report,
        "central action",
        &lhs,
        &add_central_nerve(model, &integrated, &abelian),
    );
    Ok(report)
}
