use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::deligne::NerveSimplex;
use crate::hinich::{SigmaSimplex, TotalElement};
use crate::lie::{BasisElement, DGLAModel, LieElement, LieError};
use crate::report::Report;

/// A degree-preserving linear map between models, given on basis elements by
/// global indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglaMorphism {
    pub images: Vec<Vec<(usize, Rational)>>,
}

impl DglaMorphism {
    fn image_vector(&self, target: &DGLAModel, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); target.len()];
        for (j, c) in &self.images[i] {
            v[*j] += c;
        }
        v
    }

    /// Checks degrees, `φδ = δφ` and `φ[a, b] = [φa, φb]` on basis elements.
    pub fn validate(&self, source: &DGLAModel, target: &DGLAModel) -> Result<(), LieError> {
        if self.images.len() != source.len() {
            return Err(LieError::DimensionMismatch {
                expected: source.len(),
                found: self.images.len(),
            });
        }
        for (i, img) in self.images.iter().enumerate() {
            for (j, _) in img {
                if *j >= target.len() {
                    return Err(LieError::IndexOutOfRange {
                        index: *j,
                        dim: target.len(),
                    });
                }
                if target.degree_of(*j) != source.degree_of(i) {
                    return Err(LieError::DegreeMismatch);
                }
            }
        }
        let apply = |v: &[(usize, Rational)]| {
            let mut out = vec![Rational::zero(); target.len()];
            for (i, c) in v {
                for (j, d) in &self.images[*i] {
                    out[*j] += c * d;
                }
            }
            out
        };
        for i in 0..source.len() {
            let lhs = apply(source.differential_basis(i));
            let mut rhs = vec![Rational::zero(); target.len()];
            for (j, c) in &self.images[i] {
                for (k, d) in target.differential_basis(*j) {
                    rhs[*k] += c * d;
                }
            }
            if lhs != rhs {
                return Err(LieError::NotMorphism(format!("differential on basis {i}")));
            }
            let vi = self.image_vector(target, i);
            for j in 0..source.len() {
                let lhs = apply(source.bracket_basis(i, j));
                let vj = self.image_vector(target, j);
                let mut rhs = vec![Rational::zero(); target.len()];
                for (a, ca) in vi.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (b, cb) in vj.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        for (k, d) in target.bracket_basis(a, b) {
                            rhs[*k] += ca * cb * d;
                        }
                    }
                }
                if lhs != rhs {
                    return Err(LieError::NotMorphism(format!(
                        "bracket on basis ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply_element(
        &self,
        source: &DGLAModel,
        target: &DGLAModel,
        a: &LieElement,
    ) -> LieElement {
        let mut out = target.zero(a.degree);
        for (l, &i) in source.component(a.degree).iter().enumerate() {
            let c = &a.coeffs.0[l];
            if c.is_zero() {
                continue;
            }
            for (j, d) in &self.images[i] {
                out.coeffs.0[target.local_index(*j)] += &c.scale(d);
            }
        }
        out
    }

    pub fn apply_total(
        &self,
        source: &DGLAModel,
        target: &DGLAModel,
        x: &TotalElement,
    ) -> TotalElement {
        let mut out = TotalElement::zero(x.degree);
        for (&k, form) in &x.parts {
            let lie = x.degree - k as i32;
            let image = form.map(|v| {
                self.apply_element(source, target, &LieElement::new(lie, v.clone()))
                    .coeffs
            });
            if !image.is_zero() {
                out.parts.insert(k, image);
            }
        }
        out
    }

    pub fn apply_sigma(
        &self,
        source: &DGLAModel,
        target: &DGLAModel,
        mu: &SigmaSimplex,
    ) -> SigmaSimplex {
        SigmaSimplex {
            n: mu.n,
            mu: self.apply_total(source, target, &mu.mu),
        }
    }

    pub fn apply_nerve(
        &self,
        source: &DGLAModel,
        target: &DGLAModel,
        s: &NerveSimplex,
    ) -> NerveSimplex {
        let f = |a: &LieElement| self.apply_element(source, target, a);
        NerveSimplex {
            n: s.n,
            mu: s.mu.iter().map(f).collect(),
            g: s.g.iter().map(|(k, v)| (*k, f(v))).collect(),
            c: s.c.iter().map(|(k, v)| (*k, f(v))).collect(),
        }
    }
}

fn restricted_model(
    model: &DGLAModel,
    keep: &[usize],
) -> Result<(DGLAModel, BTreeMap<usize, usize>), LieError> {
    let index: BTreeMap<usize, usize> = keep
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let basis: Vec<BasisElement> = keep.iter().map(|&i| model.basis()[i].clone()).collect();
    let mut diff = Vec::new();
    let mut brackets = Vec::new();
    for &i in keep {
        for (j, c) in model.differential_basis(i) {
            if let Some(&nj) = index.get(j) {
                diff.push((index[&i], nj, c.clone()));
            }
        }
        for &j in keep {
            if i > j {
                continue;
            }
            for (k, c) in model.bracket_basis(i, j) {
                if let Some(&nk) = index.get(k) {
                    brackets.push((index[&i], index[&j], nk, c.clone()));
                }
            }
        }
    }
    Ok((DGLAModel::new(basis, diff, brackets, model.class())?, index))
}

/// Checks that the span of `indices` is central and closed under `δ`.
pub fn check_central(model: &DGLAModel, indices: &[usize]) -> Report {
    let mut report = Report::default();
    for &a in indices {
        for j in 0..model.len() {
            if !model.bracket_basis(a, j).is_empty() {
                report.push(
                    "central",
                    format!(
                        "[{}, {}] != 0",
                        model.basis()[a].name,
                        model.basis()[j].name
                    ),
                );
            }
        }
        for (j, _) in model.differential_basis(a) {
            if !indices.contains(j) {
                report.push(
                    "delta-closed",
                    format!("d {} leaves the ideal", model.basis()[a].name),
                );
            }
        }
    }
    report
}

/// The sub-DGLA spanned by `indices` (central, δ-closed) with its inclusion.
pub fn central_submodel(
    model: &DGLAModel,
    indices: &[usize],
) -> Result<(DGLAModel, DglaMorphism), LieError> {
    let mut keep = indices.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let (sub, _) = restricted_model(model, &keep)?;
    let inclusion = DglaMorphism {
        images: keep.iter().map(|&i| vec![(i, Rational::one())]).collect(),
    };
    Ok((sub, inclusion))
}

/// The quotient by the span of `indices` (a δ-closed ideal) with the projection.
pub fn quotient_model(
    model: &DGLAModel,
    indices: &[usize],
) -> Result<(DGLAModel, DglaMorphism), LieError> {
    let keep: Vec<usize> = (0..model.len()).filter(|i| !indices.contains(i)).collect();
    let (quotient, index) = restricted_model(model, &keep)?;
    let projection = DglaMorphism {
        images: (0..model.len())
            .map(|i| {
                index
                    .get(&i)
                    .map(|&j| vec![(j, Rational::one())])
                    .unwrap_or_default()
            })
            .collect(),
    };
    Ok((quotient, projection))
}

/// Adds central nerve data: vertices and triangles add, edges multiply, which
/// for central values is addition of logs.
pub fn add_central_nerve(model: &DGLAModel, s: &NerveSimplex, a: &NerveSimplex) -> NerveSimplex {
    let add = |x: &LieElement, y: &LieElement| model.add(x, y);
    NerveSimplex {
        n: s.n,
        mu: s.mu.iter().zip(&a.mu).map(|(x, y)| add(x, y)).collect(),
        g: s.g.iter().map(|(k, v)| (*k, add(v, &a.g[k]))).collect(),
        c: s.c.iter().map(|(k, v)| (*k, add(v, &a.c[k]))).collect(),
    }
}
