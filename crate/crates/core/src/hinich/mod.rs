//! The simplicial set `Σ(𝔤) = MC(𝔤 ⊗ Ω_•)`.

mod file;
mod random;

pub use file::{SigmaFile, SigmaTerm};

pub use random::{generate_mc, random_constant_mc, random_degree_zero, random_poly};

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Rational;
use crate::forms::{omega, FormContext, FormError, MonotoneMap, PolyForm, VectorForm};
use crate::lie::{DGLAModel, LieElement, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(
        "component of form degree {form} should take values of dimension {expected}, found {found}"
    )]
    Dimension {
        form: u32,
        expected: usize,
        found: usize,
    },
    #[error("form degree {form} exceeds the simplex dimension {n}")]
    FormDegree { form: u32, n: usize },
    #[error("not a Maurer-Cartan element of g ⊗ Ω_{n}")]
    NotMaurerCartan { n: usize },
    #[error("malformed simplex file: {0}")]
    File(String),
}

/// An element of `𝔤 ⊗ Ω_n` of total degree `degree`: the part of form degree
/// `k` is a `k`-form valued in `𝔤^{degree - k}`. Zero parts are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalElement {
    pub degree: i32,
    pub parts: BTreeMap<u32, VectorForm>,
}

impl TotalElement {
    pub fn zero(degree: i32) -> Self {
        TotalElement {
            degree,
            parts: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(PolyForm::is_zero)
    }

    /// The part of form degree `k`, or `None` when it vanishes.
    pub fn part(&self, k: u32) -> Option<&VectorForm> {
        self.parts.get(&k).filter(|f| !f.is_zero())
    }

    fn insert(&mut self, k: u32, form: VectorForm) {
        if form.is_zero() {
            return;
        }
        match self.parts.get_mut(&k) {
            Some(existing) => {
                *existing = existing.add(&form).expect("same context");
                if existing.is_zero() {
                    self.parts.remove(&k);
                }
            }
            None => {
                self.parts.insert(k, form);
            }
        }
    }

    pub fn add(&self, other: &TotalElement) -> TotalElement {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, f) in &other.parts {
            out.insert(*k, f.clone());
        }
        out
    }

    pub fn neg(&self) -> TotalElement {
        TotalElement {
            degree: self.degree,
            parts: self.parts.iter().map(|(k, f)| (*k, f.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &TotalElement) -> TotalElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> TotalElement {
        let mut out = TotalElement::zero(self.degree);
        for (k, f) in &self.parts {
            out.insert(*k, f.map(|v| v.scale(c)));
        }
        out
    }

    /// Pulls every part back along `f`.
    pub fn pull(&self, f: &MonotoneMap) -> Result<TotalElement, FormError> {
        let mut out = TotalElement::zero(self.degree);
        for (k, form) in &self.parts {
            out.insert(*k, f.pull(form)?);
        }
        Ok(out)
    }
}

/// `𝔤 ⊗ Ω_n` as a DGLA: `D(ω⊗a) = dω⊗a + (-1)^{|ω|} ω⊗δa` and
/// `[ω⊗a, η⊗b] = (-1)^{|a||η|} (ω∧η)⊗[a, b]`.
#[derive(Clone, Debug)]
pub struct TensorAlgebra<'a> {
    pub model: &'a DGLAModel,
    pub ctx: Arc<FormContext>,
}

impl<'a> TensorAlgebra<'a> {
    pub fn new(model: &'a DGLAModel, n: usize) -> Self {
        TensorAlgebra {
            model,
            ctx: omega(n),
        }
    }

    pub fn n(&self) -> usize {
        self.ctx.dim()
    }

    /// Builds an element, checking value dimensions.
    pub fn element(
        &self,
        degree: i32,
        parts: Vec<(u32, VectorForm)>,
    ) -> Result<TotalElement, SigmaError> {
        let mut out = TotalElement::zero(degree);
        for (k, form) in parts {
            if k as usize > self.n() {
                return Err(SigmaError::FormDegree {
                    form: k,
                    n: self.n(),
                });
            }
            let expected = self.model.dim(degree - k as i32);
            for (mask, v) in form.terms() {
                if v.dim() != expected {
                    return Err(SigmaError::Dimension {
                        form: k,
                        expected,
                        found: v.dim(),
                    });
                }
                if mask.count_ones() != k {
                    return Err(FormError::BadMap(format!(
                        "part {k} contains a form of degree {}",
                        mask.count_ones()
                    ))
                    .into());
                }
            }
            if form.context() != &self.ctx {
                return Err(FormError::ContextMismatch.into());
            }
            out.insert(k, form);
        }
        Ok(out)
    }

    /// A constant element of `𝔤 ⊗ Ω⁰`.
    pub fn constant(&self, a: &LieElement) -> TotalElement {
        let mut out = TotalElement::zero(a.degree);
        out.insert(0, PolyForm::function(&self.ctx, a.coeffs.clone()));
        out
    }

    pub fn differential(&self, x: &TotalElement) -> TotalElement {
        let mut out = TotalElement::zero(x.degree + 1);
        for (&k, form) in &x.parts {
            let lie = x.degree - k as i32;
            if (k as usize) < self.n() {
                out.insert(k + 1, form.rel_differential());
            }
            if self.model.dim(lie + 1) > 0 {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let d = form.map(|v| {
                    let image = self
                        .model
                        .differential(&LieElement::new(lie, v.clone()))
                        .coeffs;
                    if sign < 0 {
                        -&image
                    } else {
                        image
                    }
                });
                out.insert(k, d);
            }
        }
        out
    }

    pub fn bracket(&self, a: &TotalElement, b: &TotalElement) -> TotalElement {
        let mut out = TotalElement::zero(a.degree + b.degree);
        for (&k, fa) in &a.parts {
            let la = a.degree - k as i32;
            for (&l, fb) in &b.parts {
                let lb = b.degree - l as i32;
                if (k + l) as usize > self.n() || self.model.dim(la + lb) == 0 {
                    continue;
                }
                let negate = (la * l as i32).rem_euclid(2) == 1;
                let w = fa
                    .wedge_with(fb, |x: &Vector, y: &Vector| {
                        let v = self
                            .model
                            .bracket_unchecked(
                                &LieElement::new(la, x.clone()),
                                &LieElement::new(lb, y.clone()),
                            )
                            .coeffs;
                        if negate {
                            -&v
                        } else {
                            v
                        }
                    })
                    .expect("same context");
                out.insert(k + l, w);
            }
        }
        out
    }

    /// `Dμ + ½[μ, μ]`.
    pub fn mc_defect(&self, mu: &TotalElement) -> TotalElement {
        let half = Rational::new(1.into(), 2.into());
        self.differential(mu)
            .add(&self.bracket(mu, mu).scale(&half))
    }

    /// `(exp X)·γ = γ - Σ_i (ad X)^i/(i+1)! (DX + [γ, X])`.
    pub fn gauge_act(&self, x: &TotalElement, gamma: &TotalElement) -> TotalElement {
        let seed = self.differential(x).add(&self.bracket(gamma, x));
        let mut acc = seed.clone();
        let mut term = seed;
        let mut n = 1i64;
        loop {
            n += 1;
            let next = self.bracket(x, &term);
            if next.is_zero() {
                break;
            }
            term = next.scale(&Rational::new(1.into(), n.into()));
            acc = acc.add(&term);
        }
        gamma.sub(&acc)
    }
}

/// An element of `Σ_n(𝔤)`: a degree-one element of `𝔤 ⊗ Ω_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSimplex {
    pub n: usize,
    pub mu: TotalElement,
}

impl SigmaSimplex {
    /// From the components `μ^{0,1}`, `μ^{1,0}`, `μ^{2,-1}`; higher ones vanish.
    pub fn from_components(
        model: &DGLAModel,
        n: usize,
        mu01: VectorForm,
        mu10: Option<VectorForm>,
        mu2m1: Option<VectorForm>,
    ) -> Result<Self, SigmaError> {
        let t = TensorAlgebra::new(model, n);
        let mut parts = vec![(0, mu01)];
        parts.extend(mu10.map(|f| (1, f)));
        parts.extend(mu2m1.map(|f| (2, f)));
        Ok(SigmaSimplex {
            n,
            mu: t.element(1, parts)?,
        })
    }

    /// Checks the Maurer-Cartan equation.
    pub fn new(model: &DGLAModel, n: usize, mu: TotalElement) -> Result<Self, SigmaError> {
        let s = SigmaSimplex { n, mu };
        if !sigma_defect(model, &s).is_zero() {
            return Err(SigmaError::NotMaurerCartan { n });
        }
        Ok(s)
    }

    pub fn constant(model: &DGLAModel, n: usize, gamma: &LieElement) -> Self {
        SigmaSimplex {
            n,
            mu: TensorAlgebra::new(model, n).constant(gamma),
        }
    }

    fn component(&self, k: u32) -> VectorForm {
        self.mu
            .part(k)
            .cloned()
            .unwrap_or_else(|| PolyForm::zero(&omega(self.n)))
    }

    /// `μ^{0,1}`: a `𝔤¹`-valued function.
    pub fn mu01(&self) -> VectorForm {
        self.component(0)
    }

    /// `μ^{1,0}`: a `𝔤⁰`-valued 1-form.
    pub fn mu10(&self) -> VectorForm {
        self.component(1)
    }

    /// `μ^{2,-1}`: a `𝔤^{-1}`-valued 2-form.
    pub fn mu2m1(&self) -> VectorForm {
        self.component(2)
    }

    /// The value of `μ^{0,1}` at vertex `i`.
    pub fn vertex(&self, model: &DGLAModel, i: usize) -> Result<LieElement, SigmaError> {
        let v = sigma_structure_map(self, &MonotoneMap::new(vec![i], self.n)?)?;
        let coeffs =
            v.mu.part(0)
                .and_then(|f| f.coefficient(0).cloned())
                .unwrap_or_else(|| Vector::zero(model.dim(1)));
        Ok(LieElement::new(1, coeffs))
    }
}

/// The Maurer-Cartan defect split by form degree: the part of form degree
/// `k` is valued in `𝔤^{2-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaDefect {
    pub total: TotalElement,
}

impl SigmaDefect {
    pub fn is_zero(&self) -> bool {
        self.total.is_zero()
    }

    /// The component of bidegree `(k, 2-k)`.
    pub fn component(&self, k: u32) -> Option<&VectorForm> {
        self.total.part(k)
    }
}

pub fn sigma_defect(model: &DGLAModel, mu: &SigmaSimplex) -> SigmaDefect {
    SigmaDefect {
        total: TensorAlgebra::new(model, mu.n).mc_defect(&mu.mu),
    }
}

/// Pulls `μ` back along `f: [m] → [n]`.
pub fn sigma_structure_map(mu: &SigmaSimplex, f: &MonotoneMap) -> Result<SigmaSimplex, SigmaError> {
    if f.target() != mu.n {
        return Err(FormError::BadMap(format!(
            "map into [{}] applied to a {}-simplex",
            f.target(),
            mu.n
        ))
        .into());
    }
    Ok(SigmaSimplex {
        n: f.source(),
        mu: mu.mu.pull(f)?,
    })
}
