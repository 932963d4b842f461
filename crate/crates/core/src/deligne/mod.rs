//! Maurer-Cartan elements, the gauge action and the Deligne 2-groupoid.

mod nerve;

pub use nerve::{nerve_structure_map, nerve_validate, NerveFile, NerveSimplex};

use thiserror::Error;

use crate::algebra::Rational;
use crate::forms::FormError;
use crate::lie::{DGLAModel, LieAlgebra, LieElement, LieError, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeligneError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("expected an element of degree {expected}, got degree {found}")]
    Degree { expected: i32, found: i32 },
    #[error("element has {found} coefficients, degree component has {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("not a Maurer-Cartan element, defect {0}")]
    NotMaurerCartan(String),
    #[error("endpoint mismatch: {0}")]
    Endpoints(String),
    #[error("missing nerve entry {0}")]
    MissingEntry(String),
}

fn check(model: &DGLAModel, a: &LieElement, degree: i32) -> Result<(), DeligneError> {
    if a.degree != degree {
        return Err(DeligneError::Degree {
            expected: degree,
            found: a.degree,
        });
    }
    if a.coeffs.dim() != model.dim(degree) {
        return Err(DeligneError::Dimension {
            expected: model.dim(degree),
            found: a.coeffs.dim(),
        });
    }
    Ok(())
}

/// `δγ + ½[γ, γ]`.
pub fn mc_defect(model: &DGLAModel, gamma: &LieElement) -> Result<LieElement, DeligneError> {
    check(model, gamma, 1)?;
    Ok(model.mc_defect(gamma))
}

/// `Σ (ad X)^n a / n!` for `X` of degree 0.
pub fn exp_ad(model: &DGLAModel, x: &LieElement, a: &LieElement) -> LieElement {
    let mut acc = a.clone();
    let mut term = a.clone();
    let mut n = 0i64;
    loop {
        n += 1;
        let next = model.bracket(x, &term).expect("checked dimensions");
        if next.is_zero() {
            return acc;
        }
        term = LieElement::new(
            next.degree,
            next.coeffs.scale(&Rational::new(1.into(), n.into())),
        );
        acc = model.add(&acc, &term);
    }
}

/// `(exp X)·γ = γ - Σ_i (ad X)^i/(i+1)! (δX + [γ, X])`.
pub fn gauge_act(
    model: &DGLAModel,
    x: &LieElement,
    gamma: &LieElement,
) -> Result<LieElement, DeligneError> {
    check(model, x, 0)?;
    check(model, gamma, 1)?;
    let seed = model.add(&model.differential(x), &model.bracket(gamma, x)?);
    let mut acc = seed.coeffs.clone();
    let mut term = seed;
    let mut n = 1i64;
    loop {
        n += 1;
        let next = model.bracket(x, &term)?;
        if next.is_zero() {
            break;
        }
        term = LieElement::new(1, next.coeffs.scale(&Rational::new(1.into(), n.into())));
        acc.add_assign(&term.coeffs);
    }
    Ok(LieElement::new(1, &gamma.coeffs - &acc))
}

/// A Maurer-Cartan element of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaurerCartanElement {
    gamma: LieElement,
}

impl MaurerCartanElement {
    pub fn new(model: &DGLAModel, gamma: LieElement) -> Result<Self, DeligneError> {
        let defect = mc_defect(model, &gamma)?;
        if !defect.is_zero() {
            return Err(DeligneError::NotMaurerCartan(format!(
                "{:?}",
                defect.coeffs
            )));
        }
        Ok(MaurerCartanElement { gamma })
    }

    pub fn zero(model: &DGLAModel) -> Self {
        MaurerCartanElement {
            gamma: model.zero(1),
        }
    }

    pub fn gamma(&self) -> &LieElement {
        &self.gamma
    }

    /// `𝔤^{-1}` with the bracket twisted by this element.
    pub fn twisted_algebra(&self, model: &DGLAModel) -> LieAlgebra {
        model.twisted_minus_one_unchecked(&self.gamma)
    }
}

/// `exp X: source → target` with `(exp X)·source = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeMorphism {
    pub source: MaurerCartanElement,
    pub target: MaurerCartanElement,
    pub x: LieElement,
}

impl GaugeMorphism {
    /// The morphism out of `source` given by `X`; the target is computed.
    pub fn from_source(
        model: &DGLAModel,
        x: LieElement,
        source: MaurerCartanElement,
    ) -> Result<Self, DeligneError> {
        let target = MaurerCartanElement {
            gamma: gauge_act(model, &x, source.gamma())?,
        };
        Ok(GaugeMorphism { source, target, x })
    }

    /// Checks that `X` maps `source` to `target`.
    pub fn new(
        model: &DGLAModel,
        x: LieElement,
        source: MaurerCartanElement,
        target: MaurerCartanElement,
    ) -> Result<Self, DeligneError> {
        let image = gauge_act(model, &x, source.gamma())?;
        if image != target.gamma {
            return Err(DeligneError::Endpoints(format!(
                "X maps the source to {:?}, not the target",
                image.coeffs
            )));
        }
        Ok(GaugeMorphism { source, target, x })
    }

    pub fn identity(model: &DGLAModel, gamma: MaurerCartanElement) -> Self {
        GaugeMorphism {
            source: gamma.clone(),
            target: gamma,
            x: model.zero(0),
        }
    }

    /// `self ∘ other`, i.e. `exp X_self · exp X_other`.
    pub fn compose(
        &self,
        model: &DGLAModel,
        other: &GaugeMorphism,
    ) -> Result<GaugeMorphism, DeligneError> {
        if other.target != self.source {
            return Err(DeligneError::Endpoints(
                "gauge morphisms are not composable".into(),
            ));
        }
        let g0 = model.degree_zero_algebra();
        Ok(GaugeMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            x: LieElement::new(0, g0.bch(&self.x.coeffs, &other.x.coeffs)),
        })
    }
}

/// `t: source ⇒ target` between gauge morphisms with common endpoints, with
/// `exp(δ_{γ₂} t)·exp X_source = exp X_target` for `γ₂` the common target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoMorphism {
    pub source: GaugeMorphism,
    pub target: GaugeMorphism,
    pub t: LieElement,
}

fn act_on_log(model: &DGLAModel, gamma2: &LieElement, t: &LieElement, x: &Vector) -> Vector {
    let dt = model.twisted_differential(gamma2, t);
    model.degree_zero_algebra().bch(&dt.coeffs, x)
}

impl TwoMorphism {
    pub fn new(
        model: &DGLAModel,
        t: LieElement,
        source: GaugeMorphism,
        target: GaugeMorphism,
    ) -> Result<Self, DeligneError> {
        check(model, &t, -1)?;
        if source.source != target.source || source.target != target.target {
            return Err(DeligneError::Endpoints(
                "2-morphism between morphisms with different endpoints".into(),
            ));
        }
        let image = act_on_log(model, target.target.gamma(), &t, &source.x.coeffs);
        if image != target.x.coeffs {
            return Err(DeligneError::Endpoints(format!(
                "t maps the source morphism to {image:?}, not the target"
            )));
        }
        Ok(TwoMorphism { source, target, t })
    }

    pub fn identity(model: &DGLAModel, g: GaugeMorphism) -> Self {
        TwoMorphism {
            source: g.clone(),
            target: g,
            t: model.zero(-1),
        }
    }
}

/// `(exp_{γ₂} t)·(exp X) = exp(δt + [γ₂, t]) exp X` with `γ₂` the target of `g`.
pub fn two_morphism_act(
    model: &DGLAModel,
    t: &LieElement,
    g: &GaugeMorphism,
) -> Result<TwoMorphism, DeligneError> {
    check(model, t, -1)?;
    let x = act_on_log(model, g.target.gamma(), t, &g.x.coeffs);
    let target = GaugeMorphism {
        source: g.source.clone(),
        target: g.target.clone(),
        x: LieElement::new(0, x),
    };
    Ok(TwoMorphism {
        source: g.clone(),
        target,
        t: t.clone(),
    })
}

/// `t₂ ∘ t₁`: the product in `exp_{γ₂} 𝔤^{-1}`.
pub fn vertical_compose(
    model: &DGLAModel,
    t2: &TwoMorphism,
    t1: &TwoMorphism,
) -> Result<TwoMorphism, DeligneError> {
    if t2.source != t1.target {
        return Err(DeligneError::Endpoints(
            "2-morphisms are not vertically composable".into(),
        ));
    }
    let h = t1.target.target.twisted_algebra(model);
    Ok(TwoMorphism {
        source: t1.source.clone(),
        target: t2.target.clone(),
        t: LieElement::new(-1, h.bch(&t2.t.coeffs, &t1.t.coeffs)),
    })
}

/// `g ∘ t`: transports `t` by `Ad_{exp X_g}` into the twisted algebra of
/// the new target.
pub fn whisker_left(
    model: &DGLAModel,
    g: &GaugeMorphism,
    t: &TwoMorphism,
) -> Result<TwoMorphism, DeligneError> {
    if t.source.target != g.source {
        return Err(DeligneError::Endpoints(
            "whiskering morphism does not start at the 2-morphism's target".into(),
        ));
    }
    Ok(TwoMorphism {
        source: g.compose(model, &t.source)?,
        target: g.compose(model, &t.target)?,
        t: exp_ad(model, &g.x, &t.t),
    })
}

/// `t ∘ g`: the same `t` between the precomposed morphisms.
pub fn whisker_right(
    model: &DGLAModel,
    t: &TwoMorphism,
    g: &GaugeMorphism,
) -> Result<TwoMorphism, DeligneError> {
    Ok(TwoMorphism {
        source: t.source.compose(model, g)?,
        target: t.target.compose(model, g)?,
        t: t.t.clone(),
    })
}
