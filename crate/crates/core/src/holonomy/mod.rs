//! Connections, curvature and one-dimensional holonomy.

mod broken;

pub use broken::{broken_line_holonomy, AxisHolonomy, BrokenLine};

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Poly, Rational, Var};
use crate::forms::{FormContext, FormError, PolyForm, VectorForm};
use crate::lie::{
    Derivation, GroupElement, LieAlgebra, LieError, Matrix, NilpotentRepresentation, Series, Vector,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HolonomyError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("fixed point did not stabilize after {0} iterations (declared class too small?)")]
    NonTerminating(usize),
    #[error("invalid broken line: {0}")]
    InvalidBrokenLine(String),
    #[error("connection values have dimension {found}, algebra has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// `∇ = d + A` with `A` a 1-form valued in a nilpotent Lie algebra.
#[derive(Clone, Debug)]
pub struct Connection {
    alg: LieAlgebra,
    a: VectorForm,
}

impl Connection {
    pub fn new(alg: LieAlgebra, a: VectorForm) -> Result<Self, HolonomyError> {
        for (m, c) in a.terms() {
            if m.count_ones() != 1 {
                return Err(FormError::NotOneFormIn("connection".into()).into());
            }
            if c.dim() != alg.dim() {
                return Err(HolonomyError::DimensionMismatch {
                    expected: alg.dim(),
                    found: c.dim(),
                });
            }
        }
        Ok(Connection { alg, a })
    }

    pub fn zero(alg: LieAlgebra, ctx: &Arc<FormContext>) -> Self {
        Connection {
            alg,
            a: PolyForm::zero(ctx),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn form(&self) -> &VectorForm {
        &self.a
    }

    pub fn context(&self) -> &Arc<FormContext> {
        self.a.context()
    }

    /// `ι_{∂/∂v} A`.
    pub fn component(&self, v: Var) -> Result<Vector, HolonomyError> {
        Ok(self.a.component(&[v])?.unwrap_or_else(|| self.alg.zero()))
    }

    /// `F = dA + ½[A, A]`.
    pub fn curvature(&self) -> VectorForm {
        let half = Rational::new(1.into(), 2.into());
        let sq = self
            .a
            .wedge_with(&self.a, |x, y| self.alg.bracket(x, y))
            .expect("same context");
        self.a
            .rel_differential()
            .add(&sq.map(|v| v.scale(&half)))
            .expect("same context")
    }

    /// `∇F = dF + [A, F]`, which vanishes identically.
    pub fn bianchi(&self, f: &VectorForm) -> VectorForm {
        let af = self
            .a
            .wedge_with(f, |x, y| self.alg.bracket(x, y))
            .expect("same context");
        f.rel_differential().add(&af).expect("same context")
    }

    /// Curvature component `F(∂_i, ∂_j) = ∂_i A_j - ∂_j A_i + [A_i, A_j]`.
    pub fn curvature_component(&self, vi: Var, vj: Var) -> Result<Vector, HolonomyError> {
        let f = self.curvature();
        Ok(f.component(&[vi, vj])?.unwrap_or_else(|| self.alg.zero()))
    }

    /// `∇_{∂/∂v} log u = ∂_v log u + A_v`.
    pub fn covariant_log_derivative_along(
        &self,
        v: Var,
        u: &GroupElement,
    ) -> Result<Vector, HolonomyError> {
        let d = self
            .alg
            .log_derivative_unchecked(&Derivation::Partial(v), &u.log);
        Ok(&d + &self.component(v)?)
    }

    /// `∇ log u = d log u + A` as a 1-form.
    pub fn covariant_log_derivative(&self, u: &GroupElement) -> Result<VectorForm, HolonomyError> {
        if u.log.dim() != self.alg.dim() {
            return Err(HolonomyError::DimensionMismatch {
                expected: self.alg.dim(),
                found: u.log.dim(),
            });
        }
        let ctx = self.context().clone();
        let mut out = PolyForm::zero(&ctx);
        for &v in ctx.fiber_vars() {
            let c = self.covariant_log_derivative_along(v, u)?;
            out = out.add(&PolyForm::one_form(&ctx, v, c)?)?;
        }
        Ok(out)
    }

    /// Matrix of `ρ(A_v)` in a representation.
    pub fn rep_component(
        &self,
        rep: &NilpotentRepresentation,
        v: Var,
    ) -> Result<Matrix, HolonomyError> {
        Ok(rep.matrix_of(&self.component(v)?))
    }

    /// Holonomy `P_{from}^{to}` along the fiber coordinate `axis`, other
    /// coordinates held fixed (they stay symbolic).
    pub fn path_holonomy(
        &self,
        axis: Var,
        from: &Poly,
        to: &Poly,
    ) -> Result<GroupElement, HolonomyError> {
        self.context().position(axis)?;
        let rhs = -&self.component(axis)?;
        let z = solve_log_ode(&self.alg, axis, from, &rhs, None)?;
        Ok(GroupElement::exp(z.subst_one(axis, to)))
    }

    pub fn holonomy_in_rep(
        &self,
        rep: &NilpotentRepresentation,
        axis: Var,
        from: &Poly,
        to: &Poly,
    ) -> Result<Matrix, HolonomyError> {
        Ok(rep.apply(&self.path_holonomy(axis, from, to)?))
    }

    /// Substitutes in the coefficients of `A` (parameters, or fiber
    /// coordinates frozen at values).
    pub fn substitute_coefficients(&self, s: &crate::algebra::Substitution) -> Connection {
        Connection {
            alg: self.alg.clone(),
            a: self.a.substitute_coefficients(s),
        }
    }
}

/// Solves `((e^{ad Z} - 1)/ad Z)(∂_s Z + M Z) = rhs` with `Z = 0` at
/// `s = lower`, where `∂_s + M` must be a derivation of `alg`. Uses the fixed
/// point `Z ← ∫_{lower}^{s} (ψ(ad Z)(rhs) - M Z)` with `ψ = ad/(e^{ad} - 1)`,
/// which stabilizes by nilpotency.
pub fn solve_log_ode(
    alg: &LieAlgebra,
    s: Var,
    lower: &Poly,
    rhs: &Vector,
    m: Option<&Matrix>,
) -> Result<Vector, HolonomyError> {
    let upper = Poly::var(s);
    let cap = 4 * (alg.class() + alg.dim()) + 8;
    let mut z = alg.zero();
    for _ in 0..cap {
        let mut integrand = alg.adjoint_series(&z, Series::IdOverExpm1, rhs);
        if let Some(m) = m {
            integrand = &integrand - &m.apply(&z);
        }
        let next = integrand.integrate(s, lower, &upper);
        if next == z {
            return Ok(z);
        }
        z = next;
    }
    Err(HolonomyError::NonTerminating(cap))
}
