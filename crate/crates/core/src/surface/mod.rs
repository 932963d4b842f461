//! Connection-curvature pairs and two-dimensional holonomy.

mod chain;
mod simplex;

pub use chain::{
    chain_holonomy, gauss_check, green_check, rectangle_holonomy, GaussOutcome, Parallelepiped,
    RectangleChain,
};
pub use simplex::{gauss_simplex_check, simplex_holonomy_1, simplex_holonomy_2};

use std::sync::Arc;

use crate::algebra::{rat, Poly, Substitution, Var};
use crate::forms::{FormContext, VectorForm};
use crate::holonomy::{solve_log_ode, Connection, HolonomyError};
use crate::lie::{CrossedModule, Derivation, GroupElement, Vector};
use crate::report::Report;

/// A crossed module with a 𝔤-valued 1-form `A` and an 𝔥-valued 2-form `β`.
/// The crossed module's coefficients may depend on the fiber coordinates.
#[derive(Clone, Debug)]
pub struct ConnectionCurvaturePair {
    pub cm: CrossedModule,
    pub a: VectorForm,
    pub beta: VectorForm,
}

/// Outcome of a two-sided identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: Vector,
    pub rhs: Vector,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn residual(&self) -> Vector {
        &self.lhs - &self.rhs
    }
}

impl ConnectionCurvaturePair {
    pub fn new(cm: CrossedModule, a: VectorForm, beta: VectorForm) -> Result<Self, HolonomyError> {
        for (_, c) in a.terms() {
            if c.dim() != cm.g.dim() {
                return Err(HolonomyError::DimensionMismatch {
                    expected: cm.g.dim(),
                    found: c.dim(),
                });
            }
        }
        for (_, c) in beta.terms() {
            if c.dim() != cm.h.dim() {
                return Err(HolonomyError::DimensionMismatch {
                    expected: cm.h.dim(),
                    found: c.dim(),
                });
            }
        }
        if a.context() != beta.context() {
            return Err(crate::forms::FormError::ContextMismatch.into());
        }
        Ok(ConnectionCurvaturePair { cm, a, beta })
    }

    pub fn context(&self) -> &Arc<FormContext> {
        self.a.context()
    }

    pub fn connection(&self) -> Connection {
        Connection::new(self.cm.g.clone(), self.a.clone()).expect("dimensions checked")
    }

    /// Freezes some coordinates at values in all coefficients.
    pub fn restrict(&self, bindings: &[(Var, Poly)]) -> Self {
        let s = Substitution::unchecked(bindings.to_vec());
        ConnectionCurvaturePair {
            cm: self.cm.substitute(&s),
            a: self.a.substitute_coefficients(&s),
            beta: self.beta.substitute_coefficients(&s),
        }
    }

    /// Pulls the pair back along a polynomial map of fiber coordinates.
    pub fn pullback(
        &self,
        source: &Arc<FormContext>,
        phi: &[(Var, Poly)],
    ) -> Result<Self, HolonomyError> {
        let s = Substitution::unchecked(phi.to_vec());
        Ok(ConnectionCurvaturePair {
            cm: self.cm.substitute(&s),
            a: self.a.pullback(source, phi)?,
            beta: self.beta.pullback(source, phi)?,
        })
    }

    /// Checks `ρ(F) = ad β`, `∇β = 0`, `F = δβ`, the Peiffer identity, and
    /// that `∇` is compatible with the (possibly varying) crossed module.
    pub fn validate(&self) -> Report {
        let mut report = Report::default();
        let conn = self.connection();
        let f = conn.curvature();
        let ctx = self.context().clone();
        let h = &self.cm.h;
        for (m, fm) in f.terms() {
            let beta_m = self
                .beta
                .coefficient(m)
                .cloned()
                .unwrap_or_else(|| h.zero());
            let lhs = self.cm.rho_matrix(fm);
            let rhs = h.ad_matrix(&beta_m);
            if lhs != rhs {
                report.push("rho(F) - ad(beta)", format!("{:?}", lhs.sub(&rhs)));
                break;
            }
        }
        for (m, bm) in self.beta.terms() {
            if f.coefficient(m).is_none() {
                let rhs = h.ad_matrix(bm);
                if !rhs.is_zero() {
                    report.push("rho(F) - ad(beta)", format!("{:?}", rhs.scale(&rat(-1, 1))));
                    break;
                }
            }
        }
        let rho_beta = self
            .a
            .wedge_with(&self.beta, |x, b| self.cm.rho(x, b))
            .expect("same context");
        let bianchi = self
            .beta
            .rel_differential()
            .add(&rho_beta)
            .expect("same context");
        if !bianchi.is_zero() {
            report.push("Bianchi", format!("{:?}", bianchi));
        }
        let delta_beta = self.beta.map(|b| self.cm.delta(b));
        let fake = f.sub(&delta_beta).expect("same context");
        if !fake.is_zero() {
            report.push("F - delta(beta)", format!("{:?}", fake));
        }
        for (i, m) in self.cm.rho.iter().enumerate() {
            let moving = (0..m.size()).any(|r| {
                (0..m.size()).any(|c| {
                    m.get(r, c)
                        .vars()
                        .iter()
                        .any(|v| ctx.fiber_vars().contains(v))
                })
            });
            if moving {
                report.push(
                    "rho constant along fibers",
                    format!("rho(e_{i}) depends on a fiber coordinate"),
                );
            }
        }
        if let Some((a, b, r)) = self.cm.peiffer_defect() {
            report.push("Peiffer", format!("({a}, {b}): {r:?}"));
        }
        for &v in ctx.fiber_vars() {
            let av = conn.component(v).expect("fiber var");
            let rho_av = self.cm.rho_matrix(&av);
            for (i, img) in self.cm.delta.iter().enumerate() {
                let lhs = &img.derivative(v) + &self.cm.g.bracket(&av, img);
                let rhs = self.cm.delta(&rho_av.apply(&h.basis(i)));
                if lhs != rhs {
                    report.push(
                        "nabla compatibility with delta",
                        format!("d{v}, basis {i}: {:?}", &lhs - &rhs),
                    );
                }
            }
            if let Some((i, j, r)) = h.derivation_defect(&Derivation::covariant(v, rho_av)) {
                report.push("nabla derivation of h", format!("d{v}, ({i}, {j}): {r:?}"));
            }
        }
        report
    }
}

/// Data of the surface ODE, solved at the corner `(x1, u2)` with `u2` the
/// second axis variable itself.
pub struct SurfaceSolution {
    /// `log Ũ` as a function of the second axis variable.
    pub top: Vector,
    /// Right-hand side of the ODE.
    pub rhs: Vector,
    /// `ρ(A_2(x1, ·))`.
    pub rho_a2: crate::lie::Matrix,
    /// `𝔥` along the column `v1 = x1`.
    pub h_column: crate::lie::LieAlgebra,
}

/// Solves `(∂_{u2} + ρ(A_2)) log Ũ = ∫_{x1}^{y1} ρ(T(t→x1))(-β(∂1, ∂2)(t, u2)) dt`
/// with `Ũ = 1` at `u2 = x2`. Endpoints must not involve `v1` or `v2`.
pub fn surface_ode(
    pair: &ConnectionCurvaturePair,
    v1: Var,
    v2: Var,
    x1: &Poly,
    y1: &Poly,
    x2: &Poly,
) -> Result<SurfaceSolution, HolonomyError> {
    let ctx = pair.context();
    ctx.position(v1)?;
    ctx.position(v2)?;
    let conn = pair.connection();
    let rep = pair.cm.rho_representation();
    let t = Var::fiber(&format!("{}__t", v1.name()));
    let transport = conn.path_holonomy(v1, &Poly::var(t), x1)?;
    let m = rep.apply(&transport);
    let beta12 = pair
        .beta
        .component(&[v1, v2])?
        .unwrap_or_else(|| pair.cm.h.zero());
    let integrand = -&m.apply(&beta12.subst_one(v1, &Poly::var(t)));
    let rhs = integrand.integrate(t, x1, y1);
    let a2 = conn.component(v2)?.subst_one(v1, x1);
    let rho_a2 = pair.cm.rho_matrix(&a2).map(|p| p.subst_one(v1, x1));
    let h_column = pair.cm.h.subst_one(v1, x1);
    let top = solve_log_ode(&h_column, v2, x2, &rhs, Some(&rho_a2))?;
    Ok(SurfaceSolution {
        top,
        rhs,
        rho_a2,
        h_column,
    })
}

/// Two-dimensional holonomy over the rectangle with corners `(x1, x2)` and
/// `(y1, y2)` in the coordinates `(v1, v2)`, valued in `exp(𝔥)` at the base
/// corner `(x1, x2)`. Other coordinates stay symbolic.
pub fn surface_holonomy(
    pair: &ConnectionCurvaturePair,
    v1: Var,
    v2: Var,
    x1: &Poly,
    y1: &Poly,
    x2: &Poly,
    y2: &Poly,
) -> Result<GroupElement, HolonomyError> {
    let sol = surface_ode(pair, v1, v2, x1, y1, x2)?;
    let top = sol.top.subst_one(v2, y2);
    let column = pair
        .connection()
        .substitute_coefficients(&Substitution::unchecked(vec![(v1, x1.clone())]));
    let back = column.path_holonomy(v2, y2, x2)?;
    let rep = pair.cm.rho_representation();
    let m = rep.apply(&back).map(|p| p.subst_one(v1, x1));
    Ok(GroupElement::exp(m.apply(&top)))
}
