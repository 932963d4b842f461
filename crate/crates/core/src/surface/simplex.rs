use crate::algebra::{Poly, Substitution, Var};
use crate::forms::{edge_parametrization, omega, triangle_parametrization, MonotoneMap};
use crate::holonomy::{Connection, HolonomyError};
use crate::lie::GroupElement;

use super::{surface_holonomy, Comparison, ConnectionCurvaturePair, GaussOutcome};

fn require_dim(found: usize, expected: usize) -> Result<(), HolonomyError> {
    if found != expected {
        return Err(HolonomyError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Transport from vertex 0 to vertex 1 of a connection on Ω_1, through `Φ¹`.
pub fn simplex_holonomy_1(conn: &Connection) -> Result<GroupElement, HolonomyError> {
    require_dim(conn.context().dim(), 1)?;
    let (ctx, phi) = edge_parametrization();
    let pulled = Connection::new(conn.algebra().clone(), conn.form().pullback(&ctx, &phi)?)?;
    pulled.path_holonomy(Var::fiber("x1"), &Poly::zero(), &Poly::one())
}

/// Surface holonomy of a pair on Ω_2 through `Φ²`, valued at vertex 0.
pub fn simplex_holonomy_2(pair: &ConnectionCurvaturePair) -> Result<GroupElement, HolonomyError> {
    require_dim(pair.context().dim(), 2)?;
    let (ctx, phi) = triangle_parametrization();
    let pulled = pair.pullback(&ctx, &phi)?;
    let (zero, one) = (Poly::zero(), Poly::one());
    surface_holonomy(
        &pulled,
        Var::fiber("x1"),
        Var::fiber("x2"),
        &zero,
        &one,
        &zero,
        &one,
    )
}

fn pull_pair(
    pair: &ConnectionCurvaturePair,
    f: &MonotoneMap,
) -> Result<ConnectionCurvaturePair, HolonomyError> {
    pair.pullback(&omega(f.source()), &f.substitution())
}

/// The volume identity on Ω_3 with faces pulled back along cofaces. `forced`
/// compares `ρ(P_{Δ¹} f*)^{-1}(P ∂_0*)` with `(P ∂_2*)^{-1}(P ∂_1*)(P ∂_3*)`;
/// `literal` uses `ρ(P_{Δ¹} f*)` instead. `f` is the edge `0 ↦ 0, 1 ↦ 1`.
pub fn gauss_simplex_check(pair: &ConnectionCurvaturePair) -> Result<GaussOutcome, HolonomyError> {
    require_dim(pair.context().dim(), 3)?;
    let faces = (0..4)
        .map(|i| simplex_holonomy_2(&pull_pair(pair, &MonotoneMap::face(3, i))?))
        .collect::<Result<Vec<_>, _>>()?;
    let edge = MonotoneMap::new(vec![0, 1], 3)?;
    let t = simplex_holonomy_1(&pull_pair(pair, &edge)?.connection())?;
    let vertex0: Vec<(Var, Poly)> = pair
        .context()
        .fiber_vars()
        .iter()
        .map(|v| (*v, Poly::zero()))
        .collect();
    let h = pair.cm.h.substitute(&Substitution::unchecked(vertex0));
    let rep = pair.cm.rho_representation();
    let rhs = GroupElement::product(&h, [&faces[2].inverse(), &faces[1], &faces[3]]);
    Ok(GaussOutcome {
        forced: Comparison {
            lhs: rep.apply(&t.inverse()).apply(&faces[0].log),
            rhs: rhs.log.clone(),
        },
        literal: Comparison {
            lhs: rep.apply(&t).apply(&faces[0].log),
            rhs: rhs.log,
        },
    })
}
