use crate::algebra::{Poly, Substitution, Var};
use crate::holonomy::{broken_line_holonomy, BrokenLine, HolonomyError};
use crate::lie::{GroupElement, LieAlgebra};

use super::{surface_holonomy, Comparison, ConnectionCurvaturePair};

/// `𝔥` with all fiber coordinates frozen at `point`.
pub(crate) fn h_at(pair: &ConnectionCurvaturePair, point: &[Poly]) -> LieAlgebra {
    pair.cm.h.substitute(&point_substitution(pair, point))
}

pub(crate) fn point_substitution(pair: &ConnectionCurvaturePair, point: &[Poly]) -> Substitution {
    Substitution::unchecked(
        pair.context()
            .fiber_vars()
            .iter()
            .copied()
            .zip(point.iter().cloned())
            .collect(),
    )
}

/// Surface holonomy of the rectangle spanned by `v1`, `v2` with lower corner
/// `base` (a full point of the pair's fiber space) and upper corner values
/// `y1`, `y2`. Valued at `base`.
pub fn rectangle_holonomy(
    pair: &ConnectionCurvaturePair,
    v1: Var,
    v2: Var,
    base: &[Poly],
    y1: &Poly,
    y2: &Poly,
) -> Result<GroupElement, HolonomyError> {
    let ctx = pair.context();
    if base.len() != ctx.dim() {
        return Err(HolonomyError::DimensionMismatch {
            expected: ctx.dim(),
            found: base.len(),
        });
    }
    let i1 = ctx.position(v1)?;
    let i2 = ctx.position(v2)?;
    let frozen: Vec<(Var, Poly)> = ctx
        .fiber_vars()
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != i1 && l != i2)
        .map(|(l, v)| (*v, base[l].clone()))
        .collect();
    let restricted = pair.restrict(&frozen);
    surface_holonomy(&restricted, v1, v2, &base[i1], y1, &base[i2], y2)
}

/// A chain of rectangles: a special broken line in the coordinates `coords`
/// swept along `axis` from `x` to `y`. The pair's fibers must be exactly
/// `axis` together with `coords`.
#[derive(Clone, Debug)]
pub struct RectangleChain {
    pub axis: Var,
    pub coords: Vec<Var>,
    pub line: BrokenLine,
    pub x: Poly,
    pub y: Poly,
}

impl RectangleChain {
    /// Full point with the axis at `s` and the remaining coordinates at `p`.
    fn lift(
        &self,
        pair: &ConnectionCurvaturePair,
        s: &Poly,
        p: &[Poly],
    ) -> Result<Vec<Poly>, HolonomyError> {
        pair.context()
            .fiber_vars()
            .iter()
            .map(|v| {
                if *v == self.axis {
                    Ok(s.clone())
                } else if let Some(l) = self.coords.iter().position(|c| c == v) {
                    Ok(p[l].clone())
                } else {
                    Err(HolonomyError::InvalidBrokenLine(format!(
                        "chain does not assign fiber coordinate {v}"
                    )))
                }
            })
            .collect()
    }

    fn check(&self, pair: &ConnectionCurvaturePair) -> Result<(), HolonomyError> {
        if self.line.dim() != self.coords.len() {
            return Err(HolonomyError::InvalidBrokenLine(format!(
                "line in dimension {}, chain has {} coordinates",
                self.line.dim(),
                self.coords.len()
            )));
        }
        if pair.context().dim() != self.coords.len() + 1 {
            return Err(HolonomyError::InvalidBrokenLine(format!(
                "pair has {} fiber coordinates, chain has {}",
                pair.context().dim(),
                self.coords.len() + 1
            )));
        }
        Ok(())
    }

    /// The base point `(p⁽⁰⁾, x)`.
    pub fn base_point(&self, pair: &ConnectionCurvaturePair) -> Result<Vec<Poly>, HolonomyError> {
        self.check(pair)?;
        self.lift(pair, &self.x, &self.line.points()[0])
    }

    /// The line at height `s` as a broken line in the pair's fiber space.
    fn lifted_line(
        &self,
        pair: &ConnectionCurvaturePair,
        s: &Poly,
        points: &[Vec<Poly>],
    ) -> Result<Vec<Vec<Poly>>, HolonomyError> {
        points.iter().map(|p| self.lift(pair, s, p)).collect()
    }

    /// The closed boundary loop based at `(p⁽⁰⁾, x)`: up, along the line at
    /// `y`, down, and back along the line at `x`.
    pub fn boundary(&self, pair: &ConnectionCurvaturePair) -> Result<BrokenLine, HolonomyError> {
        self.check(pair)?;
        let pts = self.line.points();
        let mut out = vec![self.lift(pair, &self.x, &pts[0])?];
        out.extend(self.lifted_line(pair, &self.y, pts)?);
        let mut back = self.lifted_line(pair, &self.x, pts)?;
        back.reverse();
        out.extend(back);
        BrokenLine::new(out)
    }
}

/// `P_S = ρ(P_{γ≤i-1})^{-1}(P_{R_i}) · P_{S≤i-1}`, valued in `exp(𝔥)` at the
/// base point of the chain.
pub fn chain_holonomy(
    pair: &ConnectionCurvaturePair,
    chain: &RectangleChain,
) -> Result<GroupElement, HolonomyError> {
    let base = chain.base_point(pair)?;
    let h_base = h_at(pair, &base);
    let conn = pair.connection();
    let rep = pair.cm.rho_representation();
    let pts = chain.line.points();
    let at_x = chain.lifted_line(pair, &chain.x, pts)?;
    let mut acc = GroupElement::identity(h_base.dim());
    for i in 0..chain.line.len() {
        let Some(j) = chain.line.moved_index(i) else {
            continue;
        };
        let pr = rectangle_holonomy(
            pair,
            chain.axis,
            chain.coords[j],
            &at_x[i],
            &chain.y,
            &pts[i + 1][j],
        )?;
        let moved = if i == 0 {
            pr
        } else {
            let g = broken_line_holonomy(&conn, &BrokenLine::new(at_x[..=i].to_vec())?)?;
            GroupElement::exp(rep.apply(&g.inverse()).apply(&pr.log))
        };
        acc = moved.mul(&h_base, &acc);
    }
    Ok(acc)
}

/// Compares `log P_{∂S}` with `δ(log P_S)` at the base point.
pub fn green_check(
    pair: &ConnectionCurvaturePair,
    chain: &RectangleChain,
) -> Result<Comparison, HolonomyError> {
    let ps = chain_holonomy(pair, chain)?;
    let boundary = broken_line_holonomy(&pair.connection(), &chain.boundary(pair)?)?;
    let base = chain.base_point(pair)?;
    let cm = pair.cm.substitute(&point_substitution(pair, &base));
    Ok(Comparison {
        lhs: boundary.log,
        rhs: cm.delta(&ps.log),
    })
}

/// A pair of opposite corners in the three-dimensional fiber space.
#[derive(Clone, Debug)]
pub struct Parallelepiped {
    pub x: [Poly; 3],
    pub y: [Poly; 3],
}

/// Both sides of the volume identity. `forced` is
/// `P_S = (P_R|x1)^{-1} · ρ(P_{x1}^{y1})^{-1}(P_R|y1)`; `literal` multiplies
/// `ρ(P_{x1}^{y1})(P_R|y1) · (P_R|x1)^{-1}`, which only agrees in degenerate
/// situations.
#[derive(Clone, Debug)]
pub struct GaussOutcome {
    pub forced: Comparison,
    pub literal: Comparison,
}

pub fn gauss_check(
    pair: &ConnectionCurvaturePair,
    q: &Parallelepiped,
) -> Result<GaussOutcome, HolonomyError> {
    let ctx = pair.context().clone();
    if ctx.dim() != 3 {
        return Err(HolonomyError::DimensionMismatch {
            expected: 3,
            found: ctx.dim(),
        });
    }
    let v = ctx.fiber_vars();
    let (c1, c2, c3) = (v[0], v[1], v[2]);
    let [x1, x2, x3] = q.x.clone();
    let [y1, y2, y3] = q.y.clone();
    let line = BrokenLine::new(vec![
        vec![x2.clone(), x3.clone()],
        vec![y2.clone(), x3.clone()],
        vec![y2.clone(), y3.clone()],
        vec![x2.clone(), y3.clone()],
        vec![x2.clone(), x3.clone()],
    ])?;
    let chain = RectangleChain {
        axis: c1,
        coords: vec![c2, c3],
        line,
        x: x1.clone(),
        y: y1.clone(),
    };
    let base = vec![x1.clone(), x2.clone(), x3.clone()];
    let ps = chain_holonomy(pair, &chain)?;
    let pr_x = rectangle_holonomy(pair, c2, c3, &base, &y2, &y3)?;
    let pr_y = rectangle_holonomy(
        pair,
        c2,
        c3,
        &[y1.clone(), x2.clone(), x3.clone()],
        &y2,
        &y3,
    )?;
    let up = broken_line_holonomy(
        &pair.connection(),
        &BrokenLine::new(vec![base.clone(), vec![y1.clone(), x2.clone(), x3.clone()]])?,
    )?;
    let rep = pair.cm.rho_representation();
    let h = h_at(pair, &base);
    let down_moved = GroupElement::exp(rep.apply(&up.inverse()).apply(&pr_y.log));
    let forced = pr_x.inverse().mul(&h, &down_moved);
    let up_moved = GroupElement::exp(rep.apply(&up).apply(&pr_y.log));
    let literal = up_moved.mul(&h, &pr_x.inverse());
    Ok(GaussOutcome {
        forced: Comparison {
            lhs: ps.log.clone(),
            rhs: forced.log,
        },
        literal: Comparison {
            lhs: ps.log,
            rhs: literal.log,
        },
    })
}
