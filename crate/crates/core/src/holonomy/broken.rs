use std::collections::HashMap;

use crate::algebra::{Poly, Substitution, Var};
use crate::lie::GroupElement;

use super::{solve_log_ode, Connection, HolonomyError};

/// An axis-parallel polygonal path: consecutive points differ in at most one
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrokenLine {
    points: Vec<Vec<Poly>>,
}

impl BrokenLine {
    pub fn new(points: Vec<Vec<Poly>>) -> Result<Self, HolonomyError> {
        let Some(k) = points.first().map(Vec::len) else {
            return Err(HolonomyError::InvalidBrokenLine("no points".into()));
        };
        if points.iter().any(|p| p.len() != k) {
            return Err(HolonomyError::InvalidBrokenLine(
                "points of different dimension".into(),
            ));
        }
        for (i, w) in points.windows(2).enumerate() {
            let moved = (0..k).filter(|&l| w[0][l] != w[1][l]).count();
            if moved > 1 {
                return Err(HolonomyError::InvalidBrokenLine(format!(
                    "step {i} moves {moved} coordinates"
                )));
            }
        }
        Ok(BrokenLine { points })
    }

    pub fn points(&self) -> &[Vec<Poly>] {
        &self.points
    }

    /// Number of segments.
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// Coordinate moved by segment `i` (from point `i` to `i + 1`), or `None`
    /// for a degenerate segment.
    pub fn moved_index(&self, i: usize) -> Option<usize> {
        (0..self.dim()).find(|&l| self.points[i][l] != self.points[i + 1][l])
    }

    pub fn is_closed(&self) -> bool {
        self.points.first() == self.points.last()
    }

    /// `-γ`: the same points in reverse order.
    pub fn reversed(&self) -> BrokenLine {
        let mut points = self.points.clone();
        points.reverse();
        BrokenLine { points }
    }

    /// `τγ` for a closed line: start at the second point and go around once.
    pub fn rotated(&self) -> Result<BrokenLine, HolonomyError> {
        if !self.is_closed() || self.is_empty() {
            return Err(HolonomyError::InvalidBrokenLine(
                "rotation needs a closed line".into(),
            ));
        }
        let n = self.len();
        let points = (0..=n).map(|i| self.points[(i + 1) % n].clone()).collect();
        Ok(BrokenLine { points })
    }

    /// The prefix with points `0..=i`.
    pub fn prefix(&self, i: usize) -> BrokenLine {
        BrokenLine {
            points: self.points[..=i].to_vec(),
        }
    }
}

/// Axis holonomies of a connection computed once with symbolic endpoints and
/// then specialized per segment.
pub struct AxisHolonomy<'a> {
    conn: &'a Connection,
    cache: HashMap<usize, (crate::lie::Vector, Var)>,
}

impl<'a> AxisHolonomy<'a> {
    pub fn new(conn: &'a Connection) -> Self {
        AxisHolonomy {
            conn,
            cache: HashMap::new(),
        }
    }

    fn symbolic(&mut self, j: usize) -> Result<&(crate::lie::Vector, Var), HolonomyError> {
        if !self.cache.contains_key(&j) {
            let axis = self.conn.context().fiber_vars()[j];
            let lo = Var::fiber(&format!("{}__from", axis.name()));
            let rhs = -&self.conn.component(axis)?;
            let z = solve_log_ode(self.conn.algebra(), axis, &Poly::var(lo), &rhs, None)?;
            self.cache.insert(j, (z, lo));
        }
        Ok(&self.cache[&j])
    }

    /// Transport from `p` to `q`, which differ at most in coordinate `j`.
    pub fn segment(
        &mut self,
        j: usize,
        p: &[Poly],
        q: &[Poly],
    ) -> Result<GroupElement, HolonomyError> {
        let fibers = self.conn.context().fiber_vars().to_vec();
        let (z, lo) = self.symbolic(j)?.clone();
        let mut bindings: Vec<(Var, Poly)> = fibers
            .iter()
            .enumerate()
            .map(|(l, v)| (*v, if l == j { q[l].clone() } else { p[l].clone() }))
            .collect();
        bindings.push((lo, p[j].clone()));
        Ok(GroupElement::exp(
            z.substitute(&Substitution::unchecked(bindings)),
        ))
    }
}

/// Ordered product of segment transports, last segment leftmost.
pub fn broken_line_holonomy(
    conn: &Connection,
    line: &BrokenLine,
) -> Result<GroupElement, HolonomyError> {
    if line.dim() != conn.context().dim() {
        return Err(HolonomyError::InvalidBrokenLine(format!(
            "line in dimension {}, connection in dimension {}",
            line.dim(),
            conn.context().dim()
        )));
    }
    let mut axes = AxisHolonomy::new(conn);
    let alg = conn.algebra();
    let mut acc = GroupElement::identity(alg.dim());
    for i in 0..line.len() {
        if let Some(j) = line.moved_index(i) {
            let seg = axes.segment(j, &line.points[i], &line.points[i + 1])?;
            acc = seg.mul(alg, &acc);
        }
    }
    Ok(acc)
}
