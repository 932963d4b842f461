//! Relative polynomial differential forms over fiber coordinates.

mod simplex;

#[cfg(test)]
mod tests;

pub use simplex::{edge_parametrization, omega, triangle_parametrization, MonotoneMap};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Poly, Rational, Substitution, Var, VarKind};
use crate::lie::Vector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("forms live in different contexts")]
    ContextMismatch,
    #[error("{0} is not a fiber variable of the context")]
    NotFiber(String),
    #[error("a context may hold at most 32 fiber variables")]
    TooManyFibers,
    #[error("variable {0} listed twice in a context")]
    DuplicateVariable(String),
    #[error("expected a 1-form in d{0} only")]
    NotOneFormIn(String),
    #[error("parameter {var} mapped to an expression involving fiber {fiber}")]
    Tagging { var: String, fiber: String },
    #[error("invalid monotone map: {0}")]
    BadMap(String),
}

/// Ordered fiber and parameter variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormContext {
    fibers: Vec<Var>,
    params: Vec<Var>,
}

impl FormContext {
    pub fn new(fibers: Vec<Var>, params: Vec<Var>) -> Result<Arc<Self>, FormError> {
        if fibers.len() > 32 {
            return Err(FormError::TooManyFibers);
        }
        let mut seen = std::collections::HashSet::new();
        for v in fibers.iter().chain(&params) {
            if !seen.insert(*v) {
                return Err(FormError::DuplicateVariable(v.name()));
            }
        }
        for v in &fibers {
            if v.kind() != VarKind::Fiber {
                return Err(FormError::NotFiber(v.name()));
            }
        }
        Ok(Arc::new(FormContext { fibers, params }))
    }

    /// Context on fiber variables with the given names and no parameters.
    pub fn fibers(names: &[&str]) -> Arc<Self> {
        FormContext::new(names.iter().map(|n| Var::fiber(n)).collect(), Vec::new())
            .expect("distinct fiber names")
    }

    pub fn fiber_vars(&self) -> &[Var] {
        &self.fibers
    }

    pub fn param_vars(&self) -> &[Var] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.fibers.len()
    }

    pub fn position(&self, v: Var) -> Result<usize, FormError> {
        self.fibers
            .iter()
            .position(|w| *w == v)
            .ok_or_else(|| FormError::NotFiber(v.name()))
    }
}

/// Coefficients a form may carry: scalars or algebra-valued vectors.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_poly(&self, p: &Poly) -> Self;
    fn derivative(&self, v: Var) -> Self;
    fn substitute(&self, s: &Substitution) -> Self;
    fn integrate(&self, v: Var, lower: &Poly, upper: &Poly) -> Self;
}

impl Coeff for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_poly(&self, p: &Poly) -> Self {
        self * p
    }
    fn derivative(&self, v: Var) -> Self {
        Poly::derivative(self, v)
    }
    fn substitute(&self, s: &Substitution) -> Self {
        Poly::substitute(self, s)
    }
    fn integrate(&self, v: Var, lower: &Poly, upper: &Poly) -> Self {
        Poly::integrate(self, v, lower, upper)
    }
}

impl Coeff for Vector {
    fn is_zero(&self) -> bool {
        Vector::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_poly(&self, p: &Poly) -> Self {
        Vector::mul_poly(self, p)
    }
    fn derivative(&self, v: Var) -> Self {
        Vector::derivative(self, v)
    }
    fn substitute(&self, s: &Substitution) -> Self {
        Vector::substitute(self, s)
    }
    fn integrate(&self, v: Var, lower: &Poly, upper: &Poly) -> Self {
        Vector::integrate(self, v, lower, upper)
    }
}

/// Sign of moving the wedge monomial `b` past `a` into sorted order, or
/// `None` if they share a differential.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// A differential form: wedge monomials (bitmasks over the context's fiber
/// positions) with coefficients of type `V`. Zero terms are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm<V> {
    ctx: Arc<FormContext>,
    terms: BTreeMap<u32, V>,
}

pub type ScalarForm = PolyForm<Poly>;
pub type VectorForm = PolyForm<Vector>;

impl<V: Coeff> PolyForm<V> {
    pub fn zero(ctx: &Arc<FormContext>) -> Self {
        PolyForm {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(ctx: &Arc<FormContext>, terms: impl IntoIterator<Item = (u32, V)>) -> Self {
        let mut f = PolyForm::zero(ctx);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// 0-form.
    pub fn function(ctx: &Arc<FormContext>, c: V) -> Self {
        PolyForm::from_terms(ctx, [(0, c)])
    }

    /// `c dx_j` for the fiber variable `v`.
    pub fn one_form(ctx: &Arc<FormContext>, v: Var, c: V) -> Result<Self, FormError> {
        let j = ctx.position(v)?;
        Ok(PolyForm::from_terms(ctx, [(1u32 << j, c)]))
    }

    pub fn context(&self) -> &Arc<FormContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &V)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u32) -> Option<&V> {
        self.terms.get(&mask)
    }

    /// Coefficient of `dx_{i} ∧ dx_{j} ...` given by fiber variables, with
    /// the sign of sorting them.
    pub fn component(&self, vars: &[Var]) -> Result<Option<V>, FormError> {
        let mut mask = 0u32;
        let mut sign = 1i64;
        for v in vars {
            let bit = 1u32 << self.ctx.position(*v)?;
            match wedge_sign(mask, bit) {
                Some(s) => sign *= s,
                None => return Ok(None),
            }
            mask |= bit;
        }
        Ok(self
            .terms
            .get(&mask)
            .map(|c| if sign < 0 { c.neg() } else { c.clone() }))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Form degree if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.count_ones());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    fn add_term(&mut self, mask: u32, c: V) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(mask, s);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    fn same_ctx(&self, other_ctx: &Arc<FormContext>) -> Result<(), FormError> {
        if Arc::ptr_eq(&self.ctx, other_ctx) || *self.ctx == **other_ctx {
            Ok(())
        } else {
            Err(FormError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        self.same_ctx(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FormError> {
        self.add(&other.neg())
    }

    pub fn map<W: Coeff>(&self, f: impl Fn(&V) -> W) -> PolyForm<W> {
        let mut out = PolyForm::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.map(|c| c.mul_poly(p))
    }

    /// Wedge product with a custom coefficient pairing.
    pub fn wedge_with<W: Coeff, U: Coeff>(
        &self,
        other: &PolyForm<W>,
        pair: impl Fn(&V, &W) -> U,
    ) -> Result<PolyForm<U>, FormError> {
        self.same_ctx(&other.ctx)?;
        let mut out = PolyForm::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(sign) = wedge_sign(*ma, *mb) {
                    let c = pair(ca, cb);
                    out.add_term(ma | mb, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Relative differential: differentiates in fiber variables only.
    pub fn rel_differential(&self) -> Self {
        let mut out = PolyForm::zero(&self.ctx);
        for (m, c) in &self.terms {
            for (j, v) in self.ctx.fibers.iter().enumerate() {
                let bit = 1u32 << j;
                if let Some(sign) = wedge_sign(bit, *m) {
                    let dc = c.derivative(*v);
                    out.add_term(bit | m, if sign < 0 { dc.neg() } else { dc });
                }
            }
        }
        out
    }

    /// Left interior product with `∂/∂v`.
    pub fn contract(&self, v: Var) -> Result<Self, FormError> {
        let j = self.ctx.position(v)?;
        let bit = 1u32 << j;
        let mut out = PolyForm::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let before = (m & (bit - 1)).count_ones();
            out.add_term(
                m & !bit,
                if before.is_multiple_of(2) {
                    c.clone()
                } else {
                    c.neg()
                },
            );
        }
        Ok(out)
    }

    /// Substitutes in coefficients only (parameters or evaluation of fiber
    /// variables that no longer appear as differentials).
    pub fn substitute_coefficients(&self, s: &Substitution) -> Self {
        self.map(|c| c.substitute(s))
    }

    /// Pulls back along `φ`, which assigns a polynomial in the source
    /// context's variables to every fiber variable of `self`'s context
    /// (unassigned ones map to themselves and must be fibers of the source).
    pub fn pullback(
        &self,
        source: &Arc<FormContext>,
        phi: &[(Var, Poly)],
    ) -> Result<Self, FormError> {
        for (v, p) in phi {
            if v.kind() == VarKind::Parameter {
                if let Some(f) = p.vars().into_iter().find(|w| w.kind() == VarKind::Fiber) {
                    return Err(FormError::Tagging {
                        var: v.name(),
                        fiber: f.name(),
                    });
                }
            }
        }
        let subst = Substitution::unchecked(phi.to_vec());
        let images: Vec<ScalarForm> = self
            .ctx
            .fibers
            .iter()
            .map(|v| {
                let image = subst.get(*v).cloned().unwrap_or_else(|| Poly::var(*v));
                PolyForm::function(source, image).rel_differential()
            })
            .collect();
        let mut out = PolyForm::zero(source);
        for (m, c) in &self.terms {
            let mut acc: ScalarForm = PolyForm::function(source, Poly::one());
            let mut rest = *m;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                acc = acc.wedge_with(&images[j], |a, b| a * b)?;
                rest &= rest - 1;
            }
            let c = c.substitute(&subst);
            for (mm, p) in &acc.terms {
                out.add_term(*mm, c.mul_poly(p));
            }
        }
        Ok(out)
    }

    /// `∫_{lower}^{upper}` of a 1-form in `dv` alone.
    pub fn fiber_integrate(&self, v: Var, lower: &Poly, upper: &Poly) -> Result<V, FormError> {
        let bit = 1u32 << self.ctx.position(v)?;
        let mut result = None;
        for (m, c) in &self.terms {
            if *m != bit {
                return Err(FormError::NotOneFormIn(v.name()));
            }
            result = Some(c.integrate(v, lower, upper));
        }
        match result {
            Some(r) => Ok(r),
            None => Err(FormError::NotOneFormIn(v.name())),
        }
    }
}

impl PolyForm<Poly> {
    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        self.wedge_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Scalar-times-vector wedge.
    pub fn wedge_vector(&self, other: &VectorForm) -> Result<VectorForm, FormError> {
        self.wedge_with(other, |a, b| b.mul_poly(a))
    }
}

impl<V: Coeff> fmt::Debug for PolyForm<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            let mut rest = *m;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                write!(f, " d{}", self.ctx.fibers[j])?;
                rest &= rest - 1;
            }
        }
        Ok(())
    }
}
