use crate::algebra::Substitution;

use super::{DGLAModel, LieAlgebra, LieElement, LieError, Matrix, NilpotentRepresentation, Vector};

/// Crossed module of Lie algebras `h --δ--> g --ρ--> Der(h)`; coefficients
/// may be polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub h: LieAlgebra,
    pub g: LieAlgebra,
    /// Images `δ(e_a)` of the basis of `h`.
    pub delta: Vec<Vector>,
    /// Matrices `ρ(e_x)` acting on `h`.
    pub rho: Vec<Matrix>,
}

impl CrossedModule {
    pub fn delta(&self, a: &Vector) -> Vector {
        let mut out = self.g.zero();
        for (c, img) in a.0.iter().zip(&self.delta) {
            if !c.is_zero() {
                out.add_assign(&img.mul_poly(c));
            }
        }
        out
    }

    pub fn rho_matrix(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zero(self.h.dim());
        for (c, mi) in x.0.iter().zip(&self.rho) {
            if !c.is_zero() {
                m = m.add(&mi.mul_poly(c));
            }
        }
        m
    }

    pub fn rho(&self, x: &Vector, a: &Vector) -> Vector {
        self.rho_matrix(x).apply(a)
    }

    /// `ρ` as a representation of `g` on `h`.
    pub fn rho_representation(&self) -> NilpotentRepresentation {
        NilpotentRepresentation::new(
            self.h.dim(),
            self.rho.clone(),
            self.g.class().max(self.h.class()).max(1),
        )
    }

    /// Substitutes in every coefficient.
    pub fn substitute(&self, s: &Substitution) -> CrossedModule {
        CrossedModule {
            h: self.h.substitute(s),
            g: self.g.substitute(s),
            delta: self.delta.iter().map(|v| v.substitute(s)).collect(),
            rho: self
                .rho
                .iter()
                .map(|m| m.map(|p| p.substitute(s)))
                .collect(),
        }
    }

    /// First basis pair violating `ρ(δa)b = [a, b]_h`.
    pub fn peiffer_defect(&self) -> Option<(usize, usize, Vector)> {
        for a in 0..self.h.dim() {
            let da = self.delta(&self.h.basis(a));
            for b in 0..self.h.dim() {
                let lhs = self.rho(&da, &self.h.basis(b));
                let rhs = self.h.bracket(&self.h.basis(a), &self.h.basis(b));
                let res = &lhs - &rhs;
                if !res.is_zero() {
                    return Some((a, b, res));
                }
            }
        }
        None
    }

    /// First basis pair violating `δ(ρ(x)a) = [x, δa]`.
    pub fn equivariance_defect(&self) -> Option<(usize, usize, Vector)> {
        for x in 0..self.g.dim() {
            let ex = self.g.basis(x);
            for a in 0..self.h.dim() {
                let ea = self.h.basis(a);
                let lhs = self.delta(&self.rho(&ex, &ea));
                let rhs = self.g.bracket(&ex, &self.delta(&ea));
                let res = &lhs - &rhs;
                if !res.is_zero() {
                    return Some((x, a, res));
                }
            }
        }
        None
    }

    /// First pair violating `ρ([x, y]) = [ρ(x), ρ(y)]`.
    pub fn action_defect(&self) -> Option<(usize, usize)> {
        for x in 0..self.g.dim() {
            for y in 0..self.g.dim() {
                let lhs = self.rho_matrix(&self.g.bracket(&self.g.basis(x), &self.g.basis(y)));
                let rhs = self.rho[x].commutator(&self.rho[y]);
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<(), LieError> {
        if let Some((a, b, r)) = self.peiffer_defect() {
            return Err(LieError::CrossedModule(format!(
                "Peiffer identity fails on ({a}, {b}): {r:?}"
            )));
        }
        if let Some((x, a, r)) = self.equivariance_defect() {
            return Err(LieError::CrossedModule(format!(
                "equivariance fails on ({x}, {a}): {r:?}"
            )));
        }
        if let Some((x, y)) = self.action_defect() {
            return Err(LieError::CrossedModule(format!(
                "ρ is not a homomorphism on ({x}, {y})"
            )));
        }
        Ok(())
    }
}

impl DGLAModel {
    /// The crossed module `(g^{-1}, [·,·]_γ) --δ_γ--> g^0 --ad--> Der`, without
    /// checks. γ may have polynomial coefficients.
    pub fn crossed_module_unchecked(&self, gamma: &LieElement) -> CrossedModule {
        let h = self.twisted_minus_one_unchecked(gamma);
        let g = self.degree_zero_algebra();
        let dh = self.dim(-1);
        let dg = self.dim(0);
        let delta = (0..dh)
            .map(|a| {
                let ea = LieElement::new(-1, Vector::basis(dh, a));
                let d = self.twisted_differential(gamma, &ea);
                if d.coeffs.dim() == dg {
                    d.coeffs
                } else {
                    Vector::zero(dg)
                }
            })
            .collect();
        let rho = (0..dg)
            .map(|x| {
                let ex = LieElement::new(0, Vector::basis(dg, x));
                let mut m = Matrix::zero(dh);
                for a in 0..dh {
                    let ea = LieElement::new(-1, Vector::basis(dh, a));
                    let col = self.bracket_unchecked(&ex, &ea);
                    for (i, p) in col.coeffs.0.into_iter().enumerate() {
                        m.set(i, a, p);
                    }
                }
                m
            })
            .collect();
        CrossedModule { h, g, delta, rho }
    }

    /// Builds the γ-twisted crossed module and checks the MC equation, the
    /// Peiffer identity, that ρ is an action, and the twisted Leibniz rule
    /// `δ_γ[x, a] = [x, δ_γ a] + [δ_γ x, a]`. Strict equivariance holds on
    /// the stabilizer `ker δ_γ ⊂ g^0` and is not required here.
    pub fn derive_crossed_module(&self, gamma: &LieElement) -> Result<CrossedModule, LieError> {
        self.twisted_minus_one(gamma)?;
        let cm = self.crossed_module_unchecked(gamma);
        if let Some((a, b, r)) = cm.peiffer_defect() {
            return Err(LieError::CrossedModule(format!(
                "Peiffer identity fails on ({a}, {b}): {r:?}"
            )));
        }
        if let Some((x, y)) = cm.action_defect() {
            return Err(LieError::CrossedModule(format!(
                "ρ is not a homomorphism on ({x}, {y})"
            )));
        }
        let dh = self.dim(-1);
        let dg = self.dim(0);
        for x in 0..dg {
            let ex = LieElement::new(0, Vector::basis(dg, x));
            let dx = self.twisted_differential(gamma, &ex);
            for a in 0..dh {
                let ea = LieElement::new(-1, Vector::basis(dh, a));
                let lhs = self.twisted_differential(gamma, &self.bracket_unchecked(&ex, &ea));
                let r1 = self.bracket_unchecked(&ex, &self.twisted_differential(gamma, &ea));
                let r2 = self.bracket_unchecked(&dx, &ea);
                let res = &(&lhs.coeffs - &r1.coeffs) - &r2.coeffs;
                if !res.is_zero() {
                    return Err(LieError::CrossedModule(format!(
                        "twisted Leibniz rule fails on ({x}, {a}): {res:?}"
                    )));
                }
            }
        }
        Ok(cm)
    }
}
