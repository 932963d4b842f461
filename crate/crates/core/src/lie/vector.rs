use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{Poly, Rational, Substitution, Var};

/// A coordinate vector with polynomial entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector(pub Vec<Poly>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![Poly::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Vector::zero(dim);
        v.0[i] = Poly::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Vector(self.0.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Vector(self.0.iter().map(|q| q * p).collect())
    }

    pub fn derivative(&self, v: Var) -> Self {
        Vector(self.0.iter().map(|p| p.derivative(v)).collect())
    }

    pub fn antiderivative(&self, v: Var) -> Self {
        Vector(self.0.iter().map(|p| p.antiderivative(v)).collect())
    }

    pub fn integrate(&self, v: Var, lower: &Poly, upper: &Poly) -> Self {
        Vector(
            self.0
                .iter()
                .map(|p| p.integrate(v, lower, upper))
                .collect(),
        )
    }

    pub fn subst_one(&self, v: Var, image: &Poly) -> Self {
        Vector(self.0.iter().map(|p| p.subst_one(v, image)).collect())
    }

    pub fn substitute(&self, s: &Substitution) -> Self {
        Vector(self.0.iter().map(|p| p.substitute(s)).collect())
    }

    pub fn add_assign(&mut self, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.0.iter().map(Poly::degree).max().unwrap_or(0)
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|p| -p).collect())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| format!("{}", p)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
