//! Independent matrix oracles shared by the integration tests.
#![allow(dead_code)]

use dgla_holonomy::algebra::{rat, Poly, Rational, Var};
use dgla_holonomy::lie::{LieAlgebra, Matrix, NilpotentRepresentation, Vector};

pub fn h3() -> LieAlgebra {
    LieAlgebra::new(3, vec![(0, 1, 2, Poly::one())], 2).unwrap()
}

pub fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zero(n);
    m.set(i, j, Poly::one());
    m
}

/// X = E01, Y = E12, Z = E02.
pub fn h3_rep() -> NilpotentRepresentation {
    NilpotentRepresentation::new(3, vec![unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)], 3)
}

pub fn h3_vector(m: &Matrix) -> Vector {
    Vector(vec![
        m.get(0, 1).clone(),
        m.get(1, 2).clone(),
        m.get(0, 2).clone(),
    ])
}

pub fn vector(entries: &[Poly]) -> Vector {
    Vector(entries.to_vec())
}

pub fn consts(entries: &[i64]) -> Vector {
    Vector(entries.iter().map(|&c| Poly::int(c)).collect())
}

/// Exact Picard iteration for `U' = -a(s) U`, `U(lower) = I`, returned as a
/// polynomial in `s`.
pub fn picard(a: &Matrix, s: Var, lower: &Poly) -> Matrix {
    let n = a.size();
    let upper = Poly::var(s);
    let mut u = Matrix::identity(n);
    loop {
        let prod = a.mul(&u);
        let integral = prod.map(|p| p.integrate(s, lower, &upper));
        let next = Matrix::identity(n).sub(&integral);
        if next == u {
            return u;
        }
        u = next;
    }
}

/// `log(I + N)` for nilpotent `N` by the Mercator series.
pub fn matrix_log(u: &Matrix) -> Matrix {
    let n = u.size();
    let nil = u.sub(&Matrix::identity(n));
    let mut acc = Matrix::zero(n);
    let mut power = Matrix::identity(n);
    for k in 1..=n {
        power = power.mul(&nil);
        let c = Rational::new(if k % 2 == 1 { 1 } else { -1 }.into(), (k as i64).into());
        acc = acc.add(&power.scale(&c));
    }
    acc
}

/// `exp(N)` for nilpotent `N` by the truncated series.
pub fn matrix_exp(m: &Matrix) -> Matrix {
    let n = m.size();
    let mut acc = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    let mut fact = Rational::from_integer(1.into());
    for k in 1..=n {
        power = power.mul(m);
        fact *= Rational::from_integer((k as i64).into());
        acc = acc.add(&power.scale(&(Rational::from_integer(1.into()) / &fact)));
    }
    acc
}

/// Inverse of a unipotent matrix via `exp(-log u)`.
pub fn matrix_inverse(u: &Matrix) -> Matrix {
    matrix_exp(&matrix_log(u).scale(&rat(-1, 1)))
}
