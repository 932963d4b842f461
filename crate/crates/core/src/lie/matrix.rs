use std::fmt;

use crate::algebra::{Poly, Rational, Var};

use super::Vector;

/// Square matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Poly>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![Poly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|q| q * p).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let n = self.n;
        let mut out = Vector::zero(n);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if !a.is_zero() && !v.0[j].is_zero() {
                    out.0[i] += &(a * &v.0[j]);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn derivative(&self, v: Var) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.derivative(v)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `exp(self)` for a nilpotent matrix; the series stops at the first
    /// vanishing power.
    pub fn exp_nilpotent(&self) -> Matrix {
        let mut acc = Matrix::identity(self.n);
        let mut term = Matrix::identity(self.n);
        for k in 1..=self.n {
            term = term
                .mul(self)
                .scale(&Rational::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// `log(self)` for a unipotent matrix.
    pub fn log_unipotent(&self) -> Matrix {
        let nil = self.sub(&Matrix::identity(self.n));
        let mut acc = Matrix::zero(self.n);
        let mut power = Matrix::identity(self.n);
        for k in 1..=self.n {
            power = power.mul(&nil);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Rational::new(sign.into(), (k as i64).into())));
        }
        acc
    }

    /// Inverse of a unipotent matrix via the Neumann series.
    pub fn inverse_unipotent(&self) -> Matrix {
        let nil = Matrix::identity(self.n).sub(self);
        let mut acc = Matrix::identity(self.n);
        let mut power = Matrix::identity(self.n);
        for _ in 0..self.n {
            power = power.mul(&nil);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        acc
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
