//! Nilpotent Lie algebras, DGLAs, BCH, adjoint series and crossed modules.

mod algebra;
mod crossed;
mod matrix;
mod model;
mod series;
mod vector;

#[cfg(test)]
mod tests;

pub use algebra::{Derivation, GroupElement, LieAlgebra, NilpotentRepresentation};
pub use crossed::CrossedModule;
pub use matrix::Matrix;
pub use model::{koszul, BasisElement, DGLAModel, LieElement, ModelFile, MAX_DEGREE, MIN_DEGREE};
pub use series::Series;
pub use vector::Vector;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("basis element {name} has degree {degree}, outside -1..=2")]
    DegreeOutOfRange { name: String, degree: i32 },
    #[error("differential entry {from} -> {to} does not raise degree by one")]
    DifferentialDegree { from: usize, to: usize },
    #[error("bracket entry [{i}, {j}] -> {k} has the wrong degree")]
    BracketDegree { i: usize, j: usize, k: usize },
    #[error("bracket entries for [{i}, {j}] -> {k} violate graded antisymmetry")]
    Antisymmetry { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("differential does not square to zero on basis element {index}")]
    DifferentialSquare { index: usize },
    #[error("Leibniz rule fails on basis pair ({i}, {j})")]
    Leibniz { i: usize, j: usize },
    #[error("declared class {declared} but lower central series has length {actual}")]
    Nilpotency { declared: usize, actual: usize },
    #[error("expected {expected} coefficients, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands have incompatible degrees")]
    DegreeMismatch,
    #[error("unknown series {0:?}")]
    UnknownSeries(String),
    #[error("not a derivation on basis pair ({i}, {j}): residual {residual}")]
    NotDerivation {
        i: usize,
        j: usize,
        residual: String,
    },
    #[error("not a Maurer-Cartan element: defect {0}")]
    NotMaurerCartan(String),
    #[error("crossed module axiom: {0}")]
    CrossedModule(String),
    #[error("representation property fails on ({i}, {j})")]
    Representation { i: usize, j: usize },
    #[error("representation is not nilpotent within bound {bound}")]
    RepresentationNotNilpotent { bound: usize },
    #[error("not a DGLA morphism: {0}")]
    NotMorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
}
