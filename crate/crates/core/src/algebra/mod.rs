//! Exact arithmetic kernel: rationals, interned variables, sparse multivariate
//! polynomials over Q and the Bernoulli numbers used by the Magnus-type series.

mod bernoulli;
mod parse;
mod poly;
mod rational;
mod var;

pub use bernoulli::{bernoulli_number, BernoulliTable};
pub use poly::{Monomial, Poly, Substitution};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use var::{Var, VarKind};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("variable `{name}` is already tagged as {existing:?}, cannot re-tag as {requested:?}")]
    TagConflict {
        name: String,
        existing: VarKind,
        requested: VarKind,
    },
    #[error(
        "parameter variable `{var}` cannot be bound to an expression in fiber variable `{fiber}`"
    )]
    ParameterBinding { var: String, fiber: String },
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("malformed polynomial {0}")]
    BadPolynomial(String),
}
