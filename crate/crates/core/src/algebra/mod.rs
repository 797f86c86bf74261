//! Exact arithmetic: rationals, Laurent polynomials, rational functions,
//! truncated series and matrices.

mod matrix;
mod poly;
mod ratfunc;
pub(crate) mod render;
mod ring;
mod series;
mod unipoly;

use thiserror::Error;

pub use matrix::Matrix;
pub use poly::{Assignment, MultiPoly, Poly, Symtab, RING_VARS};
pub use ratfunc::RatFunc;
pub use ring::{CoeffFormat, Field, IntegralDomain, Ring};
pub use series::TruncSeries;
pub use unipoly::{LaurentPoly, UniPoly};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomials live over different variable tables")]
    SymtabMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent on chord variable `{0}`")]
    NegativeChordExponent(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero: substitution hits a pole")]
    Pole,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("series must have constant term {expected}")]
    SeriesConstantTerm { expected: i32 },
    #[error("value assigned to `{0}` is not invertible but appears with a negative exponent")]
    NotInvertible(String),
    #[error("matrix is singular")]
    Singular,
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
