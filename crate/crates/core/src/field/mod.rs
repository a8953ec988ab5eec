//! The coefficient field: exact rational functions of the base coordinates.

pub mod function;
pub mod gcd;
pub mod matrix;
pub mod poly;

pub use function::BaseFunction;
pub use matrix::FunctionMatrix;
pub use poly::{BaseMonomial, BasePolynomial};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown base coordinate index {0}")]
    UnknownCoordinate(usize),
    #[error("substitution makes a denominator vanish identically")]
    DenominatorVanishesIdentically,
    #[error("matrix is singular")]
    SingularMatrix,
}

/// Shorthand for `num/den` as a `Rational`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
