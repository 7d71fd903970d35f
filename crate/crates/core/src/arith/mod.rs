//! Exact scalars and polynomials: rationals, tropical numbers in both
//! conventions, Puiseux-polynomial coefficients and Laurent polynomials.

mod laurent;
mod puiseux;
pub mod rational;
mod trop;

pub use laurent::{Exponent, LaurentPoly, LaurentTermDoc};
pub use puiseux::{CoeffTermDoc, PuiseuxCoeff};
pub use rational::{format_rational, int, parse_rational, rat, to_decimal, QStr, Rational, ZInt};
pub use trop::{LogNum, TropNum};

use thiserror::Error;

/// Errors from exact arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("not a rational number: {0:?}")]
    BadRational(String),
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    /// A negative power of a coordinate evaluated where that coordinate vanishes.
    #[error("negative exponent in variable {var} against an infinite coordinate")]
    NegativeExponentAtInf { var: usize },
    #[error("polynomial is not invertible in the Laurent ring")]
    NotInvertible,
    #[error("coefficient depends on t")]
    NonConstantCoefficient,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent too large")]
    ExponentTooLarge,
}

/// The valuation of a coefficient (`coeff_val`).
pub fn coeff_val(c: &PuiseuxCoeff) -> TropNum {
    c.val()
}
