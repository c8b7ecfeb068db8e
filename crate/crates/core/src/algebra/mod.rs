//! Exact rationals with `+∞` and sparse bivariate polynomials over ℚ.

mod frame;
mod poly;
mod rational;

pub use frame::LinearFrame;
pub use poly::{BivarPoly, Exponent};
pub use rational::{parse_rat, rat, ratio, ExtRat, Rat};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("malformed rational '{0}'")]
    BadNumber(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("both monomial weights are infinite")]
    BothWeightsInfinite,
    #[error("divisor is not a nonzero homogeneous linear form")]
    NotLinear,
    #[error("linear frame is singular")]
    SingularFrame,
}
