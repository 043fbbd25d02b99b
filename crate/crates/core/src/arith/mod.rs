//! Exact arithmetic: rationals, Gaussian rationals, truncated Laurent series
//! in `u`, and rational forms in `q` with cyclotomic-type denominators.

mod gaussian;
mod poly;
mod qform;
mod serde_impl;
mod series;

pub use gaussian::{format_rational, parse_rational, rat, rat_int, GaussianRational, Rational};
pub use poly::LaurentPoly;
pub use qform::QForm;
pub use series::TruncatedULaurent;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert the zero series")]
    ZeroSeries,
    #[error("truncation order must be nonnegative, got {0}")]
    NegativeOrder(i64),
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
}
