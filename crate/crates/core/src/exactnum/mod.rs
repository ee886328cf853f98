//! Exact scalars: arbitrary-precision rationals and finite sums of rational
//! multiples of square roots of squarefree integers.
//!
//! Every amplitude and every matrix element the verifier produces lives in
//! [`RadicalSum`], so equality and sign tests are decisions, not float
//! comparisons.

mod radical;
mod rational;
mod squarefree;

pub use radical::{sqrt_of_rational, sqrt_of_rational_with_ceiling, RadicalSum, RadicalTerm};
pub use rational::{format_rational, parse_rational, rational, Rational};
pub use squarefree::{is_squarefree, square_decompose, DEFAULT_RADICAND_CEILING};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("square root of negative rational {0}")]
    NegativeRadicand(String),
    #[error("radicand {value} exceeds the ceiling {ceiling}")]
    RadicandTooLarge { value: String, ceiling: u64 },
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("radicand must be a positive integer, got {0}")]
    InvalidRadicand(u64),
}
