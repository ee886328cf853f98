//! Exact polynomials over the rationals, the structured polynomials the
//! code builders consume, and checkers for the moment and root-of-unity
//! identities their coefficients satisfy.

mod identities;
mod partition;
mod poly;

pub use identities::{
    check_moment_identities, check_root_identities, make_type_a_f, make_type_b_f, make_type_b_f_strict,
    repunit, MomentReport, RootClassSums, RootReport,
};
pub use partition::{validate_partition_tuple, PartitionPolynomialTuple, ValidatedTuple};
pub use poly::RationalPolynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("p_{} is not an integer at z = {z}", part + 1)]
    NotAnInteger { part: usize, z: usize },
    #[error("p_{} is negative at z = {z}", part + 1)]
    NegativePart { part: usize, z: usize },
    #[error("parts sum to {sum} at z = {z}, expected {expected}")]
    SumMismatch { z: usize, sum: String, expected: usize },
    #[error("coefficient f_{z} is negative")]
    NegativeCoefficient { z: usize },
    #[error("partition tuple needs at least 2 polynomials, got {0}")]
    TooFewParts(usize),
}
