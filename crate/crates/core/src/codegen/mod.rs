//! Builders for permutation-invariant codes: sign-split qubit codes,
//! residue-class qudit codes, the one-parameter family of residue-class
//! codes, and the binomial (GNU) codes that precede them.

mod builders;
mod code;
mod descriptor;

pub use builders::{build, build_gnu, build_theta_family, build_type_a, build_type_b, CodeSpec, Construction};
pub use code::{logical_overlap, LogicalVector, PICode};
pub use descriptor::{AmpTerm, CodeDescriptor, DescriptorError};

use thiserror::Error;

use crate::combinatorics::{CombinatoricsError, WeightVector};
use crate::exactnum::ExactError;
use crate::polyid::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodegenError {
    #[error("orbits {a} and {b} are at distance {distance}, need at least {required}")]
    DistanceTooSmall {
        a: WeightVector,
        b: WeightVector,
        distance: usize,
        required: usize,
    },
    #[error("degree bound violated: 2t·θ = {} > m - 1 = {}", 2 * t * theta, m.saturating_sub(1))]
    DegreeBoundViolated { theta: usize, t: usize, m: usize },
    #[error("f is not divisible by {factor}")]
    NotDivisible { factor: String },
    #[error("coefficient f_{z} is negative")]
    NegativeCoefficient { z: usize },
    #[error("residue class {class} sums to {sum}, expected {expected}")]
    ClassSumMismatch { class: usize, sum: String, expected: String },
    #[error("parameter bound violated: {0}")]
    ParameterBoundViolated(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid code spec: {0}")]
    InvalidSpec(String),
    #[error("code invariant violated: {0}")]
    InvariantViolated(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

impl CodegenError {
    /// Stable machine-readable name of the failed precondition.
    pub fn kind(&self) -> &'static str {
        match self {
            CodegenError::DistanceTooSmall { .. } => "DistanceTooSmall",
            CodegenError::DegreeBoundViolated { .. } => "DegreeBoundViolated",
            CodegenError::NotDivisible { .. } => "NotDivisible",
            CodegenError::NegativeCoefficient { .. } => "NegativeCoefficient",
            CodegenError::ClassSumMismatch { .. } => "ClassSumMismatch",
            CodegenError::ParameterBoundViolated(_) => "ParameterBoundViolated",
            CodegenError::DimensionMismatch(_) => "DimensionMismatch",
            CodegenError::InvalidSpec(_) => "InvalidSpec",
            CodegenError::InvariantViolated(_) => "InvariantViolated",
            CodegenError::Poly(e) => match e {
                PolyError::NotAnInteger { .. } => "NotAnInteger",
                PolyError::NegativePart { .. } => "NegativePart",
                PolyError::SumMismatch { .. } => "SumMismatch",
                PolyError::NegativeCoefficient { .. } => "NegativeCoefficient",
                PolyError::TooFewParts(_) => "TooFewParts",
            },
            CodegenError::Exact(ExactError::NegativeRadicand(_)) => "NegativeRadicand",
            CodegenError::Exact(ExactError::RadicandTooLarge { .. }) => "RadicandTooLarge",
            CodegenError::Exact(_) => "ExactArithmetic",
            CodegenError::Combinatorics(CombinatoricsError::TooFewOrbits(_)) => "TooFewOrbits",
            CodegenError::Combinatorics(_) => "PartitionMismatch",
        }
    }
}
