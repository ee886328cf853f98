//! Exact Knill–Laflamme certification in the Dicke basis.
//!
//! Every code vector is permutation invariant, so a weight-`w` operator can
//! be moved onto the first `w` qudits without changing any logical matrix
//! element, and matrix units `|s⟩⟨s'|` there span all such operators. For
//! permutation-invariant vectors the element of `|s⟩⟨s'| ⊗ I` depends on
//! the strings only through their letter counts `(a, a')`, so checking one
//! representative per count pair certifies the whole operator space. None
//! of this touches a `q^N`-dimensional vector.

mod certify;
mod element;
mod polynomiality;

pub use certify::{
    certify_at_weight, certify_distance, kl_certify, kl_certify_with_threads, Distance, DistanceReport,
    KLCertificate, Violation,
};
pub use element::{dicke_matrix_element, logical_matrix_element, matrix_unit_classes, MatrixUnitClass};
pub use polynomiality::{coefficient_weighted_sum, diagonal_expectation, polynomiality_check, PolynomialityReport};

use thiserror::Error;

use crate::combinatorics::CombinatoricsError;
use crate::polyid::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlError {
    #[error("need {needed} evaluation points, have {available}")]
    InsufficientPoints { needed: usize, available: usize },
    #[error("logical index {index} out of range for d = {d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("weight {w} exceeds N = {total}")]
    WeightTooLarge { w: usize, total: usize },
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
