use num_traits::{One, Signed, ToPrimitive};

use super::{PolyError, RationalPolynomial};
use crate::combinatorics::WeightVector;
use crate::exactnum::Rational;

/// Polynomials `p_1(z), …, p_q(z)` meant to produce an ordered partition of
/// `total` at every `z` in `0..=range`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPolynomialTuple {
    pub polys: Vec<RationalPolynomial>,
    pub total: usize,
    pub range: usize,
}

/// A tuple checked on its whole evaluation range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedTuple {
    pub tuple: PartitionPolynomialTuple,
    /// `weights[z] = p(z)`
    pub weights: Vec<WeightVector>,
    /// Largest degree among the `p_i`.
    pub theta: usize,
}

impl PartitionPolynomialTuple {
    pub fn new(polys: Vec<RationalPolynomial>, total: usize, range: usize) -> Self {
        Self { polys, total, range }
    }

    pub fn q(&self) -> usize {
        self.polys.len()
    }

    pub fn theta(&self) -> usize {
        self.polys.iter().map(RationalPolynomial::degree).max().unwrap_or(0)
    }

    /// The linear tuple `(s·z, N - s·z)`.
    pub fn linear_pair(step: i64, total: usize, range: usize) -> Self {
        Self::new(
            vec![
                RationalPolynomial::from_integers(&[0, step]),
                RationalPolynomial::from_integers(&[total as i64, -step]),
            ],
            total,
            range,
        )
    }
}

pub fn validate_partition_tuple(p: &PartitionPolynomialTuple) -> Result<ValidatedTuple, PolyError> {
    if p.q() < 2 {
        return Err(PolyError::TooFewParts(p.q()));
    }
    let mut weights = Vec::with_capacity(p.range + 1);
    for z in 0..=p.range {
        let mut parts = Vec::with_capacity(p.q());
        let mut sum = Rational::from_integer(0.into());
        for (part, poly) in p.polys.iter().enumerate() {
            let v = poly.eval_integer(z as i64);
            if !v.denom().is_one() {
                return Err(PolyError::NotAnInteger { part, z });
            }
            if v.is_negative() {
                return Err(PolyError::NegativePart { part, z });
            }
            sum += &v;
            parts.push(v.numer().to_usize().expect("part fits in usize"));
        }
        if parts.iter().sum::<usize>() != p.total {
            return Err(PolyError::SumMismatch {
                z,
                sum: sum.to_string(),
                expected: p.total,
            });
        }
        weights.push(WeightVector::new(parts).expect("q >= 2 checked above"));
    }
    Ok(ValidatedTuple {
        tuple: p.clone(),
        weights,
        theta: p.theta(),
    })
}
