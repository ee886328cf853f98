use num_traits::Zero;
use serde::Serialize;

use super::element::MatrixUnitClass;
use super::KlError;
use crate::combinatorics::{multinomial, CombinatoricsError};
use crate::exactnum::{format_rational, Rational};
use crate::polyid::{validate_partition_tuple, PartitionPolynomialTuple, RationalPolynomial};

/// `⟨D_p(z)| E ⊗ I |D_p(z)⟩` for every `z` in the tuple's range, as
/// `C(N-w, p(z)-a) / C(N, p(z))`; zero off the diagonal or when `a ≰ p(z)`.
pub fn diagonal_expectation(
    p: &PartitionPolynomialTuple,
    cls: &MatrixUnitClass,
    total: usize,
) -> Result<Vec<Rational>, KlError> {
    let validated = validate_partition_tuple(p)?;
    if p.total != total {
        return Err(CombinatoricsError::PartitionMismatch(format!("tuple sums to {}, not {total}", p.total)).into());
    }
    if cls.w > total {
        return Err(KlError::WeightTooLarge { w: cls.w, total });
    }
    if cls.a.q() != p.q() {
        return Err(CombinatoricsError::PartitionMismatch(format!("class has {} parts, tuple {}", cls.a.q(), p.q())).into());
    }
    validated
        .weights
        .iter()
        .map(|n| {
            if !cls.is_diagonal() {
                return Ok(Rational::zero());
            }
            match n.checked_sub(&cls.a) {
                None => Ok(Rational::zero()),
                Some(tail) => Ok(Rational::new(multinomial(total - cls.w, &tail)?, multinomial(total, n)?)),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialityReport {
    pub degree_bound: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub values: Vec<Rational>,
    /// Interpolant through the first `degree_bound + 1` points.
    #[serde(serialize_with = "ser_poly")]
    pub interpolant: RationalPolynomial,
    /// Points beyond the fit that miss the interpolant.
    pub off_curve: Vec<usize>,
    pub pass: bool,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn ser_poly<S: serde::Serializer>(p: &RationalPolynomial, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.to_strings())
}

/// Lagrange interpolant through `(z, ys[z])` for `z = 0..ys.len()`.
fn interpolate(ys: &[Rational]) -> RationalPolynomial {
    let mut acc = RationalPolynomial::zero();
    for (j, yj) in ys.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        let mut basis = RationalPolynomial::one();
        let mut denom = Rational::from_integer(1.into());
        for k in 0..ys.len() {
            if k != j {
                basis = &basis * &RationalPolynomial::from_integers(&[-(k as i64), 1]);
                denom *= Rational::from_integer((j as i64 - k as i64).into());
            }
        }
        acc = &acc + &basis.scale(&(yj / denom));
    }
    acc
}

/// Checks that the diagonal expectation is a polynomial in `z` of degree
/// at most `w·θ` across the tuple's whole range.
pub fn polynomiality_check(
    p: &PartitionPolynomialTuple,
    cls: &MatrixUnitClass,
    total: usize,
) -> Result<PolynomialityReport, KlError> {
    let degree_bound = cls.w * p.theta();
    let needed = degree_bound + 1;
    let available = p.range + 1;
    if available < needed {
        return Err(KlError::InsufficientPoints { needed, available });
    }
    let values = diagonal_expectation(p, cls, total)?;
    let interpolant = interpolate(&values[..needed]);
    let off_curve: Vec<usize> = (needed..values.len())
        .filter(|&z| interpolant.eval_integer(z as i64) != values[z])
        .collect();
    Ok(PolynomialityReport {
        degree_bound,
        pass: off_curve.is_empty(),
        values,
        interpolant,
        off_curve,
    })
}

/// `Σ_z f_z · ⟨D_p(z)|E ⊗ I|D_p(z)⟩`; vanishes for every class when the
/// moments of `f` vanish up to the expectation's degree.
pub fn coefficient_weighted_sum(
    f: &RationalPolynomial,
    p: &PartitionPolynomialTuple,
    cls: &MatrixUnitClass,
    total: usize,
) -> Result<Rational, KlError> {
    let values = diagonal_expectation(p, cls, total)?;
    Ok(values
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (z, v)| acc + f.coeff(z) * v))
}
