//! Compositions, multinomials, falling factorials, Stirling numbers and the
//! orbit distance between permutation-invariant sets of strings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),
    #[error("need at least 2 distinct weight vectors, got {0}")]
    TooFewOrbits(usize),
    #[error("a weight vector needs at least 2 parts, got {0}")]
    TooFewParts(usize),
}

/// Letter counts `(n_1, …, n_q)` of a string over a `q`-letter alphabet.
/// Labels a Dicke state and the orbit of strings it sums over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<usize>);

impl WeightVector {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinatoricsError> {
        if parts.len() < 2 {
            return Err(CombinatoricsError::TooFewParts(parts.len()));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of letters, `q`.
    pub fn q(&self) -> usize {
        self.0.len()
    }

    /// Total length, `N`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Componentwise `self - other`, or `None` if any entry goes negative.
    pub fn checked_sub(&self, other: &WeightVector) -> Option<WeightVector> {
        if self.q() != other.q() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(WeightVector)
    }

    /// The same counts with the letter labels reversed.
    pub fn reversed(&self) -> WeightVector {
        WeightVector(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        WeightVector::new(parts).map_err(serde::de::Error::custom)
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `N! / (n_1! ⋯ n_q!)`, built as a running product of binomials.
pub fn multinomial(total: usize, n: &WeightVector) -> Result<BigInt, CombinatoricsError> {
    if n.total() != total {
        return Err(CombinatoricsError::PartitionMismatch(format!(
            "{n} sums to {}, expected {total}",
            n.total()
        )));
    }
    let mut remaining = total;
    let mut acc = BigInt::one();
    for &part in n.parts() {
        acc *= binomial(remaining, part);
        remaining -= part;
    }
    Ok(acc)
}

/// `(z)_j = z (z-1) ⋯ (z-j+1)`, with `(z)_0 = 1`.
pub fn falling_factorial(z: i64, j: usize) -> BigInt {
    (0..j as i64).map(|k| BigInt::from(z - k)).product()
}

/// Stirling numbers of the second kind via `S(c,j) = j·S(c-1,j) + S(c-1,j-1)`.
pub fn stirling2(c: usize, j: usize) -> BigInt {
    if j > c {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); j + 1];
    row[0] = BigInt::one();
    for _ in 0..c {
        for k in (1..=j).rev() {
            row[k] = BigInt::from(k) * &row[k] + &row[k - 1];
        }
        row[0] = BigInt::zero();
    }
    row[j].clone()
}

/// All compositions of `w` into `q` non-negative parts, lexicographic.
pub fn enumerate_compositions(w: usize, q: usize) -> Vec<WeightVector> {
    fn fill(prefix: &mut Vec<usize>, remaining: usize, slots: usize, out: &mut Vec<WeightVector>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(WeightVector(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            fill(prefix, remaining - first, slots - 1, out);
            prefix.pop();
        }
    }
    assert!(q >= 2, "compositions need q >= 2");
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(q), w, q, &mut out);
    out
}

fn check_compatible(n: &WeightVector, u: &WeightVector) -> Result<(), CombinatoricsError> {
    if n.q() != u.q() || n.total() != u.total() {
        return Err(CombinatoricsError::PartitionMismatch(format!(
            "{n} and {u} do not share N and q"
        )));
    }
    Ok(())
}

/// Minimum Hamming distance between a string of type `n` and one of type `u`.
///
/// The best alignment agrees on `Σ min(n_i, u_i)` positions, which gives
/// the closed form `½ Σ |n_i - u_i|`.
pub fn orbit_min_distance(n: &WeightVector, u: &WeightVector) -> Result<usize, CombinatoricsError> {
    check_compatible(n, u)?;
    let l1: usize = n.parts().iter().zip(u.parts()).map(|(a, b)| a.abs_diff(*b)).sum();
    debug_assert!(l1.is_even());
    Ok(l1 / 2)
}

/// Minimum orbit distance over pairs of distinct elements of `set`.
pub fn set_min_distance(set: &[WeightVector]) -> Result<usize, CombinatoricsError> {
    let (_, _, d) = closest_pair(set)?;
    Ok(d)
}

/// The closest distinct pair, for error reporting.
pub fn closest_pair(set: &[WeightVector]) -> Result<(WeightVector, WeightVector, usize), CombinatoricsError> {
    let mut distinct: Vec<&WeightVector> = set.iter().collect();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(CombinatoricsError::TooFewOrbits(distinct.len()));
    }
    let mut best: Option<(WeightVector, WeightVector, usize)> = None;
    for (i, a) in distinct.iter().enumerate() {
        for b in &distinct[i + 1..] {
            let d = orbit_min_distance(a, b)?;
            if best.as_ref().map_or(true, |(_, _, bd)| d < *bd) {
                best = Some(((*a).clone(), (*b).clone(), d));
            }
        }
    }
    Ok(best.expect("at least one pair"))
}
