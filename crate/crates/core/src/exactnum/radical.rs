use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use super::squarefree::{is_squarefree, square_decompose, DEFAULT_RADICAND_CEILING};
use super::ExactError;

/// A finite sum `Σ c_r · √r` with squarefree radicands `r` and nonzero
/// rational coefficients.
///
/// Square roots of distinct squarefree integers are linearly independent
/// over the rationals, so the term map is a canonical form: two sums are
/// equal as real numbers exactly when their maps are equal. Equality,
/// hashing and ordering all rest on that fact.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadicalSum {
    terms: BTreeMap<u64, Rational>,
}

/// One `coeff · √radicand` term as it appears in the JSON descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalTerm {
    pub coeff: String,
    pub radicand: u64,
}

/// `√x` for `x ≥ 0` using the default radicand ceiling.
pub fn sqrt_of_rational(x: &Rational) -> Result<RadicalSum, ExactError> {
    sqrt_of_rational_with_ceiling(x, DEFAULT_RADICAND_CEILING)
}

/// `√(a/b) = (1/b)·√(ab)`, with the square part of `ab` pulled into the
/// coefficient. Fails if `ab` exceeds `ceiling`.
pub fn sqrt_of_rational_with_ceiling(x: &Rational, ceiling: u64) -> Result<RadicalSum, ExactError> {
    if x.is_negative() {
        return Err(ExactError::NegativeRadicand(format_rational(x)));
    }
    if x.is_zero() {
        return Ok(RadicalSum::zero());
    }
    let product: BigInt = x.numer() * x.denom();
    let too_large = || ExactError::RadicandTooLarge {
        value: product.to_string(),
        ceiling,
    };
    let product_u64 = product.to_u64().ok_or_else(too_large)?;
    if product_u64 > ceiling {
        return Err(too_large());
    }
    let (root, core) = square_decompose(product_u64);
    let coeff = Rational::new(BigInt::from(root), x.denom().clone());
    Ok(RadicalSum::from_term(coeff, core))
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::from_integer(1.into()))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_term(c, 1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `c · √r`, normalizing `r` to its squarefree part.
    pub fn term(c: Rational, r: u64) -> Result<Self, ExactError> {
        if r == 0 {
            return Err(ExactError::InvalidRadicand(0));
        }
        let (root, core) = square_decompose(r);
        Ok(Self::from_term(c * Rational::from_integer(root.into()), core))
    }

    fn from_term(c: Rational, squarefree: u64) -> Self {
        debug_assert!(is_squarefree(squarefree));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(squarefree, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(r, c)| (*r, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, if the sum has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(r, c)| (*r, c * k)).collect(),
        }
    }

    /// Floating-point value. Each term carries relative error below 2⁻⁵⁰
    /// for radicands under 2⁶⁰ (four correctly rounded operations).
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_f64().unwrap_or(f64::NAN) * (*r as f64).sqrt())
            .sum()
    }

    /// Exact sign.
    ///
    /// A nonempty sum is nonzero, so bracketing every `√r` between dyadic
    /// rationals of growing precision eventually yields an interval that
    /// excludes zero.
    pub fn signum(&self) -> Ordering {
        if self.terms.is_empty() {
            return Ordering::Equal;
        }
        if let Some(c) = self.as_rational() {
            return c.cmp(&Rational::zero());
        }
        let mut bits: usize = 32;
        loop {
            let scale = BigUint::from(1u8) << bits;
            let scale_sq = &scale * &scale;
            let denom = BigInt::from(scale.clone());
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (r, c) in &self.terms {
                let (root_lo, root_hi) = if *r == 1 {
                    (Rational::from_integer(1.into()), Rational::from_integer(1.into()))
                } else {
                    let floor = (BigUint::from(*r) * &scale_sq).sqrt();
                    (
                        Rational::new(BigInt::from(floor.clone()), denom.clone()),
                        Rational::new(BigInt::from(floor + 1u8), denom.clone()),
                    )
                };
                if c.is_positive() {
                    lo += c * &root_lo;
                    hi += c * &root_hi;
                } else {
                    lo += c * &root_hi;
                    hi += c * &root_lo;
                }
            }
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            assert!(bits < 1 << 20, "sign refinement failed to separate from zero");
            bits *= 2;
        }
    }

    pub fn to_json_terms(&self) -> Vec<RadicalTerm> {
        self.terms
            .iter()
            .map(|(r, c)| RadicalTerm {
                coeff: format_rational(c),
                radicand: *r,
            })
            .collect()
    }

    /// Rebuilds a canonical sum from descriptor terms; non-squarefree
    /// radicands and repeated radicands are normalized.
    pub fn from_json_terms(terms: &[RadicalTerm]) -> Result<Self, ExactError> {
        let mut acc = Self::zero();
        for t in terms {
            acc = acc + Self::term(parse_rational(&t.coeff)?, t.radicand)?;
        }
        Ok(acc)
    }

    fn add_term(&mut self, r: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(r).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&r);
        }
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *r == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})√{r}")?;
            }
        }
        Ok(())
    }
}

impl Ord for RadicalSum {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for RadicalSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(*r, c.clone());
        }
        out
    }
}

impl Add for RadicalSum {
    type Output = RadicalSum;
    fn add(mut self, rhs: RadicalSum) -> RadicalSum {
        for (r, c) in rhs.terms {
            self.add_term(r, c);
        }
        self
    }
}

impl Neg for RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        RadicalSum {
            terms: self.terms.into_iter().map(|(r, c)| (r, -c)).collect(),
        }
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        -self.clone()
    }
}

impl Sub<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(*r, -c.clone());
        }
        out
    }
}

impl Sub for RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: RadicalSum) -> RadicalSum {
        &self - &rhs
    }
}

/// `√r·√s = g·√(rs/g²)` with `g = gcd(r, s)`; the result radicand is
/// squarefree whenever both factors are.
///
/// Panics if a product radicand no longer fits in a `u64`.
impl Mul<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::zero();
        for (r, a) in &self.terms {
            for (s, b) in &rhs.terms {
                let g = r.gcd(s);
                let radicand = u64::try_from((*r / g) as u128 * (*s / g) as u128)
                    .expect("radicand product exceeds 2^64");
                debug_assert!(is_squarefree(radicand));
                out.add_term(radicand, a * b * Rational::from_integer(g.into()));
            }
        }
        out
    }
}

impl Mul for RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: RadicalSum) -> RadicalSum {
        &self * &rhs
    }
}

impl Serialize for RadicalSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RadicalSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<RadicalTerm>::deserialize(deserializer)?;
        RadicalSum::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;
    use proptest::prelude::*;

    fn rs(c: (i64, i64), r: u64) -> RadicalSum {
        RadicalSum::term(rational(c.0, c.1), r).unwrap()
    }

    #[test]
    fn sqrt_examples() {
        assert!(sqrt_of_rational(&rational(0, 1)).unwrap().is_zero());
        // (1/5)√10 squared is 10/25 = 4/10
        let s = sqrt_of_rational(&rational(4, 10)).unwrap();
        assert_eq!(s, rs((1, 5), 10));
        assert_eq!(&s * &s, RadicalSum::from_rational(rational(4, 10)));
        assert_eq!(sqrt_of_rational(&rational(9, 4)).unwrap(), RadicalSum::from_rational(rational(3, 2)));
    }

    #[test]
    fn sqrt_errors() {
        assert!(matches!(
            sqrt_of_rational(&rational(-1, 3)),
            Err(ExactError::NegativeRadicand(_))
        ));
        assert!(matches!(
            sqrt_of_rational_with_ceiling(&rational(1000, 1), 999),
            Err(ExactError::RadicandTooLarge { .. })
        ));
        let huge = Rational::new(BigInt::from(u64::MAX) * 3, BigInt::from(1));
        assert!(sqrt_of_rational(&huge).is_err());
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&rs((1, 1), 2) * &rs((1, 1), 2), RadicalSum::from_integer(2));
        // (√6·√10)² = 60 = (2√15)²
        let p = &rs((1, 1), 6) * &rs((1, 1), 10);
        assert_eq!(p, rs((2, 1), 15));
        assert_eq!(&p * &p, RadicalSum::from_integer(60));
    }

    #[test]
    fn cancellation() {
        let a = &rs((1, 1), 2) + &rs((1, 1), 3);
        let b = &a + &rs((-1, 1), 3);
        assert_eq!(b, rs((1, 1), 2));
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn to_f64_examples() {
        assert_eq!(RadicalSum::zero().to_f64(), 0.0);
        assert!((rs((1, 5), 10).to_f64() - 0.4f64.sqrt()).abs() < 1e-15);
        assert_eq!(RadicalSum::from_rational(rational(3, 2)).to_f64(), 1.5);
    }

    #[test]
    fn term_normalizes_radicand() {
        assert_eq!(rs((1, 1), 12), rs((2, 1), 3));
        assert!(RadicalSum::term(rational(1, 1), 0).is_err());
    }

    #[test]
    fn signum_separates_close_values() {
        // √2 + √3 vs √10: 3.1462... vs 3.1623...
        let a = &rs((1, 1), 2) + &rs((1, 1), 3);
        assert_eq!(a.cmp(&rs((1, 1), 10)), Ordering::Less);
        // 1 - (√2 - 1)(√2 + 1) = 0 exactly
        let x = &rs((1, 1), 2) + &RadicalSum::from_integer(-1);
        let y = &rs((1, 1), 2) + &RadicalSum::one();
        assert_eq!((&x * &y).signum(), Ordering::Greater);
        assert_eq!((&(&x * &y) - &RadicalSum::one()).signum(), Ordering::Equal);
        // 99/70 is a close convergent of √2
        let d = &rs((1, 1), 2) - &RadicalSum::from_rational(rational(99, 70));
        assert_eq!(d.signum(), Ordering::Less);
    }

    #[test]
    fn json_terms_roundtrip() {
        let a = &rs((1, 5), 10) + &rs((-3, 2), 1);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"[{"coeff":"-3/2","radicand":1},{"coeff":"1/5","radicand":10}]"#);
        let back: RadicalSum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        let messy: RadicalSum =
            serde_json::from_str(r#"[{"coeff":"1/1","radicand":8},{"coeff":"-2/1","radicand":2}]"#).unwrap();
        assert!(messy.is_zero());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..20).prop_map(|(n, d)| rational(n, d))
    }

    fn arb_radical() -> impl Strategy<Value = RadicalSum> {
        prop::collection::vec((arb_rational(), 1u64..60), 0..4).prop_map(|ts| {
            ts.into_iter()
                .fold(RadicalSum::zero(), |acc, (c, r)| acc + RadicalSum::term(c, r).unwrap())
        })
    }

    fn all_squarefree(a: &RadicalSum) -> bool {
        a.terms().all(|(r, c)| is_squarefree(r) && !c.is_zero())
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(n in 0i64..10_000, d in 1i64..10_000) {
            let x = rational(n, d);
            let s = sqrt_of_rational(&x).unwrap();
            prop_assert_eq!(&s * &s, RadicalSum::from_rational(x));
        }

        #[test]
        fn ring_axioms(a in arb_radical(), b in arb_radical(), c in arb_radical()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let prod = &(&a * &b) + &c;
            prop_assert!(all_squarefree(&prod));
        }

        #[test]
        fn self_difference_is_zero(a in arb_radical()) {
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_equality_matches_float(a in arb_radical(), b in arb_radical()) {
            let close = (a.to_f64() - b.to_f64()).abs() < 1e-9;
            prop_assert_eq!(a == b, close);
            let sign = (&a - &b).signum();
            if !close {
                prop_assert_eq!(sign, a.to_f64().partial_cmp(&b.to_f64()).unwrap());
            }
        }
    }
}
