use num_traits::Zero;
use serde::Serialize;

use super::{PolyError, RationalPolynomial};
use crate::exactnum::{format_rational, Rational};

/// `1 + x + … + x^{d-1}`
pub fn repunit(d: usize) -> RationalPolynomial {
    RationalPolynomial::from_integers(&vec![1; d])
}

/// `(x - 1)^m · g(x)`
pub fn make_type_a_f(g: &RationalPolynomial, m: u32) -> RationalPolynomial {
    &RationalPolynomial::x_minus_one().pow(m) * g
}

/// `(1 + x + … + x^{d-1})^m · g(x)` together with whether every
/// coefficient is non-negative.
pub fn make_type_b_f(g: &RationalPolynomial, m: u32, d: usize) -> (RationalPolynomial, bool) {
    let f = &repunit(d).pow(m) * g;
    let nonneg = f.all_nonnegative();
    (f, nonneg)
}

/// As [`make_type_b_f`] but rejects a negative coefficient.
pub fn make_type_b_f_strict(g: &RationalPolynomial, m: u32, d: usize) -> Result<RationalPolynomial, PolyError> {
    let (f, _) = make_type_b_f(g, m, d);
    first_negative(&f).map_or(Ok(f), |z| Err(PolyError::NegativeCoefficient { z }))
}

pub(crate) fn first_negative(f: &RationalPolynomial) -> Option<usize> {
    use num_traits::Signed;
    f.coeffs().iter().position(Signed::is_negative)
}

fn power(z: usize, c: usize) -> Rational {
    // 0^0 = 1
    Rational::from_integer(num_bigint::BigInt::from(z).pow(c as u32))
}

/// Moment sums `Σ_z f_z z^c` for `c = 0, …, m-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub sums: Vec<Rational>,
    pub pass: bool,
}

impl Serialize for MomentReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            kind: &'static str,
            sums: Vec<String>,
            pass: bool,
        }
        Repr {
            kind: "moment",
            sums: self.sums.iter().map(format_rational).collect(),
            pass: self.pass,
        }
        .serialize(s)
    }
}

pub fn check_moment_identities(f: &RationalPolynomial, m: usize) -> MomentReport {
    let sums: Vec<Rational> = (0..m)
        .map(|c| {
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(z, fz)| fz * power(z, c))
                .fold(Rational::zero(), |a, b| a + b)
        })
        .collect();
    let pass = sums.iter().all(Zero::is_zero);
    MomentReport { sums, pass }
}

/// Residue-class sums of `f_z z^c` for one power `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClassSums {
    pub c: usize,
    pub class_sums: Vec<Rational>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub d: usize,
    pub per_power: Vec<RootClassSums>,
    pub pass: bool,
}

impl Serialize for RootReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Power {
            c: usize,
            class_sums: Vec<String>,
            pass: bool,
        }
        #[derive(Serialize)]
        struct Repr {
            kind: &'static str,
            d: usize,
            powers: Vec<Power>,
            pass: bool,
        }
        Repr {
            kind: "root",
            d: self.d,
            powers: self
                .per_power
                .iter()
                .map(|p| Power {
                    c: p.c,
                    class_sums: p.class_sums.iter().map(format_rational).collect(),
                    pass: p.pass,
                })
                .collect(),
            pass: self.pass,
        }
        .serialize(s)
    }
}

/// Checks `Σ_z f_z ω^{kz} z^c = 0` for every nontrivial `d`-th root of
/// unity `ω^k` and every `c < m`.
///
/// With `g_z = f_z z^c` and `S_r` the sum of `g_z` over `z ≡ r (mod d)`,
/// the left side is `Σ_r ω^{kr} S_r`: the discrete Fourier transform of
/// `(S_0, …, S_{d-1})` at frequency `k`. It vanishes at every `k ≠ 0`
/// exactly when the class sums are all equal, so no complex arithmetic
/// is needed.
pub fn check_root_identities(f: &RationalPolynomial, d: usize, m: usize) -> RootReport {
    assert!(d >= 2, "root identities need d >= 2");
    let per_power: Vec<RootClassSums> = (0..m)
        .map(|c| {
            let mut class_sums = vec![Rational::zero(); d];
            for (z, fz) in f.coeffs().iter().enumerate() {
                class_sums[z % d] += fz * power(z, c);
            }
            let pass = class_sums.iter().all(|s| *s == class_sums[0]);
            RootClassSums { c, class_sums, pass }
        })
        .collect();
    let pass = per_power.iter().all(|p| p.pass);
    RootReport { d, per_power, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn ints(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_integers(c)
    }

    #[test]
    fn type_a_examples() {
        let f = make_type_a_f(&RationalPolynomial::one(), 5);
        assert_eq!(f.to_i64s().unwrap(), vec![-1, 5, -10, 10, -5, 1]);
        let f = make_type_a_f(&ints(&[1, 1]), 5);
        assert_eq!(f.to_i64s().unwrap(), vec![-1, 4, -5, 0, 5, -4, 1]);
        assert_eq!(make_type_a_f(&RationalPolynomial::one(), 1).to_i64s().unwrap(), vec![-1, 1]);
    }

    /// Repeated convolution of all-ones vectors, independent of the
    /// polynomial type.
    fn convolve_ones(d: usize, m: usize) -> Vec<i64> {
        let mut acc = vec![1i64];
        for _ in 0..m {
            let mut next = vec![0i64; acc.len() + d - 1];
            for (i, a) in acc.iter().enumerate() {
                for j in 0..d {
                    next[i + j] += a;
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn type_b_examples() {
        let (f, nonneg) = make_type_b_f(&RationalPolynomial::one(), 3, 3);
        assert!(nonneg);
        assert_eq!(f.to_i64s().unwrap(), vec![1, 3, 6, 7, 6, 3, 1]);
        let (f, _) = make_type_b_f(&RationalPolynomial::one(), 3, 2);
        assert_eq!(f.to_i64s().unwrap(), vec![1, 3, 3, 1]);
        let (f, _) = make_type_b_f(&RationalPolynomial::one(), 3, 4);
        assert_eq!(f.degree(), 9);
        assert_eq!(f.to_i64s().unwrap(), convolve_ones(4, 3));
        assert_eq!(f.coeff(0), rational(1, 1));
        assert_eq!(f.coeff(9), rational(1, 1));
    }

    #[test]
    fn type_b_strict_rejects_negative() {
        let g = ints(&[1, -3]);
        let (_, nonneg) = make_type_b_f(&g, 1, 2);
        assert!(!nonneg);
        assert_eq!(
            make_type_b_f_strict(&g, 1, 2),
            Err(PolyError::NegativeCoefficient { z: 1 })
        );
    }

    #[test]
    fn moment_examples() {
        let r = check_moment_identities(&ints(&[-1, 5, -10, 10, -5, 1]), 5);
        assert!(r.pass);
        assert_eq!(r.sums.len(), 5);
        let r = check_moment_identities(&ints(&[-1, 4, -5, 0, 5, -4, 1]), 5);
        assert!(r.pass);
        let r = check_moment_identities(&ints(&[1, 1]), 2);
        assert!(!r.pass);
        assert_eq!(r.sums, vec![rational(2, 1), rational(1, 1)]);
    }

    #[test]
    fn root_examples() {
        let r = check_root_identities(&ints(&[1, 3, 6, 7, 6, 3, 1]), 3, 3);
        assert!(r.pass);
        assert_eq!(r.per_power[0].class_sums, vec![rational(9, 1); 3]);
        // (1+x)(x-1)^5 carries a single factor of 1+x, so only c = 0 holds
        // for f itself; the reflection f(-x) = -(1+x)^5 (1-x) satisfies all
        // five powers, which is the d = 2 reading of the moment identities.
        let f = ints(&[-1, 4, -5, 0, 5, -4, 1]);
        let r = check_root_identities(&f, 2, 5);
        assert!(r.per_power[0].pass);
        assert!(!r.pass);
        assert!(check_root_identities(&f.reflect(), 2, 5).pass);
        let r = check_root_identities(&ints(&[1, 0, 1]), 2, 1);
        assert!(!r.pass);
        assert_eq!(r.per_power[0].class_sums, vec![rational(2, 1), rational(0, 1)]);
    }

    fn dft_vanishes(g: &[i64], d: usize) -> bool {
        (1..d).all(|k| {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for (z, gz) in g.iter().enumerate() {
                let phase = TAU * (k * z) as f64 / d as f64;
                re += *gz as f64 * phase.cos();
                im += *gz as f64 * phase.sin();
            }
            re.hypot(im) < 1e-8
        })
    }

    proptest! {
        #[test]
        fn moment_identities_hold_for_multiples_of_one_minus_x(
            g in prop::collection::vec(-9i64..10, 1..6),
            m in 1usize..8,
        ) {
            prop_assume!(g.iter().any(|c| *c != 0));
            let f = make_type_a_f(&ints(&g), m as u32);
            prop_assert!(check_moment_identities(&f, m).pass);
        }

        #[test]
        fn root_identities_hold_for_multiples_of_repunit(
            g in prop::collection::vec(0i64..10, 1..6),
            d in 2usize..6,
            m in 1usize..6,
        ) {
            prop_assume!(g.iter().any(|c| *c != 0));
            let (f, _) = make_type_b_f(&ints(&g), m as u32, d);
            prop_assert!(check_root_identities(&f, d, m).pass);
        }

        #[test]
        fn class_sum_criterion_matches_float_dft(
            g in prop::collection::vec(-5i64..6, 1..14),
            d in 2usize..6,
        ) {
            let report = check_root_identities(&ints(&g), d, 1);
            prop_assert_eq!(report.pass, dft_vanishes(&g, d));
        }

        #[test]
        fn reflected_root_check_matches_moment_check(
            g in prop::collection::vec(-4i64..5, 1..5),
            m in 1usize..6,
            extra in 0u32..3,
        ) {
            // Mix of passing (m ≤ multiplicity) and failing instances.
            let f = make_type_a_f(&ints(&g), extra);
            let moment = check_moment_identities(&f, m);
            let root = check_root_identities(&f.reflect(), 2, m);
            prop_assert_eq!(moment.pass, root.pass);
        }
    }
}
