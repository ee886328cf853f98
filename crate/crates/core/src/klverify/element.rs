use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::KlError;
use crate::codegen::PICode;
use crate::combinatorics::{enumerate_compositions, falling_factorial, CombinatoricsError, WeightVector};
use crate::exactnum::{sqrt_of_rational, RadicalSum, Rational};

/// Matrix units `|s⟩⟨s'|` on the first `w` qudits with `wt(s) = a` and
/// `wt(s') = a_prime`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixUnitClass {
    pub w: usize,
    pub a: WeightVector,
    pub a_prime: WeightVector,
}

impl MatrixUnitClass {
    pub fn new(a: WeightVector, a_prime: WeightVector) -> Result<Self, CombinatoricsError> {
        if a.q() != a_prime.q() || a.total() != a_prime.total() {
            return Err(CombinatoricsError::PartitionMismatch(format!(
                "class labels {a} and {a_prime} differ in length or weight"
            )));
        }
        Ok(Self {
            w: a.total(),
            a,
            a_prime,
        })
    }

    /// The empty operator on zero qudits, i.e. the identity.
    pub fn identity(q: usize) -> Self {
        let zero = WeightVector::new(vec![0; q]).expect("q >= 2");
        Self {
            w: 0,
            a: zero.clone(),
            a_prime: zero,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.a == self.a_prime
    }

    pub fn adjoint(&self) -> Self {
        Self {
            w: self.w,
            a: self.a_prime.clone(),
            a_prime: self.a.clone(),
        }
    }
}

/// All classes on `w` qudits, lexicographic in `(a, a')`.
pub fn matrix_unit_classes(w: usize, q: usize) -> Vec<MatrixUnitClass> {
    let comps = enumerate_compositions(w, q);
    comps
        .iter()
        .flat_map(|a| {
            comps.iter().map(move |ap| MatrixUnitClass {
                w,
                a: a.clone(),
                a_prime: ap.clone(),
            })
        })
        .collect()
}

/// `⟨D_n| (|s⟩⟨s'| ⊗ I) |D_m⟩` for any strings with weights `(a, a')`.
///
/// Nonzero only when `n - a = m - a'` with nonnegative entries; then the
/// shared tail runs over `C(N-w, n-a)` strings and the value is
/// `C(N-w, n-a) / √(C(N,n) C(N,m))`. Dividing through by the multinomials
/// leaves `√(Π(n_i)_{a_i} · Π(m_i)_{a'_i}) / (N)_w`, which keeps the
/// radicand polynomial in `N` instead of exponential.
pub fn dicke_matrix_element(
    n: &WeightVector,
    m: &WeightVector,
    cls: &MatrixUnitClass,
    total: usize,
) -> Result<RadicalSum, CombinatoricsError> {
    let q = n.q();
    if n.total() != total || m.total() != total || m.q() != q {
        return Err(CombinatoricsError::PartitionMismatch(format!(
            "{n} and {m} are not both in T_({total},{q})"
        )));
    }
    if cls.a.q() != q || cls.a_prime.q() != q || cls.a.total() != cls.w || cls.a_prime.total() != cls.w {
        return Err(CombinatoricsError::PartitionMismatch(format!(
            "class ({}, {}) does not match q = {q}, w = {}",
            cls.a, cls.a_prime, cls.w
        )));
    }
    if cls.w > total {
        return Err(CombinatoricsError::PartitionMismatch(format!("w = {} exceeds N = {total}", cls.w)));
    }
    let (Some(tail_n), Some(tail_m)) = (n.checked_sub(&cls.a), m.checked_sub(&cls.a_prime)) else {
        return Ok(RadicalSum::zero());
    };
    if tail_n != tail_m {
        return Ok(RadicalSum::zero());
    }
    let heads = |v: &WeightVector, a: &WeightVector| -> BigInt {
        v.parts()
            .iter()
            .zip(a.parts())
            .map(|(vi, ai)| falling_factorial(*vi as i64, *ai))
            .product()
    };
    let radicand = Rational::from_integer(heads(n, &cls.a) * heads(m, &cls.a_prime));
    let root = sqrt_of_rational(&radicand).expect("radicand below the default ceiling");
    let denom = falling_factorial(total as i64, cls.w);
    Ok(root.scale(&Rational::new(1.into(), denom)))
}

/// `⟨ψ_a| (|s⟩⟨s'| ⊗ I) |ψ_b⟩` for logical basis vectors of `code`.
pub fn logical_matrix_element(
    code: &PICode,
    a_idx: usize,
    b_idx: usize,
    cls: &MatrixUnitClass,
) -> Result<RadicalSum, KlError> {
    let d = code.d();
    for index in [a_idx, b_idx] {
        if index >= d {
            return Err(KlError::IndexOutOfRange { index, d });
        }
    }
    if cls.w > code.total {
        return Err(KlError::WeightTooLarge {
            w: cls.w,
            total: code.total,
        });
    }
    let ket: BTreeMap<&WeightVector, &RadicalSum> =
        code.logical[b_idx].terms.iter().map(|(w, a)| (w, a)).collect();
    let mut acc = RadicalSum::zero();
    for (n, alpha) in &code.logical[a_idx].terms {
        // the only m that can pair with n is n - a + a'
        let Some(tail) = n.checked_sub(&cls.a) else { continue };
        let m_parts: Vec<usize> = tail
            .parts()
            .iter()
            .zip(cls.a_prime.parts())
            .map(|(x, y)| x + y)
            .collect();
        let m = WeightVector::new(m_parts)?;
        if let Some(beta) = ket.get(&m) {
            let elem = dicke_matrix_element(n, &m, cls, code.total)?;
            acc = acc + &(alpha * *beta) * &elem;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::multinomial;
    use crate::exactnum::rational;
    use proptest::prelude::*;

    fn wv(p: &[usize]) -> WeightVector {
        WeightVector::new(p.to_vec()).unwrap()
    }

    fn cls(a: &[usize], ap: &[usize]) -> MatrixUnitClass {
        MatrixUnitClass::new(wv(a), wv(ap)).unwrap()
    }

    /// Direct multinomial route: `C(N-w, n-a) / √(C(N,n) C(N,m))`.
    fn element_by_multinomials(n: &WeightVector, m: &WeightVector, c: &MatrixUnitClass, total: usize) -> RadicalSum {
        match (n.checked_sub(&c.a), m.checked_sub(&c.a_prime)) {
            (Some(x), Some(y)) if x == y => {
                let num = multinomial(total - c.w, &x).unwrap();
                let den = multinomial(total, n).unwrap() * multinomial(total, m).unwrap();
                let r = Rational::new(num.clone() * num, den);
                sqrt_of_rational(&r).unwrap()
            }
            _ => RadicalSum::zero(),
        }
    }

    #[test]
    fn two_qubit_example() {
        let v = dicke_matrix_element(&wv(&[1, 1]), &wv(&[0, 2]), &cls(&[1, 0], &[0, 1]), 2).unwrap();
        assert_eq!(v, RadicalSum::term(rational(1, 2), 2).unwrap());
    }

    #[test]
    fn three_qubit_example() {
        let v = dicke_matrix_element(&wv(&[3, 0]), &wv(&[1, 2]), &cls(&[2, 0], &[0, 2]), 3).unwrap();
        assert_eq!(v, sqrt_of_rational(&rational(1, 3)).unwrap());
    }

    #[test]
    fn identity_class_is_orthonormality() {
        let comps = enumerate_compositions(5, 3);
        let id = MatrixUnitClass::identity(3);
        for n in &comps {
            for m in &comps {
                let v = dicke_matrix_element(n, m, &id, 5).unwrap();
                let expect = if n == m { RadicalSum::one() } else { RadicalSum::zero() };
                assert_eq!(v, expect);
            }
        }
    }

    #[test]
    fn mismatched_inputs_rejected() {
        assert!(dicke_matrix_element(&wv(&[1, 1]), &wv(&[0, 3]), &cls(&[1, 0], &[0, 1]), 2).is_err());
        assert!(dicke_matrix_element(&wv(&[1, 1]), &wv(&[0, 2]), &cls(&[1, 0, 0], &[0, 1, 0]), 2).is_err());
        assert!(MatrixUnitClass::new(wv(&[1, 0]), wv(&[1, 1])).is_err());
    }

    #[test]
    fn class_enumeration_order() {
        let classes = matrix_unit_classes(1, 2);
        let labels: Vec<_> = classes
            .iter()
            .map(|c| (c.a.parts().to_vec(), c.a_prime.parts().to_vec()))
            .collect();
        assert_eq!(
            labels,
            vec![
                (vec![0, 1], vec![0, 1]),
                (vec![0, 1], vec![1, 0]),
                (vec![1, 0], vec![0, 1]),
                (vec![1, 0], vec![1, 0]),
            ]
        );
        assert_eq!(matrix_unit_classes(2, 3).len(), 36);
    }

    #[test]
    fn diagonal_classes_resolve_identity() {
        for q in 2..=3 {
            for total in 1..=7 {
                for n in enumerate_compositions(total, q) {
                    for w in 0..=4.min(total) {
                        let sum = enumerate_compositions(w, q).iter().fold(RadicalSum::zero(), |acc, a| {
                            let c = MatrixUnitClass::new(a.clone(), a.clone()).unwrap();
                            let e = dicke_matrix_element(&n, &n, &c, total).unwrap();
                            acc + e.scale(&Rational::from_integer(multinomial(w, a).unwrap()))
                        });
                        assert_eq!(sum, RadicalSum::one(), "n={n} w={w}");
                    }
                }
            }
        }
    }

    #[test]
    fn large_qutrit_elements_stay_small() {
        let n = wv(&[60, 48, 0]);
        let m = wv(&[61, 46, 1]);
        let c = cls(&[0, 2, 0], &[1, 0, 1]);
        let fast = dicke_matrix_element(&n, &m, &c, 108).unwrap();
        assert_eq!(fast, element_by_multinomials(&n, &m, &c, 108));
        assert!(!fast.is_zero());
    }

    fn arb_pair() -> impl Strategy<Value = (usize, usize, Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>)> {
        (2usize..=3, 1usize..=8, 0usize..=2).prop_flat_map(|(q, total, w)| {
            let w = w.min(total);
            let comps = enumerate_compositions(total, q);
            let heads = enumerate_compositions(w, q);
            let pick = |v: Vec<WeightVector>| prop::sample::select(v).prop_map(|x| x.parts().to_vec());
            (
                Just(q),
                Just(total),
                pick(comps.clone()),
                pick(comps),
                pick(heads.clone()),
                pick(heads),
            )
        })
    }

    proptest! {
        #[test]
        fn agrees_with_multinomial_route((_q, total, n, m, a, ap) in arb_pair()) {
            let (n, m, c) = (wv(&n), wv(&m), cls(&a, &ap));
            prop_assert_eq!(dicke_matrix_element(&n, &m, &c, total).unwrap(), element_by_multinomials(&n, &m, &c, total));
        }

        #[test]
        fn adjoint_symmetry((_q, total, n, m, a, ap) in arb_pair()) {
            let (n, m, c) = (wv(&n), wv(&m), cls(&a, &ap));
            prop_assert_eq!(
                dicke_matrix_element(&n, &m, &c, total).unwrap(),
                dicke_matrix_element(&m, &n, &c.adjoint(), total).unwrap()
            );
        }

        #[test]
        fn support_selection_rule((_q, total, n, m, a, ap) in arb_pair()) {
            let (n, m, c) = (wv(&n), wv(&m), cls(&a, &ap));
            let l1: usize = n.parts().iter().zip(m.parts()).map(|(x, y)| x.abs_diff(*y)).sum();
            if l1 > 2 * c.w {
                prop_assert!(dicke_matrix_element(&n, &m, &c, total).unwrap().is_zero());
            }
        }
    }
}
