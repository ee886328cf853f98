use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dense::{dense_code_vector, dense_dicke, dimension, encode, DenseVector};
use super::linalg::C64;
use super::OracleError;
use crate::codegen::PICode;
use crate::combinatorics::{enumerate_compositions, WeightVector};
use crate::klverify::{dicke_matrix_element, logical_matrix_element, matrix_unit_classes, MatrixUnitClass};

/// String on `w` qudits with letter counts `a`, letters ascending.
pub fn canonical_string(a: &WeightVector) -> Vec<usize> {
    a.parts()
        .iter()
        .enumerate()
        .flat_map(|(letter, &count)| std::iter::repeat(letter).take(count))
        .collect()
}

fn random_string(a: &WeightVector, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut s = canonical_string(a);
    s.shuffle(rng);
    s
}

/// `⟨u| (|s⟩⟨s'| ⊗ I) |v⟩` with `s, s'` on the first `w` qudits.
pub fn dense_matrix_unit_element(u: &DenseVector, v: &DenseVector, s: &[usize], s_prime: &[usize]) -> C64 {
    assert_eq!(s.len(), s_prime.len());
    let tail = u.q.pow((u.total - s.len()) as u32);
    let (row, col) = (encode(s, u.q) * tail, encode(s_prime, u.q) * tail);
    (0..tail).map(|r| u.amps[row + r].conj() * v.amps[col + r]).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub q: usize,
    #[serde(rename = "N")]
    pub total: usize,
    pub w: usize,
    pub trials: usize,
    pub seed: u64,
    /// Trials whose exact value is nonzero.
    pub nonzero: usize,
    /// Largest `|exact - dense|` over both representatives.
    pub max_abs_delta: f64,
    /// Largest gap between the two representatives' dense values.
    pub max_representative_delta: f64,
}

/// Random `(n, m, a, a')` comparisons of the exact element against dense
/// vectors. Half of the draws put `m` on the element's support so that the
/// nonzero branch gets exercised.
pub fn crosscheck_matrix_elements(
    q: usize,
    total: usize,
    w: usize,
    trials: usize,
    seed: u64,
) -> Result<CrosscheckReport, OracleError> {
    dimension(q, total)?;
    if w > total {
        return Err(OracleError::Mismatch(format!("w = {w} exceeds N = {total}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = enumerate_compositions(total, q);
    let heads = enumerate_compositions(w, q);
    let mut cache: HashMap<WeightVector, DenseVector> = HashMap::new();
    let mut report = CrosscheckReport {
        q,
        total,
        w,
        trials,
        seed,
        nonzero: 0,
        max_abs_delta: 0.0,
        max_representative_delta: 0.0,
    };
    for _ in 0..trials {
        let n = labels.choose(&mut rng).expect("nonempty").clone();
        let fits: Vec<&WeightVector> = heads.iter().filter(|a| n.checked_sub(a).is_some()).collect();
        let a = (*fits.choose(&mut rng).expect("some head fits")).clone();
        let a_prime = heads.choose(&mut rng).expect("nonempty").clone();
        let m = if rng.gen_bool(0.5) {
            let tail = n.checked_sub(&a).expect("a fits n");
            WeightVector::new(tail.parts().iter().zip(a_prime.parts()).map(|(x, y)| x + y).collect())?
        } else {
            labels.choose(&mut rng).expect("nonempty").clone()
        };
        let cls = MatrixUnitClass::new(a.clone(), a_prime.clone())?;
        let exact = dicke_matrix_element(&n, &m, &cls, total)?.to_f64();
        if exact != 0.0 {
            report.nonzero += 1;
        }
        for key in [&n, &m] {
            if !cache.contains_key(key) {
                cache.insert(key.clone(), dense_dicke(key, q, total)?);
            }
        }
        let (dn, dm) = (&cache[&n], &cache[&m]);
        let first = dense_matrix_unit_element(dn, dm, &canonical_string(&a), &canonical_string(&a_prime));
        let second = dense_matrix_unit_element(dn, dm, &random_string(&a, &mut rng), &random_string(&a_prime, &mut rng));
        report.max_abs_delta = report
            .max_abs_delta
            .max((first - exact).norm())
            .max((second - exact).norm());
        report.max_representative_delta = report.max_representative_delta.max((first - second).norm());
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogicalCrosscheck {
    /// Number of `(class, a, b)` comparisons.
    pub comparisons: usize,
    pub max_abs_delta: f64,
}

/// Every class at every weight up to `w_max` and every logical pair,
/// exact against dense with a random representative string.
pub fn crosscheck_logical_elements(code: &PICode, w_max: usize, seed: u64) -> Result<LogicalCrosscheck, OracleError> {
    let vectors = (0..code.d())
        .map(|k| dense_code_vector(code, k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LogicalCrosscheck {
        comparisons: 0,
        max_abs_delta: 0.0,
    };
    for w in 0..=w_max.min(code.total) {
        for cls in matrix_unit_classes(w, code.q) {
            let s = random_string(&cls.a, &mut rng);
            let s_prime = random_string(&cls.a_prime, &mut rng);
            for i in 0..code.d() {
                for j in 0..code.d() {
                    let exact = logical_matrix_element(code, i, j, &cls)?.to_f64();
                    let dense = dense_matrix_unit_element(&vectors[i], &vectors[j], &s, &s_prime);
                    out.max_abs_delta = out.max_abs_delta.max((dense - exact).norm());
                    out.comparisons += 1;
                }
            }
        }
    }
    Ok(out)
}
