use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::element::{logical_matrix_element, matrix_unit_classes, MatrixUnitClass};
use super::KlError;
use crate::codegen::PICode;
use crate::exactnum::RadicalSum;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub class: MatrixUnitClass,
    pub pair: (usize, usize),
    /// Off-diagonal pairs carry the element itself; diagonal pairs `(k, k)`
    /// carry the discrepancy against logical 0.
    pub value: RadicalSum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramEntry {
    pub class: MatrixUnitClass,
    pub value: RadicalSum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KLCertificate {
    pub code: String,
    pub ok: bool,
    pub w: usize,
    pub violations: Vec<Violation>,
    pub gram_diag: Vec<GramEntry>,
}

impl KLCertificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

fn check_class(code: &PICode, cls: &MatrixUnitClass) -> Result<(RadicalSum, Vec<Violation>), KlError> {
    let d = code.d();
    let mut violations = Vec::new();
    let base = logical_matrix_element(code, 0, 0, cls)?;
    for i in 0..d {
        for j in 0..d {
            if i == 0 && j == 0 {
                continue;
            }
            let e = logical_matrix_element(code, i, j, cls)?;
            let value = if i == j { &e - &base } else { e };
            if !value.is_zero() {
                violations.push(Violation {
                    class: cls.clone(),
                    pair: (i, j),
                    value,
                });
            }
        }
    }
    Ok((base, violations))
}

/// Checks every matrix-unit class on the first `w` qudits. Classes are
/// evaluated in parallel on the current rayon pool; the result order is
/// the lexicographic class order regardless of scheduling.
pub fn certify_at_weight(code: &PICode, w: usize) -> Result<KLCertificate, KlError> {
    if w > code.total {
        return Err(KlError::WeightTooLarge { w, total: code.total });
    }
    let classes = matrix_unit_classes(w, code.q);
    let results: Vec<Result<(RadicalSum, Vec<Violation>), KlError>> =
        classes.par_iter().map(|cls| check_class(code, cls)).collect();
    let mut violations = Vec::new();
    let mut gram_diag = Vec::with_capacity(classes.len());
    for (cls, res) in classes.into_iter().zip(results) {
        let (value, v) = res?;
        violations.extend(v);
        gram_diag.push(GramEntry { class: cls, value });
    }
    Ok(KLCertificate {
        code: code.id(),
        ok: violations.is_empty(),
        w,
        violations,
        gram_diag,
    })
}

/// Knill–Laflamme conditions for `t` errors, i.e. all classes at `w = 2t`.
pub fn kl_certify(code: &PICode, t: usize) -> Result<KLCertificate, KlError> {
    certify_at_weight(code, 2 * t)
}

/// As [`kl_certify`], on a private pool with `threads` workers.
pub fn kl_certify_with_threads(code: &PICode, t: usize, threads: usize) -> Result<KLCertificate, KlError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| kl_certify(code, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Distance {
    Exact(usize),
    GreaterThan(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub code: String,
    pub distance: Distance,
    /// Certificate at the first failing weight, if any.
    pub witness: Option<KLCertificate>,
}

impl DistanceReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Smallest `w ≤ w_max` at which some matrix unit violates the conditions.
pub fn certify_distance(code: &PICode, w_max: usize) -> Result<DistanceReport, KlError> {
    if w_max > code.total {
        return Err(KlError::WeightTooLarge {
            w: w_max,
            total: code.total,
        });
    }
    for w in 1..=w_max {
        let cert = certify_at_weight(code, w)?;
        if !cert.ok {
            return Ok(DistanceReport {
                code: code.id(),
                distance: Distance::Exact(w),
                witness: Some(cert),
            });
        }
    }
    Ok(DistanceReport {
        code: code.id(),
        distance: Distance::GreaterThan(w_max),
        witness: None,
    })
}
