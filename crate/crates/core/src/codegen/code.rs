use std::collections::BTreeMap;

use num_traits::Zero;

use super::CodegenError;
use crate::combinatorics::WeightVector;
use crate::exactnum::{RadicalSum, Rational};
use crate::polyid::RationalPolynomial;

/// A logical basis vector as a superposition of Dicke states, listed in
/// the order the builder produced them (ascending `z`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalVector {
    pub q: usize,
    pub total: usize,
    pub terms: Vec<(WeightVector, RadicalSum)>,
}

impl LogicalVector {
    pub fn new(q: usize, total: usize, terms: Vec<(WeightVector, RadicalSum)>) -> Self {
        Self { q, total, terms }
    }

    pub fn amplitude(&self, n: &WeightVector) -> Option<&RadicalSum> {
        self.terms.iter().find(|(w, _)| w == n).map(|(_, a)| a)
    }

    pub fn norm_squared(&self) -> RadicalSum {
        self.terms
            .iter()
            .fold(RadicalSum::zero(), |acc, (_, a)| acc + a * a)
    }

    /// Order-insensitive view used for comparisons.
    pub fn as_map(&self) -> BTreeMap<WeightVector, RadicalSum> {
        self.terms.iter().cloned().collect()
    }

    pub fn reversed_letters(&self) -> LogicalVector {
        LogicalVector {
            q: self.q,
            total: self.total,
            terms: self.terms.iter().map(|(w, a)| (w.reversed(), a.clone())).collect(),
        }
    }
}

/// Exact inner product `Σ_n v_n w_n` over shared Dicke labels (amplitudes
/// are real).
pub fn logical_overlap(v: &LogicalVector, w: &LogicalVector) -> Result<RadicalSum, CodegenError> {
    if v.q != w.q || v.total != w.total {
        return Err(CodegenError::DimensionMismatch(format!(
            "q={}, N={} vs q={}, N={}",
            v.q, v.total, w.q, w.total
        )));
    }
    let other = w.as_map();
    Ok(v.terms.iter().fold(RadicalSum::zero(), |acc, (n, a)| match other.get(n) {
        Some(b) => acc + a * b,
        None => acc,
    }))
}

/// A `d`-dimensional permutation-invariant code on `N` qudits of local
/// dimension `q`, with the polynomial data it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PICode {
    pub q: usize,
    pub total: usize,
    pub t: usize,
    pub construction: String,
    pub f: RationalPolynomial,
    pub p_polys: Vec<RationalPolynomial>,
    pub logical: Vec<LogicalVector>,
}

impl PICode {
    pub fn d(&self) -> usize {
        self.logical.len()
    }

    /// Short identifier used in certificates.
    pub fn id(&self) -> String {
        format!("{}:q={}:N={}:d={}", self.construction, self.q, self.total, self.d())
    }

    /// Every Dicke label used by any logical vector.
    pub fn support(&self) -> Vec<WeightVector> {
        let mut s: Vec<WeightVector> = self
            .logical
            .iter()
            .flat_map(|v| v.terms.iter().map(|(w, _)| w.clone()))
            .collect();
        s.sort();
        s.dedup();
        s
    }

    /// Unit norms, disjoint supports, nonzero amplitudes and well-formed
    /// labels, all checked exactly.
    pub fn check_invariants(&self) -> Result<(), CodegenError> {
        let bad = |msg: String| Err(CodegenError::InvariantViolated(msg));
        if self.logical.len() < 2 {
            return bad(format!("need at least 2 logical vectors, got {}", self.logical.len()));
        }
        let mut owner: BTreeMap<&WeightVector, usize> = BTreeMap::new();
        for (k, v) in self.logical.iter().enumerate() {
            if v.q != self.q || v.total != self.total {
                return bad(format!("logical {k} has q={}, N={}", v.q, v.total));
            }
            for (w, a) in &v.terms {
                if w.q() != self.q || w.total() != self.total {
                    return bad(format!("label {w} in logical {k} is not in T_(N,q)"));
                }
                if a.is_zero() {
                    return bad(format!("zero amplitude on {w} in logical {k}"));
                }
                if let Some(prev) = owner.insert(w, k) {
                    return bad(format!("label {w} appears in logicals {prev} and {k}"));
                }
            }
            if v.norm_squared() != RadicalSum::one() {
                return bad(format!("logical {k} has squared norm {}", v.norm_squared()));
            }
        }
        Ok(())
    }

    /// Copy with `delta` added to the amplitude of term `term` of logical
    /// `k`. The result is no longer normalized; it exists to exercise the
    /// failure paths of the verifier and simulator.
    pub fn perturb_amplitude(&self, k: usize, term: usize, delta: &Rational) -> Option<PICode> {
        let mut out = self.clone();
        let slot = out.logical.get_mut(k)?.terms.get_mut(term)?;
        slot.1 = &slot.1 + &RadicalSum::from_rational(delta.clone());
        Some(out)
    }

    /// Same code with letter labels reversed in every Dicke label.
    pub fn reversed_letters(&self) -> PICode {
        PICode {
            logical: self.logical.iter().map(LogicalVector::reversed_letters).collect(),
            ..self.clone()
        }
    }

    /// Logical vectors match as label→amplitude maps, either directly or
    /// after reversing the letter labels of `other`.
    pub fn same_states_up_to_relabeling(&self, other: &PICode) -> bool {
        let maps = |c: &PICode| c.logical.iter().map(LogicalVector::as_map).collect::<Vec<_>>();
        let mine = maps(self);
        mine == maps(other) || mine == maps(&other.reversed_letters())
    }

    /// `Σ_z f_z` restricted to coefficients of one sign, used by tests and
    /// reports.
    pub fn coefficient_mass(&self, positive: bool) -> Rational {
        self.f
            .coeffs()
            .iter()
            .filter(|c| if positive { **c > Rational::zero() } else { **c < Rational::zero() })
            .fold(Rational::zero(), |acc, c| acc + num_traits::Signed::abs(c))
    }
}
