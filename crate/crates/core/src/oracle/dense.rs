use num_traits::ToPrimitive;

use super::linalg::{inner, CMatrix, C64};
use super::tolerances::DIMENSION_CAP;
use super::OracleError;
use crate::codegen::PICode;
use crate::combinatorics::{multinomial, WeightVector};

/// State on `N` qudits. Index `Σ c_j q^(N-1-j)` encodes the string
/// `(c_1, …, c_N)`, qudit 1 most significant; letters are 0-based here.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseVector {
    pub q: usize,
    pub total: usize,
    pub amps: Vec<C64>,
}

impl DenseVector {
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        super::linalg::norm(&self.amps)
    }

    pub fn inner(&self, other: &DenseVector) -> C64 {
        inner(&self.amps, &other.amps)
    }

    /// Relabels qudits: qudit `j` of the result is qudit `perm[j]` of `self`.
    pub fn permute_qudits(&self, perm: &[usize]) -> DenseVector {
        assert_eq!(perm.len(), self.total);
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        let mut digits = vec![0usize; self.total];
        for (idx, amp) in self.amps.iter().enumerate() {
            decode(idx, self.q, &mut digits);
            let permuted: Vec<usize> = perm.iter().map(|&src| digits[src]).collect();
            out[encode(&permuted, self.q)] = *amp;
        }
        DenseVector {
            amps: out,
            ..self.clone()
        }
    }
}

pub fn dimension(q: usize, total: usize) -> Result<usize, OracleError> {
    let dim = (q as u64).checked_pow(total as u32).filter(|d| *d <= DIMENSION_CAP);
    match dim {
        Some(d) => Ok(d as usize),
        None => Err(OracleError::DimensionCap { q, total, cap: DIMENSION_CAP }),
    }
}

pub(crate) fn decode(mut idx: usize, q: usize, digits: &mut [usize]) {
    for d in digits.iter_mut().rev() {
        *d = idx % q;
        idx /= q;
    }
}

pub(crate) fn encode(digits: &[usize], q: usize) -> usize {
    digits.iter().fold(0, |acc, d| acc * q + d)
}

/// Normalized uniform superposition over strings with letter counts `n`.
pub fn dense_dicke(n: &WeightVector, q: usize, total: usize) -> Result<DenseVector, OracleError> {
    let dim = dimension(q, total)?;
    if n.q() != q || n.total() != total {
        return Err(crate::combinatorics::CombinatoricsError::PartitionMismatch(format!(
            "{n} is not in T_({total},{q})"
        ))
        .into());
    }
    let amp = 1.0 / multinomial(total, n)?.to_f64().expect("finite").sqrt();
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    let mut digits = vec![0usize; total];
    let mut counts = vec![0usize; q];
    for (idx, slot) in amps.iter_mut().enumerate() {
        decode(idx, q, &mut digits);
        counts.iter_mut().for_each(|c| *c = 0);
        for d in &digits {
            counts[*d] += 1;
        }
        if counts == n.parts() {
            *slot = C64::new(amp, 0.0);
        }
    }
    Ok(DenseVector { q, total, amps })
}

/// Logical vector `k` of `code` with amplitudes rounded to `f64`.
pub fn dense_code_vector(code: &PICode, k: usize) -> Result<DenseVector, OracleError> {
    let dim = dimension(code.q, code.total)?;
    let logical = code.logical.get(k).ok_or(OracleError::NoSuchLogical { k, d: code.d() })?;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    for (n, a) in &logical.terms {
        let dicke = dense_dicke(n, code.q, code.total)?;
        let x = a.to_f64();
        for (o, v) in amps.iter_mut().zip(&dicke.amps) {
            *o += v * x;
        }
    }
    Ok(DenseVector {
        q: code.q,
        total: code.total,
        amps,
    })
}

/// All logical vectors as the columns of a `q^N × d` matrix.
pub fn code_matrix(code: &PICode) -> Result<CMatrix, OracleError> {
    let dim = dimension(code.q, code.total)?;
    let cols = (0..code.d())
        .map(|k| dense_code_vector(code, k).map(|v| v.amps))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CMatrix::from_columns(dim, &cols))
}

/// Applies `op` (a `q^s × q^s` matrix) to the qudits listed in `support`,
/// identity elsewhere. `support[0]` is the most significant local digit.
pub fn apply_local(op: &CMatrix, support: &[usize], q: usize, total: usize, v: &[C64]) -> Vec<C64> {
    let local = q.pow(support.len() as u32);
    assert_eq!(op.rows(), local);
    assert_eq!(op.cols(), local);
    let strides: Vec<usize> = support.iter().map(|&j| q.pow((total - 1 - j) as u32)).collect();
    let offsets: Vec<usize> = (0..local)
        .map(|l| {
            let mut digits = vec![0usize; support.len()];
            decode(l, q, &mut digits);
            digits.iter().zip(&strides).map(|(d, s)| d * s).sum()
        })
        .collect();
    let mut out = vec![C64::new(0.0, 0.0); v.len()];
    let mut digits = vec![0usize; total];
    let mut buf = vec![C64::new(0.0, 0.0); local];
    for base in 0..v.len() {
        decode(base, q, &mut digits);
        if support.iter().any(|&j| digits[j] != 0) {
            continue;
        }
        for (b, off) in buf.iter_mut().zip(&offsets) {
            *b = v[base + off];
        }
        let r = op.mul_vec(&buf);
        for (x, off) in r.into_iter().zip(&offsets) {
            out[base + off] = x;
        }
    }
    out
}
