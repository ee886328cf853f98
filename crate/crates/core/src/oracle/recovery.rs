use super::channel::DenseChannel;
use super::dense::code_matrix;
use super::linalg::{hermitian_eigen, inner, orthonormal_span, psd_inv_sqrt, CMatrix, C64};
use super::tolerances::PSEUDO_INVERSE_THRESHOLD;
use super::OracleError;
use crate::codegen::PICode;

/// Recovery map `ρ ↦ Σ_k R_k ρ R_k† + K ρ K†` stored in factored form:
/// `R_k = Ψ · L_k · Q†` with `Ψ` the orthonormalized code basis and `Q` an
/// orthonormal basis of the corrupted code space, and completion
/// `K = I - Q Q†`.
#[derive(Clone, Debug)]
pub struct RecoveryChannel {
    pub psi: CMatrix,
    pub basis: CMatrix,
    pub maps: Vec<CMatrix>,
    /// `max |Σ R_k†R_k + K†K - I|`
    pub completeness_residual: f64,
    /// `Q† A_i Ψ` and `Ψ† A_i Ψ` for the channel the map was built for.
    noisy_basis: Vec<CMatrix>,
    noisy_code: Vec<CMatrix>,
    /// `Q† Ψ`
    code_basis: CMatrix,
}

/// Builds the recovery for `code` against `channel`.
///
/// The Kraus operators are first rotated to the canonical set `F_k` that
/// diagonalizes `g_ij = Tr(Ψ†A_i†A_jΨ)/d`, so that the code-space images
/// `F_k Ψ` of a correctable channel are mutually orthogonal. Each `F_k` then
/// gets the polar-type map `Ψ G_k^{-1/2} (F_kΨ)†`, and a final congruence on
/// the span of all images makes the set exactly trace preserving even when
/// the conditions fail.
pub fn recovery_channel(code: &PICode, channel: &DenseChannel) -> Result<RecoveryChannel, OracleError> {
    recovery_channel_with_threshold(code, channel, PSEUDO_INVERSE_THRESHOLD)
}

pub fn recovery_channel_with_threshold(
    code: &PICode,
    channel: &DenseChannel,
    threshold: f64,
) -> Result<RecoveryChannel, OracleError> {
    if (channel.q, channel.total) != (code.q, code.total) {
        return Err(OracleError::Mismatch(format!(
            "channel on q={}, N={} but code has q={}, N={}",
            channel.q, channel.total, code.q, code.total
        )));
    }
    let raw = code_matrix(code)?;
    let psi = raw.matmul(&psd_inv_sqrt(&raw.adjoint_mul(&raw), threshold));
    let d = psi.cols();
    let dim = psi.rows();

    let images: Vec<CMatrix> = channel
        .kraus
        .iter()
        .map(|k| {
            let cols: Vec<Vec<C64>> = (0..d).map(|j| k.apply(code.q, code.total, &psi.column(j))).collect();
            CMatrix::from_columns(dim, &cols)
        })
        .collect();
    let n = images.len();
    let mut g = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let bij = images[i].adjoint_mul(&images[j]);
            g[(i, j)] = (0..d).map(|k| bij[(k, k)]).sum::<C64>() / d as f64;
        }
    }
    let (lambda, w) = hermitian_eigen(&g);
    let canonical: Vec<CMatrix> = (0..n)
        .filter(|&k| lambda[k] > threshold)
        .map(|k| {
            (0..n).fold(CMatrix::zeros(dim, d), |acc, i| acc.add(&images[i].scale(w[(i, k)])))
        })
        .collect();

    let all_cols: Vec<Vec<C64>> = canonical
        .iter()
        .flat_map(|c| (0..d).map(move |j| c.column(j)))
        .collect();
    let q0 = orthonormal_span(&CMatrix::from_columns(dim, &all_cols), threshold);
    let r0 = q0.cols();

    let projected: Vec<CMatrix> = canonical.iter().map(|c| q0.adjoint_mul(c)).collect();
    let gram_inv_sqrt: Vec<CMatrix> = canonical
        .iter()
        .map(|c| psd_inv_sqrt(&c.adjoint_mul(c), threshold))
        .collect();
    let mut m_v = CMatrix::zeros(r0, r0);
    for (qc, gi) in projected.iter().zip(&gram_inv_sqrt) {
        let half = qc.matmul(gi);
        m_v = m_v.add(&half.matmul(&half.adjoint()));
    }
    let (mu, v) = hermitian_eigen(&m_v);
    let keep: Vec<usize> = (0..mu.len()).filter(|&i| mu[i] > threshold).collect();
    let v_s = v.select_columns(&keep);
    let t = CMatrix::from_diagonal(&keep.iter().map(|&i| 1.0 / mu[i].sqrt()).collect::<Vec<_>>());
    let basis = q0.matmul(&v_s);
    let maps: Vec<CMatrix> = projected
        .iter()
        .zip(&gram_inv_sqrt)
        .map(|(qc, gi)| gi.matmul(&qc.adjoint()).matmul(&v_s).matmul(&t))
        .collect();

    let r = basis.cols();
    let sum = maps.iter().fold(CMatrix::zeros(r, r), |acc, l| acc.add(&l.adjoint_mul(l)));
    // on the complement of span(Q) the completion is exactly the identity
    let completeness_residual = sum.sub(&CMatrix::identity(r)).max_abs();
    Ok(RecoveryChannel {
        noisy_basis: images.iter().map(|b| basis.adjoint_mul(b)).collect(),
        noisy_code: images.iter().map(|b| psi.adjoint_mul(b)).collect(),
        code_basis: basis.adjoint_mul(&psi),
        psi,
        basis,
        maps,
        completeness_residual,
    })
}

impl RecoveryChannel {
    pub fn d(&self) -> usize {
        self.psi.cols()
    }

    /// `⟨ψ| ℛ(𝒩(ψψ†)) |ψ⟩` for `ψ = Ψ c` under the channel the map was
    /// built for, using only `d`-dimensional quantities.
    pub fn fidelity(&self, c: &[C64]) -> f64 {
        let psi_q = self.code_basis.mul_vec(c);
        let mut total = 0.0;
        for (nb, nc) in self.noisy_basis.iter().zip(&self.noisy_code) {
            let u = nb.mul_vec(c);
            for l in &self.maps {
                total += inner(c, &l.mul_vec(&u)).norm_sqr();
            }
            total += (inner(c, &nc.mul_vec(c)) - inner(&psi_q, &u)).norm_sqr();
        }
        total
    }

    /// Same quantity with the channel applied to full-length vectors.
    pub fn fidelity_dense(&self, channel: &DenseChannel, c: &[C64]) -> f64 {
        let psi = self.psi.mul_vec(c);
        let psi_q = self.basis.adjoint_mul_vec(&psi);
        let mut total = 0.0;
        for k in &channel.kraus {
            let y = k.apply(channel.q, channel.total, &psi);
            let u = self.basis.adjoint_mul_vec(&y);
            for l in &self.maps {
                total += inner(c, &l.mul_vec(&u)).norm_sqr();
            }
            total += (inner(&psi, &y) - inner(&psi_q, &u)).norm_sqr();
        }
        total
    }
}
