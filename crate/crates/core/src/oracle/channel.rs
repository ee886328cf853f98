use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::dense::apply_local;
use super::linalg::{psd_inv_sqrt, CMatrix, C64};

/// Kraus operator acting on the listed qudits only.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalKraus {
    pub support: Vec<usize>,
    pub matrix: CMatrix,
}

impl LocalKraus {
    pub fn apply(&self, q: usize, total: usize, v: &[C64]) -> Vec<C64> {
        apply_local(&self.matrix, &self.support, q, total, v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseChannel {
    pub q: usize,
    pub total: usize,
    pub kraus: Vec<LocalKraus>,
    /// `max |Σ A_i†A_i - I|` on the joint support.
    pub completeness_residual: f64,
}

impl DenseChannel {
    pub fn identity(q: usize, total: usize) -> Self {
        Self {
            q,
            total,
            kraus: vec![LocalKraus {
                support: vec![],
                matrix: CMatrix::identity(1),
            }],
            completeness_residual: 0.0,
        }
    }

    /// Largest support among the Kraus operators.
    pub fn weight(&self) -> usize {
        self.kraus.iter().map(|k| k.support.len()).max().unwrap_or(0)
    }
}

fn completeness_residual(kraus: &[CMatrix]) -> f64 {
    let n = kraus[0].rows();
    let sum = kraus.iter().fold(CMatrix::zeros(n, n), |acc, a| acc.add(&a.adjoint_mul(a)));
    sum.sub(&CMatrix::identity(n)).max_abs()
}

/// Seeded channel with `num_kraus` Gaussian Kraus operators on `t` random
/// qudits, rescaled as `A_i S^{-1/2}` with `S = Σ A_i†A_i`.
pub fn random_weight_t_channel(q: usize, total: usize, t: usize, num_kraus: usize, seed: u64) -> DenseChannel {
    assert!(t <= total, "t = {t} exceeds N = {total}");
    if t == 0 || num_kraus == 0 {
        return DenseChannel::identity(q, total);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut support: Vec<usize> = sample(&mut rng, total, t).into_vec();
    support.sort_unstable();
    let local = q.pow(t as u32);
    let raw: Vec<CMatrix> = (0..num_kraus)
        .map(|_| {
            let mut m = CMatrix::zeros(local, local);
            for i in 0..local {
                for j in 0..local {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    m[(i, j)] = C64::new(re, im);
                }
            }
            m
        })
        .collect();
    let s = raw.iter().fold(CMatrix::zeros(local, local), |acc, a| acc.add(&a.adjoint_mul(a)));
    let s_inv_sqrt = psd_inv_sqrt(&s, 0.0);
    let kraus: Vec<CMatrix> = raw.iter().map(|a| a.matmul(&s_inv_sqrt)).collect();
    DenseChannel {
        q,
        total,
        completeness_residual: completeness_residual(&kraus),
        kraus: kraus
            .into_iter()
            .map(|matrix| LocalKraus {
                support: support.clone(),
                matrix,
            })
            .collect(),
    }
}
