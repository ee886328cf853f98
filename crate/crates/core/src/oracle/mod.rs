//! Dense floating-point simulator for small codes: Dicke and code vectors
//! in the full `q^N` space, seeded local noise, and the recovery map.
//! Everything here exists to cross-check the exact engine.

mod channel;
mod crosscheck;
mod dense;
pub mod linalg;
mod recovery;
pub mod tolerances;

pub use channel::{random_weight_t_channel, DenseChannel, LocalKraus};
pub use crosscheck::{
    canonical_string, crosscheck_logical_elements, crosscheck_matrix_elements, dense_matrix_unit_element,
    CrosscheckReport, LogicalCrosscheck,
};
pub use dense::{apply_local, code_matrix, dense_code_vector, dense_dicke, dimension, DenseVector};
pub use recovery::{recovery_channel, recovery_channel_with_threshold, RecoveryChannel};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

use crate::codegen::PICode;
use crate::combinatorics::CombinatoricsError;
use crate::klverify::KlError;
use linalg::C64;
use tolerances::{CROSSCHECK_TOL, FIDELITY_TOL, RECOVERY_COMPLETENESS_TOL};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("q^N = {q}^{total} exceeds the dense dimension cap {cap}")]
    DimensionCap { q: usize, total: usize, cap: u64 },
    #[error("no logical vector {k} (d = {d})")]
    NoSuchLogical { k: usize, d: usize },
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Kl(#[from] KlError),
}

/// Gaussian logical coefficients, normalized.
pub fn random_logical_state<R: Rng>(d: usize, rng: &mut R) -> Vec<C64> {
    let c: Vec<C64> = (0..d)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let n = linalg::norm(&c);
    c.into_iter().map(|x| x / n).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityRow {
    pub channel: usize,
    pub channel_seed: u64,
    pub support: Vec<usize>,
    pub states: usize,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
    pub channel_residual: f64,
    pub recovery_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub code: String,
    pub max_abs_delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub fidelity_table: Vec<FidelityRow>,
    pub ok: bool,
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn min_fidelity(&self) -> f64 {
        self.fidelity_table.iter().map(|r| r.min_fidelity).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub seed: u64,
    pub channels: usize,
    pub states: usize,
    pub kraus: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            channels: 5,
            states: 20,
            kraus: 4,
        }
    }
}

/// Exact/dense agreement on all classes up to weight `2t`, then recovery
/// from `channels` seeded weight-`t` channels on `states` random code
/// states each. Channel `j` uses seed `seed + j`.
pub fn run_oracle(code: &PICode, cfg: &OracleConfig) -> Result<OracleReport, OracleError> {
    dimension(code.q, code.total)?;
    let t = code.t;
    let cross = crosscheck_logical_elements(code, 2 * t, cfg.seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut table = Vec::with_capacity(cfg.channels);
    for j in 0..cfg.channels {
        let channel_seed = cfg.seed.wrapping_add(j as u64);
        let ch = random_weight_t_channel(code.q, code.total, t, cfg.kraus, channel_seed);
        let rec = recovery_channel(code, &ch)?;
        let fids: Vec<f64> = (0..cfg.states)
            .map(|_| rec.fidelity(&random_logical_state(code.d(), &mut rng)))
            .collect();
        table.push(FidelityRow {
            channel: j,
            channel_seed,
            support: ch.kraus.first().map(|k| k.support.clone()).unwrap_or_default(),
            states: fids.len(),
            min_fidelity: fids.iter().cloned().fold(f64::INFINITY, f64::min),
            mean_fidelity: fids.iter().sum::<f64>() / fids.len().max(1) as f64,
            channel_residual: ch.completeness_residual,
            recovery_residual: rec.completeness_residual,
        });
    }
    let ok = cross.max_abs_delta <= CROSSCHECK_TOL
        && table
            .iter()
            .all(|r| r.min_fidelity >= 1.0 - FIDELITY_TOL && r.recovery_residual <= RECOVERY_COMPLETENESS_TOL);
    Ok(OracleReport {
        code: code.id(),
        max_abs_delta: cross.max_abs_delta,
        trials: cross.comparisons,
        seed: cfg.seed,
        fidelity_table: table,
        ok,
    })
}
