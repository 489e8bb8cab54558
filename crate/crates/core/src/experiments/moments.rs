//! Monte-Carlo estimates of the design moments E|⟨cap|ρ(b)|β⟩|^{2m} over the
//! random-braid ensemble, with exact Haar reference values.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{random_braid_indexed, sample_rng};
use crate::error::Result;
use crate::path_model::{PathRep, StateVector};

use super::ExperimentConfig;

/// Choice of the fixed right-hand unit vector β in ⟨cap|ρ(b)|β⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaVector {
    /// β is the cap state itself.
    Cap,
    /// A fixed random unit vector drawn once per experiment from the seed,
    /// on RNG stream u64::MAX — disjoint from all per-sample streams.
    SeededRandom,
}

/// The realized β for a representation.
pub fn beta_state(rep: &PathRep, beta: BetaVector, seed: u64) -> Vec<Complex64> {
    match beta {
        BetaVector::Cap => {
            let mut v = vec![Complex64::new(0.0, 0.0); rep.dim()];
            v[rep.basis().cap_index()] = Complex64::new(1.0, 0.0);
            v
        }
        BetaVector::SeededRandom => {
            let mut rng = sample_rng(seed, u64::MAX);
            let v: Vec<Complex64> = (0..rep.dim())
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            v.into_iter().map(|a| a / norm).collect()
        }
    }
}

/// |⟨cap|ρ(b_i)|β⟩|² for `samples` independent random words b_i of the given
/// length. Sample i uses RNG stream i, so the output is identical for any
/// worker count and any partition of the index range.
pub fn amplitude_ensemble(
    n: usize,
    k: u32,
    length: usize,
    samples: usize,
    seed: u64,
    beta: BetaVector,
) -> Result<Vec<f64>> {
    let rep = PathRep::new(n, k)?;
    amplitude_ensemble_with(&rep, length, samples, seed, beta)
}

/// Like [`amplitude_ensemble`], reusing an already-built representation.
pub fn amplitude_ensemble_with(
    rep: &PathRep,
    length: usize,
    samples: usize,
    seed: u64,
    beta: BetaVector,
) -> Result<Vec<f64>> {
    let strands = 2 * rep.basis().n();
    let start = StateVector { amplitudes: beta_state(rep, beta, seed) };
    let cap = rep.basis().cap_index();
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let word = random_braid_indexed(strands, length, seed, i as u64)?;
            let out = rep.apply_braid(&word, &start)?;
            Ok(out.amplitudes[cap].norm_sqr())
        })
        .collect()
}

/// Exact Haar moment 1/binom(k_moment + d − 1, d − 1), via integer binomials.
pub fn haar_moment_value(dim: usize, k_moment: u32) -> f64 {
    let n = k_moment as u64 + dim as u64 - 1;
    let k = dim as u64 - 1;
    1.0 / binomial(n, k.min(n - k)) as f64
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Exact at every step: the running value is binom(n − k + i, i).
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc
}

/// One Monte-Carlo moment estimate against its Haar reference.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentReport {
    pub k_moment: u32,
    pub empirical: f64,
    pub haar_value: f64,
    pub ratio: f64,
    /// Standard error of `empirical`.
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub braid_length: u64,
}

/// Monte-Carlo moments for every k_moment ≤ cfg.t, over one shared ensemble
/// at the design length prescribed by the config.
pub fn estimate_design_moments(
    cfg: &ExperimentConfig,
    beta: BetaVector,
) -> Result<Vec<MomentReport>> {
    cfg.validate()?;
    let length = cfg.braid_length()?;
    let rep = PathRep::new(cfg.n, cfg.k)?;
    let probs =
        amplitude_ensemble_with(&rep, length as usize, cfg.samples, cfg.seed, beta)?;
    let dim = rep.dim();
    let mut reports = Vec::new();
    for k_moment in 1..=cfg.t {
        let powers: Vec<f64> = probs.iter().map(|p| p.powi(k_moment as i32)).collect();
        let mean = powers.iter().sum::<f64>() / powers.len() as f64;
        let var = if powers.len() > 1 {
            powers.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
                / (powers.len() - 1) as f64
        } else {
            0.0
        };
        let haar = haar_moment_value(dim, k_moment);
        reports.push(MomentReport {
            k_moment,
            empirical: mean,
            haar_value: haar,
            ratio: mean / haar,
            stderr: (var / powers.len() as f64).sqrt(),
            n_samples: cfg.samples,
            seed: cfg.seed,
            braid_length: length,
        });
    }
    Ok(reports)
}
