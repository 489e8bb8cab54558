//! Anti-concentration of output probabilities over the random-braid
//! ensemble, and the Paley-Zygmund tail check it rests on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path_model::PathRep;

use super::moment_gap::MomentOperator;
use super::moments::{amplitude_ensemble_with, BetaVector};
use super::ExperimentConfig;

/// Lower bound (1 − ε − γ)² / (2(1 + ε)) on Pr[|⟨cap|ρ(b)|β⟩|² > γ/d].
pub fn anticoncentration_bound(epsilon: f64, gamma: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon = {epsilon} violates 0 < epsilon < 1"
        )));
    }
    if !(gamma > 0.0 && gamma < 1.0 - epsilon) {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} violates 0 < gamma < 1 - epsilon = {}",
            1.0 - epsilon
        )));
    }
    Ok((1.0 - epsilon - gamma).powi(2) / (2.0 * (1.0 + epsilon)))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnticoncentrationReport {
    pub gamma: f64,
    /// γ/d: probabilities strictly above this count as anti-concentrated.
    pub threshold: f64,
    /// Achieved design accuracy: the exact moment gap at the configured
    /// length when computable, the configured target otherwise.
    pub epsilon_effective: f64,
    /// The bound at the configured (nominal) epsilon — the quoted guarantee.
    pub bound: f64,
    /// The same bound at `epsilon_effective`; at least `bound` whenever the
    /// achieved accuracy beats the target.
    pub bound_effective: f64,
    pub empirical_fraction: f64,
    pub stderr: f64,
    /// empirical_fraction − bound; the claim is slack ≥ −3·stderr.
    pub slack: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub braid_length: u64,
}

/// Empirical fraction of random braids whose output probability at the cap
/// exceeds γ/d, against the design lower bound.
pub fn anticoncentration_fraction(
    cfg: &ExperimentConfig,
    beta: BetaVector,
) -> Result<AnticoncentrationReport> {
    cfg.validate()?;
    let length = cfg.braid_length()?;
    let rep = PathRep::new(cfg.n, cfg.k)?;

    let epsilon_effective = match MomentOperator::new(cfg.n, cfg.k, 2) {
        Ok(op) => op.gap(length),
        Err(Error::DimensionGuard { .. }) => cfg.epsilon,
        Err(e) => return Err(e),
    };
    if cfg.gamma >= 1.0 - epsilon_effective {
        return Err(Error::InvalidParameter(format!(
            "gamma = {} violates gamma < 1 - epsilon_effective = {}",
            cfg.gamma,
            1.0 - epsilon_effective
        )));
    }
    let bound = anticoncentration_bound(cfg.epsilon, cfg.gamma)?;
    let bound_effective =
        anticoncentration_bound(epsilon_effective.max(f64::MIN_POSITIVE), cfg.gamma)?;

    let probs = amplitude_ensemble_with(&rep, length as usize, cfg.samples, cfg.seed, beta)?;
    let threshold = cfg.gamma / rep.dim() as f64;
    let hits = probs.iter().filter(|&&p| p > threshold).count();
    let fraction = hits as f64 / probs.len() as f64;
    let stderr = (fraction * (1.0 - fraction) / probs.len() as f64).sqrt();

    Ok(AnticoncentrationReport {
        gamma: cfg.gamma,
        threshold,
        epsilon_effective,
        bound,
        bound_effective,
        empirical_fraction: fraction,
        stderr,
        slack: fraction - bound,
        n_samples: probs.len(),
        seed: cfg.seed,
        braid_length: length,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PaleyZygmundReport {
    pub theta: f64,
    pub mean: f64,
    pub second_moment: f64,
    /// Pr[Z > θ·E Z], strict, over the sample.
    pub empirical_probability: f64,
    /// (1 − θ)²·(E Z)²/E[Z²], or 0 when the second moment vanishes.
    pub bound: f64,
    pub slack: f64,
    pub stderr: f64,
    pub n_samples: usize,
}

/// Checks the Paley-Zygmund inequality Pr[Z > θ·E Z] ≥ (1−θ)²(E Z)²/E[Z²]
/// on a nonnegative sample.
pub fn paley_zygmund_check(samples: &[f64], theta: f64) -> Result<PaleyZygmundReport> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("samples must be nonempty".into()));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidParameter(format!(
            "theta = {theta} violates 0 <= theta <= 1"
        )));
    }
    if let Some((i, &z)) = samples.iter().enumerate().find(|(_, &z)| z < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "negative sample at index {i}: {z}"
        )));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let second_moment = samples.iter().map(|z| z * z).sum::<f64>() / n;
    let bound = if second_moment == 0.0 {
        0.0
    } else {
        (1.0 - theta).powi(2) * mean * mean / second_moment
    };
    let hits = samples.iter().filter(|&&z| z > theta * mean).count();
    let empirical_probability = hits as f64 / n;
    let stderr = (empirical_probability * (1.0 - empirical_probability) / n).sqrt();
    Ok(PaleyZygmundReport {
        theta,
        mean,
        second_moment,
        empirical_probability,
        bound,
        slack: empirical_probability - bound,
        stderr,
        n_samples: samples.len(),
    })
}
