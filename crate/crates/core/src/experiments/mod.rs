//! Random-braid experiments: output distributions and sampling, exact moment
//! operators and their spectral gaps, Monte-Carlo design-moment estimates,
//! anti-concentration fractions, and the Paley-Zygmund tail check.

pub mod anticoncentration;
pub mod dist;
pub mod moment_gap;
pub mod moments;

use serde::{Deserialize, Serialize};

use crate::braid::design_length;
use crate::error::{Error, Result};

pub use anticoncentration::{
    anticoncentration_bound, anticoncentration_fraction, paley_zygmund_check,
    AnticoncentrationReport, PaleyZygmundReport,
};
pub use dist::{
    l1_distance, output_distribution, output_distribution_with, sample_from_probabilities,
    sample_outcomes, L1Report, OutputDistribution,
};
pub use moment_gap::{
    calibrate_lambda, calibrate_lambda_seeded, exact_design_moment, exact_moment_gap,
    CalibrationReport, MomentOperator,
};
pub use moments::{
    amplitude_ensemble, amplitude_ensemble_with, beta_state, estimate_design_moments,
    haar_moment_value, BetaVector, MomentReport,
};

/// Shared experiment parameters. `epsilon` is the design-accuracy target,
/// `gamma` the anti-concentration threshold parameter, `lambda` the length
/// constant, `t` the design order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: u32,
    pub t: u32,
    pub epsilon: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub samples: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    /// Checks the parameter ranges; error messages name the violated bound.
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        if self.k < 3 {
            return Err(Error::InvalidParameter(format!(
                "k = {} violates k >= 3",
                self.k
            )));
        }
        if self.t < 1 {
            return Err(Error::InvalidParameter("t must be >= 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon = {} violates 0 < epsilon < 1",
                self.epsilon
            )));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {} violates gamma > 0",
                self.gamma
            )));
        }
        if !(self.gamma < 1.0 - self.epsilon) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {} violates gamma < 1 - epsilon = {}",
                self.gamma,
                1.0 - self.epsilon
            )));
        }
        if !(self.lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda = {} violates lambda > 0",
                self.lambda
            )));
        }
        Ok(())
    }

    /// Braid word length prescribed by the design-length schedule.
    pub fn braid_length(&self) -> Result<u64> {
        design_length(self.n, self.epsilon, self.t, self.lambda, 2)
    }
}
