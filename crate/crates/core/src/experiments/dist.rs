//! Output distributions of braid unitaries on the cap state, outcome
//! sampling, and L1/total-variation distance.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::braid::{sample_rng, BraidWord};
use crate::error::{Error, Result};
use crate::path_model::{PathBasis, PathRep};

/// Guard for materializing a full probability vector.
pub const DIST_DIM_LIMIT: usize = 2000;

/// Born distribution of ρ(b)|cap⟩ in the path basis: Pr[x] = |⟨x|ρ(b)|cap⟩|².
#[derive(Debug, Clone)]
pub struct OutputDistribution {
    pub basis: Arc<PathBasis>,
    pub probabilities: Vec<f64>,
}

impl OutputDistribution {
    pub fn dim(&self) -> usize {
        self.probabilities.len()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Index of the cap path (the distinguished outcome).
    pub fn cap_index(&self) -> usize {
        self.basis.cap_index()
    }

    pub fn cap_probability(&self) -> f64 {
        self.probabilities[self.cap_index()]
    }
}

/// Full output distribution of a braid word at root order `k`. Braid words
/// always have an even strand count, so the pair count is `strands / 2`.
pub fn output_distribution(word: &BraidWord, k: u32) -> Result<OutputDistribution> {
    let rep = PathRep::new(word.strands() / 2, k)?;
    output_distribution_with(&rep, word)
}

/// Like [`output_distribution`], reusing an already-built representation.
pub fn output_distribution_with(rep: &PathRep, word: &BraidWord) -> Result<OutputDistribution> {
    let dim = rep.dim();
    if dim > DIST_DIM_LIMIT {
        return Err(Error::DimensionGuard {
            what: "output distribution dimension",
            value: dim,
            limit: DIST_DIM_LIMIT,
        });
    }
    let out = rep.apply_braid(word, &rep.cap_state())?;
    Ok(OutputDistribution {
        basis: rep.basis_handle(),
        probabilities: out.amplitudes.iter().map(|a| a.norm_sqr()).collect(),
    })
}

/// N i.i.d. draws from the exact vector; returns per-outcome counts.
pub fn sample_outcomes(dist: &OutputDistribution, n: usize, seed: u64) -> Vec<u64> {
    sample_from_probabilities(&dist.probabilities, n, seed)
}

/// Inverse-CDF sampling over an explicit probability vector.
pub fn sample_from_probabilities(probabilities: &[f64], n: usize, seed: u64) -> Vec<u64> {
    let mut cdf = Vec::with_capacity(probabilities.len());
    let mut acc = 0.0;
    for &p in probabilities {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let mut counts = vec![0u64; probabilities.len()];
    let mut rng = sample_rng(seed, 0);
    for _ in 0..n {
        let u: f64 = rng.gen::<f64>() * total;
        // First index whose cumulative weight exceeds u.
        let idx = cdf.partition_point(|&c| c <= u).min(probabilities.len() - 1);
        counts[idx] += 1;
    }
    counts
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct L1Report {
    pub l1: f64,
    /// Total-variation distance = l1 / 2.
    pub tv: f64,
}

/// Σ|p_i − q_i|, plus the total-variation half.
pub fn l1_distance(p: &[f64], q: &[f64]) -> Result<L1Report> {
    if p.len() != q.len() {
        return Err(Error::Mismatch(format!(
            "distributions have supports of size {} and {}",
            p.len(),
            q.len()
        )));
    }
    let l1 = p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum();
    Ok(L1Report { l1, tv: l1 / 2.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{parse_braid_word, random_braid_indexed};
    use crate::jones::plat_amplitude;

    #[test]
    fn empty_word_gives_point_mass_on_cap() {
        let word = parse_braid_word("", 6).unwrap();
        let dist = output_distribution(&word, 5).unwrap();
        assert_eq!(dist.probabilities[dist.cap_index()], 1.0);
        assert!((dist.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn distributions_sum_to_one_and_are_nonnegative() {
        let rep = PathRep::new(3, 7).unwrap();
        for index in 0..20 {
            let word = random_braid_indexed(6, 25, 11, index).unwrap();
            let dist = output_distribution_with(&rep, &word).unwrap();
            assert!((dist.total() - 1.0).abs() < 1e-9);
            assert!(dist.probabilities.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn cap_entry_is_amplitude_squared() {
        let word = parse_braid_word("1 -2 3 1", 4).unwrap();
        let dist = output_distribution(&word, 5).unwrap();
        let amp = plat_amplitude(&word, 5).unwrap();
        assert!((dist.cap_probability() - amp.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn point_mass_sampling_is_constant() {
        let counts = sample_from_probabilities(&[0.0, 1.0, 0.0], 500, 9);
        assert_eq!(counts, vec![0, 500, 0]);
    }

    #[test]
    fn sampling_is_deterministic_given_seed() {
        let p = [0.3, 0.2, 0.5];
        assert_eq!(
            sample_from_probabilities(&p, 1000, 4),
            sample_from_probabilities(&p, 1000, 4)
        );
        assert_ne!(
            sample_from_probabilities(&p, 1000, 4),
            sample_from_probabilities(&p, 1000, 5)
        );
    }

    #[test]
    fn uniform_two_outcome_counts_are_balanced() {
        // Binomial(N, 1/2): |count - N/2| <= 4√N except with prob < 1e-4.
        let n = 10_000usize;
        let counts = sample_from_probabilities(&[0.5, 0.5], n, 2024);
        let half = n as f64 / 2.0;
        let slack = 4.0 * (n as f64).sqrt();
        assert!((counts[0] as f64 - half).abs() <= slack, "counts {counts:?}");
    }

    #[test]
    fn sampling_through_distribution_matches_raw_probabilities() {
        let word = parse_braid_word("1 -2 1 3 -4 5", 6).unwrap();
        let dist = output_distribution(&word, 5).unwrap();
        assert_eq!(
            sample_outcomes(&dist, 300, 7),
            sample_from_probabilities(&dist.probabilities, 300, 7)
        );
    }

    #[test]
    fn empirical_l1_shrinks_with_sample_size() {
        let rep = PathRep::new(3, 5).unwrap();
        let word = random_braid_indexed(6, 30, 5, 0).unwrap();
        let dist = output_distribution_with(&rep, &word).unwrap();
        let l1_at = |n: usize| {
            let counts = sample_outcomes(&dist, n, 31);
            let empirical: Vec<f64> =
                counts.iter().map(|&c| c as f64 / n as f64).collect();
            l1_distance(&empirical, &dist.probabilities).unwrap().l1
        };
        let coarse = l1_at(1_000);
        let fine = l1_at(100_000);
        assert!(
            fine < coarse,
            "l1 did not shrink: N=1e3 -> {coarse}, N=1e5 -> {fine}"
        );
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_distance(&[0.2, 0.8], &[0.2, 0.8]).unwrap().l1, 0.0);
        let report = l1_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(report.l1, 2.0);
        assert_eq!(report.tv, 1.0);
        let report = l1_distance(&[0.25; 4], &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((report.l1 - 1.5).abs() < 1e-15);
        assert!(l1_distance(&[1.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn dimension_guard_applies() {
        // dim(10, 12) = C_10 = 16796 > 2000.
        let word = parse_braid_word("", 20).unwrap();
        assert!(matches!(
            output_distribution(&word, 12),
            Err(Error::DimensionGuard { .. })
        ));
    }
}
