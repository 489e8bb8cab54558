//! Braid words on an even number of strands, their text format, seeded random
//! generation, and the design-length formula for random-braid ensembles.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the braid group B_{2n}: a strand count (even, at least 2) and a
/// sequence of signed generator letters, `+i` / `-i` with `1 <= i <= 2n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 || strands % 2 != 0 {
            return Err(Error::InvalidBraidWord(format!(
                "strand count must be even and >= 2, got {strands}"
            )));
        }
        let max = (strands - 1) as i32;
        for &g in &letters {
            if g == 0 {
                return Err(Error::InvalidBraidWord("letter 0 is not a generator".into()));
            }
            if g.abs() > max {
                return Err(Error::InvalidBraidWord(format!(
                    "letter {g} out of range for {strands} strands (|g| <= {max})"
                )));
            }
        }
        Ok(Self { strands, letters })
    }

    /// The empty word (identity braid).
    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The group inverse: letters reversed with signs flipped.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// Concatenation `self · other` (self's letters applied first).
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::Mismatch(format!(
                "cannot concatenate words on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    /// Returns a copy with the letter at `site` replaced.
    pub fn with_letter(&self, site: usize, letter: i32) -> Result<Self> {
        if site >= self.len() {
            return Err(Error::InvalidParameter(format!(
                "site {site} out of range for word of length {}",
                self.len()
            )));
        }
        let mut letters = self.letters.clone();
        letters[site] = letter;
        Self::new(self.strands, letters)
    }

    /// Returns a copy with the letter at `site` removed.
    pub fn without_letter(&self, site: usize) -> Result<Self> {
        if site >= self.len() {
            return Err(Error::InvalidParameter(format!(
                "site {site} out of range for word of length {}",
                self.len()
            )));
        }
        let mut letters = self.letters.clone();
        letters.remove(site);
        Ok(Self { strands: self.strands, letters })
    }

    /// The permutation induced on strand positions, ignoring crossing signs.
    /// `perm[p]` is the final position of the strand that starts at position `p`
    /// (positions are 0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            // The strands currently at positions i and i+1 swap places.
            for p in perm.iter_mut() {
                if *p == i {
                    *p += 1;
                } else if *p == i + 1 {
                    *p -= 1;
                }
            }
        }
        perm
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for g in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses the whitespace-separated signed-integer format, e.g. `"1 -2 1"`.
/// The empty (or all-whitespace) string is the identity braid.
pub fn parse_braid_word(text: &str, strands: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let g: i32 = token.parse().map_err(|_| {
            Error::InvalidBraidWord(format!("token {token:?} is not a signed integer"))
        })?;
        letters.push(g);
    }
    BraidWord::new(strands, letters)
}

/// Inverse of [`parse_braid_word`]; `format_braid_word(parse(s)) == normalized s`.
pub fn format_braid_word(word: &BraidWord) -> String {
    word.to_string()
}

/// Deterministic generator stream for sample index `index` under a master seed.
///
/// ChaCha8 is a counter-based generator; distinct 64-bit stream identifiers
/// yield independent, reproducible streams, so results are identical for any
/// worker count and iteration order.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws each letter independently and uniformly from the `2(strands-1)`
/// signed generators.
pub fn random_braid(strands: usize, length: usize, seed: u64) -> Result<BraidWord> {
    random_braid_indexed(strands, length, seed, 0)
}

/// Like [`random_braid`], but for the `index`-th sample of a seeded ensemble.
pub fn random_braid_indexed(
    strands: usize,
    length: usize,
    seed: u64,
    index: u64,
) -> Result<BraidWord> {
    if strands < 2 || strands % 2 != 0 {
        return Err(Error::InvalidBraidWord(format!(
            "strand count must be even and >= 2, got {strands}"
        )));
    }
    let mut rng = sample_rng(seed, index);
    let generators = 2 * (strands - 1);
    let letters = (0..length)
        .map(|_| {
            let pick = rng.gen_range(0..generators);
            let i = (pick / 2 + 1) as i32;
            if pick % 2 == 0 {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters)
}

/// Word length for an ε-approximate 2-design ensemble on `2n` strands:
/// `ceil(λ·n·(n + ln(1/ε)))`.
///
/// For general moment order `t` the bound grows polynomially in `t`:
/// `ceil(λ·n·ceil(log_q(4t))^2·t^(5 + 3.1/ln q)·(t·n·ln4 + ln(1/ε)))`,
/// where `q` is the local dimension (at least 2) and `n·ln4` bounds the
/// logarithm of the Catalan number counting basis paths.
pub fn design_length(n: usize, epsilon: f64, t: u32, lambda: f64, local_dim: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon = {epsilon} violates 0 < epsilon < 1"
        )));
    }
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} violates lambda > 0")));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t must be >= 1".into()));
    }
    if local_dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "local_dim = {local_dim} violates local_dim >= 2"
        )));
    }
    let nf = n as f64;
    let log_inv_eps = (1.0 / epsilon).ln();
    let raw = if t == 2 {
        lambda * nf * (nf + log_inv_eps)
    } else {
        let q = local_dim as f64;
        let tf = t as f64;
        let log_q_4t = (4.0 * tf).ln() / q.ln();
        let block = log_q_4t.ceil().powi(2);
        lambda
            * nf
            * block
            * tf.powf(5.0 + 3.1 / q.ln())
            * (tf * nf * 4f64.ln() + log_inv_eps)
    };
    Ok(raw.ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let empty = parse_braid_word("", 2).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.strands(), 2);

        let word = parse_braid_word("1 -2 1", 4).unwrap();
        assert_eq!(word.letters(), &[1, -2, 1]);

        assert!(parse_braid_word("3", 2).is_err()); // |g| = 3 > strands-1 = 1
        assert!(parse_braid_word("0", 4).is_err()); // zero letter
        assert!(parse_braid_word("1", 3).is_err()); // odd strand count
        assert!(parse_braid_word("x", 4).is_err()); // not an integer
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn format_round_trip_examples() {
        for (text, strands) in [("", 2), ("1 -2 1", 4), ("-3 -3 2", 4), ("5 -1", 6)] {
            let word = parse_braid_word(text, strands).unwrap();
            assert_eq!(format_braid_word(&word), text);
        }
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(BraidWord::identity(4).unwrap().permutation(), vec![0, 1, 2, 3]);
        let swap = parse_braid_word("1", 2).unwrap();
        assert_eq!(swap.permutation(), vec![1, 0]);
        // Sign is irrelevant to the permutation.
        let swap_inv = parse_braid_word("-1", 2).unwrap();
        assert_eq!(swap_inv.permutation(), vec![1, 0]);
        // σ1 σ2 sends position 0 -> 1 -> 2.
        let cycle = parse_braid_word("1 2", 4).unwrap();
        assert_eq!(cycle.permutation(), vec![2, 0, 1, 3]);
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let word = parse_braid_word("1 -2 3", 4).unwrap();
        assert_eq!(word.inverse().letters(), &[-3, 2, -1]);
        let id_perm: Vec<usize> = (0..4).collect();
        assert_eq!(word.concat(&word.inverse()).unwrap().permutation(), id_perm);
    }

    #[test]
    fn random_braid_is_deterministic_and_in_range() {
        let a = random_braid(4, 50, 99).unwrap();
        let b = random_braid(4, 50, 99).unwrap();
        assert_eq!(a, b);
        assert!(a.letters().iter().all(|g| (1..=3).contains(&g.abs())));
        let c = random_braid(4, 50, 100).unwrap();
        assert_ne!(a, c);
        // Streams differ from each other and from the base stream.
        let d = random_braid_indexed(4, 50, 99, 1).unwrap();
        assert_ne!(a, d);
        assert!(random_braid(4, 0, 7).unwrap().is_empty());
    }

    #[test]
    fn random_braid_uniformity_chi_square() {
        // 60000 letters over the 6 signed generators of B_4; chi-square with
        // 5 degrees of freedom, critical value 15.086 at the 0.01 level.
        let word = random_braid(4, 60_000, 12345).unwrap();
        let mut counts = [0u64; 6];
        for &g in word.letters() {
            let cell = ((g.unsigned_abs() as usize) - 1) * 2 + usize::from(g < 0);
            counts[cell] += 1;
        }
        let expected = 60_000.0 / 6.0;
        let stat: f64 = counts
            .iter()
            .map(|&c| {
                let diff = c as f64 - expected;
                diff * diff / expected
            })
            .sum();
        assert!(stat < 15.086, "chi-square statistic {stat} exceeds the 0.01 critical value");
    }

    #[test]
    fn design_length_examples() {
        // n=3, ε=e^{-1}, t=2, λ=1: ceil(3·(3+1)) = 12.
        assert_eq!(design_length(3, (-1.0f64).exp(), 2, 1.0, 2).unwrap(), 12);
        // n=1, ε=0.5, t=2, λ=2: ceil(2·(1+ln2)) = 4.
        assert_eq!(design_length(1, 0.5, 2, 2.0, 2).unwrap(), 4);
    }

    #[test]
    fn design_length_monotone_in_inverse_epsilon() {
        let mut prev = 0;
        for inv_eps in [2.0, 4.0, 8.0, 100.0, 1e6] {
            let len = design_length(3, 1.0 / inv_eps, 2, 1.0, 2).unwrap();
            assert!(len >= prev, "length decreased as epsilon shrank");
            prev = len;
        }
        // Same monotonicity for the general-t branch.
        let mut prev = 0;
        for inv_eps in [2.0, 4.0, 8.0, 100.0] {
            let len = design_length(3, 1.0 / inv_eps, 3, 1.0, 2).unwrap();
            assert!(len >= prev);
            prev = len;
        }
    }

    #[test]
    fn design_length_general_t_dominates_t2() {
        // The general-t expression at t=3 is far larger than the tuned t=2 form.
        let t2 = design_length(2, 0.1, 2, 1.0, 2).unwrap();
        let t3 = design_length(2, 0.1, 3, 1.0, 2).unwrap();
        assert!(t3 > t2);
    }

    #[test]
    fn design_length_rejects_bad_parameters() {
        assert!(design_length(0, 0.1, 2, 1.0, 2).is_err());
        assert!(design_length(2, 0.0, 2, 1.0, 2).is_err());
        assert!(design_length(2, 1.0, 2, 1.0, 2).is_err());
        assert!(design_length(2, 0.1, 0, 1.0, 2).is_err());
        assert!(design_length(2, 0.1, 2, 0.0, 2).is_err());
        assert!(design_length(2, 0.1, 3, 1.0, 1).is_err());
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_word() -> impl Strategy<Value = BraidWord> {
            (1usize..=4).prop_flat_map(|n| {
                let strands = 2 * n;
                let max = (strands - 1) as i32;
                proptest::collection::vec(
                    (1..=max, proptest::bool::ANY).prop_map(|(i, neg)| if neg { -i } else { i }),
                    0..12,
                )
                .prop_map(move |letters| BraidWord::new(strands, letters).unwrap())
            })
        }

        proptest! {
            #[test]
            fn format_parse_round_trip(word in arb_word()) {
                let text = format_braid_word(&word);
                let back = parse_braid_word(&text, word.strands()).unwrap();
                prop_assert_eq!(back, word);
            }

            #[test]
            fn permutation_is_a_bijection(word in arb_word()) {
                let mut perm = word.permutation();
                perm.sort_unstable();
                let id: Vec<usize> = (0..word.strands()).collect();
                prop_assert_eq!(perm, id);
            }

            #[test]
            fn word_times_inverse_is_identity_permutation(word in arb_word()) {
                let id: Vec<usize> = (0..word.strands()).collect();
                prop_assert_eq!(word.concat(&word.inverse()).unwrap().permutation(), id);
            }
        }
    }
}
