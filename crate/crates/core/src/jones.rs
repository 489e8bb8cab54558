//! Jones values of plat closures via the unitary path model, and the
//! cross-check against the exact state-sum evaluation. The two routes share
//! one convention stack (A, writhe, cap pairing), so agreement is exact up to
//! floating-point error rather than up-to-phase.

use num_complex::Complex64;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::Result;
use crate::laurent::evaluate_at;
use crate::path_model::PathRep;
use crate::plat::PlatDiagram;
use crate::skein::{jones_polynomial_with_budget, DEFAULT_ORACLE_BUDGET};

/// ⟨cap|ρ_k(b)|cap⟩. Always within the unit disc (up to rounding).
pub fn plat_amplitude(word: &BraidWord, k: u32) -> Result<Complex64> {
    PathRep::new(word.strands() / 2, k)?.amplitude(word)
}

/// Jones value at the order-k root via the path model:
/// `(-A)^{3w} · d^{n-1} · ⟨cap|ρ_k(b)|cap⟩`.
pub fn jones_via_path_model(word: &BraidWord, k: u32) -> Result<Complex64> {
    let rep = PathRep::new(word.strands() / 2, k)?;
    jones_via_path_model_with_rep(&rep, word)
}

/// As [`jones_via_path_model`], reusing a prepared representation (the useful
/// form inside sweeps).
pub fn jones_via_path_model_with_rep(rep: &PathRep, word: &BraidWord) -> Result<Complex64> {
    let amplitude = rep.amplitude(word)?;
    let root = rep.root();
    let n = word.strands() / 2;
    let w = PlatDiagram::trace(word).writhe();
    let neg_a = -root.a;
    let factor = neg_a.powi(3 * w as i32) * root.d.powi(n as i32 - 1);
    Ok(factor * amplitude)
}

/// One braid compared along both routes.
#[derive(Debug, Clone, Serialize)]
pub struct JonesComparison {
    pub braid: String,
    pub strands: usize,
    pub k: u32,
    pub via_oracle: Complex64,
    pub via_path_model: Complex64,
    pub abs_error: f64,
    /// abs_error relative to the larger magnitude; 0 when both vanish.
    pub rel_error: f64,
}

impl JonesComparison {
    pub const CSV_HEADER: &'static str =
        "braid,strands,k,oracle_re,oracle_im,path_re,path_im,abs_error,rel_error";

    pub fn csv_row(&self) -> String {
        format!(
            "{:?},{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.3e},{:.3e}",
            self.braid,
            self.strands,
            self.k,
            self.via_oracle.re,
            self.via_oracle.im,
            self.via_path_model.re,
            self.via_path_model.im,
            self.abs_error,
            self.rel_error
        )
    }
}

fn relative_error(a: Complex64, b: Complex64) -> f64 {
    let abs = (a - b).norm();
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        abs / scale
    }
}

/// Evaluates both routes on one braid.
pub fn cross_check(word: &BraidWord, k: u32) -> Result<JonesComparison> {
    let rep = PathRep::new(word.strands() / 2, k)?;
    cross_check_with(&rep, word, DEFAULT_ORACLE_BUDGET)
}

pub fn cross_check_with(rep: &PathRep, word: &BraidWord, budget: usize) -> Result<JonesComparison> {
    let oracle_poly = jones_polynomial_with_budget(word, budget)?;
    let k = rep.root().k;
    let via_oracle = evaluate_at(&oracle_poly, k)?;
    let via_path_model = jones_via_path_model_with_rep(rep, word)?;
    Ok(JonesComparison {
        braid: word.to_string(),
        strands: word.strands(),
        k,
        via_oracle,
        via_path_model,
        abs_error: (via_oracle - via_path_model).norm(),
        rel_error: relative_error(via_oracle, via_path_model),
    })
}

/// All words of exactly `length` letters on the signed generator alphabet of
/// B_{strands}, in counting order (used by exhaustive sweeps).
pub fn enumerate_words(strands: usize, length: usize) -> impl Iterator<Item = BraidWord> {
    let gens = 2 * (strands - 1);
    let total = (gens as u64).pow(length as u32);
    (0..total).map(move |mut code| {
        let letters = (0..length)
            .map(|_| {
                let pick = (code % gens as u64) as i32;
                code /= gens as u64;
                let i = pick / 2 + 1;
                if pick % 2 == 0 {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord::new(strands, letters).expect("enumerated letters are in range")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{parse_braid_word, random_braid_indexed};
    use crate::laurent::RootOfUnity as Root;

    fn word(text: &str, strands: usize) -> BraidWord {
        parse_braid_word(text, strands).unwrap()
    }

    #[test]
    fn empty_word_amplitude_and_value() {
        let c = cross_check(&word("", 2), 5).unwrap();
        assert!((c.via_path_model - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(c.rel_error < 1e-15);

        // Two-component unlink: both routes give d.
        for k in [5u32, 7, 9] {
            let c = cross_check(&word("", 4), k).unwrap();
            let d = Root::new(k).unwrap().d;
            assert!((c.via_oracle - Complex64::new(d, 0.0)).norm() < 1e-12);
            assert!((c.via_path_model - Complex64::new(d, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn kink_amplitude_is_the_rho_eigenvalue() {
        // The n=1 basis is one-dimensional; ρ(σ_1) acts by A + A^{-1}d = -A^{-3}.
        let root = Root::new(5).unwrap();
        let amp = plat_amplitude(&word("1", 2), 5).unwrap();
        let expect = -root.a.powi(-3);
        assert!((amp - expect).norm() < 1e-14);
        let v = jones_via_path_model(&word("1", 2), 5).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn amplitude_stays_in_unit_disc() {
        for index in 0..20 {
            let w = random_braid_indexed(6, 30, 3, index).unwrap();
            let amp = plat_amplitude(&w, 5).unwrap();
            assert!(amp.norm() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn trefoil_cross_checks_at_k7() {
        let c = cross_check(&word("2 2 2", 4), 7).unwrap();
        assert!(c.rel_error <= 1e-9, "rel error {}", c.rel_error);
    }

    #[test]
    fn exhaustive_b4_short_words() {
        // Length <= 4 here; the acceptance suite extends to length 6.
        for k in [5u32, 7] {
            let rep = PathRep::new(2, k).unwrap();
            for length in 0..=4usize {
                for w in enumerate_words(4, length) {
                    let c = cross_check_with(&rep, &w, 8).unwrap();
                    assert!(
                        c.rel_error <= 1e-9,
                        "word {}, k {}: rel error {}",
                        c.braid,
                        k,
                        c.rel_error
                    );
                }
            }
        }
    }

    #[test]
    fn random_b6_length_20_words() {
        let rep = PathRep::new(3, 5).unwrap();
        for index in 0..3u64 {
            let w = random_braid_indexed(6, 20, 64, index).unwrap();
            let c = cross_check_with(&rep, &w, 24).unwrap();
            assert!(c.rel_error <= 1e-8, "word {}: rel error {}", c.braid, c.rel_error);
        }
    }

    #[test]
    fn enumerate_words_counts() {
        assert_eq!(enumerate_words(4, 0).count(), 1);
        assert_eq!(enumerate_words(4, 3).count(), 216);
        let mut seen = std::collections::HashSet::new();
        for w in enumerate_words(4, 3) {
            assert!(seen.insert(w.to_string()), "duplicate word");
        }
    }

    #[test]
    fn csv_round_trips_fields() {
        let c = cross_check(&word("1 -2", 4), 5).unwrap();
        let row = c.csv_row();
        assert!(row.starts_with("\"1 -2\",4,5,"));
        assert_eq!(
            JonesComparison::CSV_HEADER.split(',').count(),
            row.split(',').count()
        );
    }
}
