//! The order-k path-model representation of the braid group B_{2n}: a basis
//! of capped Dyck paths (walks on a (k-1)-vertex path graph returning to the
//! first vertex), sparse Temperley-Lieb generators E_i, unitary braid-letter
//! images ρ(σ_i^±) = A·I + A^{∓1}·E_i, and state evolution.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::RootOfUnity;

/// Largest dimension for which dense operator products are allowed.
pub const DENSE_DIM_LIMIT: usize = 200;

/// Exact Catalan number C_n = binom(2n, n)/(n+1).
pub fn catalan(n: usize) -> BigInt {
    let mut c = BigInt::from(1);
    for i in 0..n {
        // C_{i+1} = C_i · 2(2i+1)/(i+2), exact at every step.
        c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    c
}

/// Enumerated basis of capped Dyck paths: length-2n step sequences of ±1
/// whose running heights stay in [0, k-2] and return to 0. Ordered
/// lexicographically with +1 before -1.
#[derive(Debug)]
pub struct PathBasis {
    n: usize,
    k: u32,
    paths: Vec<Vec<i8>>,
    /// Running heights per path, length 2n+1, starting and ending at 0.
    heights: Vec<Vec<u8>>,
    index: HashMap<Vec<i8>, usize>,
}

impl PathBasis {
    pub fn new(n: usize, k: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        if k < 3 {
            return Err(Error::InvalidParameter(format!(
                "root order k = {k} violates k >= 3"
            )));
        }
        let cap = (k - 2) as i64;
        let len = 2 * n;
        let mut paths = Vec::new();
        let mut steps: Vec<i8> = Vec::with_capacity(len);
        // Depth-first with +1 tried first yields lexicographic order.
        fn dfs(
            steps: &mut Vec<i8>,
            height: i64,
            len: usize,
            cap: i64,
            paths: &mut Vec<Vec<i8>>,
        ) {
            if steps.len() == len {
                if height == 0 {
                    paths.push(steps.clone());
                }
                return;
            }
            let remaining = (len - steps.len()) as i64;
            // Must still be able to return to height 0.
            if height > remaining {
                return;
            }
            for step in [1i8, -1] {
                let h = height + step as i64;
                if (0..=cap).contains(&h) {
                    steps.push(step);
                    dfs(steps, h, len, cap, paths);
                    steps.pop();
                }
            }
        }
        dfs(&mut steps, 0, len, cap, &mut paths);

        let heights = paths
            .iter()
            .map(|p| {
                let mut h = Vec::with_capacity(len + 1);
                let mut cur = 0i64;
                h.push(0u8);
                for &s in p {
                    cur += s as i64;
                    h.push(cur as u8);
                }
                h
            })
            .collect();
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(Self { n, k, paths, heights, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, i: usize) -> &[i8] {
        &self.paths[i]
    }

    /// Running heights of path `i` (length 2n+1; entries in [0, k-2]).
    pub fn heights(&self, i: usize) -> &[u8] {
        &self.heights[i]
    }

    pub fn index_of(&self, path: &[i8]) -> Option<usize> {
        self.index.get(path).copied()
    }

    /// Path rendered as U/D letters, e.g. "UUDD".
    pub fn path_string(&self, i: usize) -> String {
        self.paths[i]
            .iter()
            .map(|&s| if s == 1 { 'U' } else { 'D' })
            .collect()
    }

    /// Index of the alternating path UDUD…UD (the plat-cap state).
    pub fn cap_index(&self) -> usize {
        let cap: Vec<i8> = (0..2 * self.n).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
        self.index_of(&cap).expect("alternating path is always within the height cap")
    }
}

/// Dense complex operator on a path basis (row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct RepOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl RepOperator {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimensions differ");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for inner in 0..d {
                let a = self.get(r, inner);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    let v = out.get(r, c) + a * other.get(inner, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|&e| e * factor).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// max-norm of ρ†ρ − I.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().mul(self).sub(&Self::identity(self.dim)).max_abs()
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim);
        let d = self.dim;
        let mut y = vec![Complex64::new(0.0, 0.0); d];
        for r in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..d {
                acc += self.get(r, c) * x[c];
            }
            y[r] = acc;
        }
        y
    }
}

/// Sparse Temperley-Lieb generator E_i (real symmetric, ≤ 2 nonzeros per
/// column).
#[derive(Debug, Clone)]
pub struct TlGenerator {
    position: usize,
    dim: usize,
    cols: Vec<Vec<(u32, f64)>>,
}

impl TlGenerator {
    pub fn position(&self) -> usize {
        self.position
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// y = E·x.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.dim];
        for (col, entries) in self.cols.iter().enumerate() {
            let xv = x[col];
            if xv.norm_sqr() == 0.0 {
                continue;
            }
            for &(row, value) in entries {
                y[row as usize] += value * xv;
            }
        }
        y
    }

    pub fn to_dense(&self) -> RepOperator {
        let mut m = RepOperator::zeros(self.dim);
        for (col, entries) in self.cols.iter().enumerate() {
            for &(row, value) in entries {
                m.set(row as usize, col, Complex64::new(value, 0.0));
            }
        }
        m
    }

    pub fn max_nonzeros_per_column(&self) -> usize {
        self.cols.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// E_i on the given basis, acting on height positions (i-1, i, i+1).
///
/// A path is annihilated unless its heights satisfy h_{i-1} = h_{i+1} = z;
/// on the span of the valley (middle height z-1) and peak (z+1) variants,
/// with vertex label ℓ = z+1 and λ_m = sin(πm/k),
/// E_i = (1/λ_ℓ)·[[λ_{ℓ-1}, √(λ_{ℓ-1}λ_{ℓ+1})], [·, λ_{ℓ+1}]].
/// Variants outside the height window simply do not exist; their λ factor
/// (λ_0 or λ_k) is zero, so nothing is lost.
pub fn tl_generator(i: usize, basis: &PathBasis) -> Result<TlGenerator> {
    let n = basis.n();
    if i < 1 || i > 2 * n - 1 {
        return Err(Error::InvalidParameter(format!(
            "generator index {i} out of range 1..={}",
            2 * n - 1
        )));
    }
    let k = basis.k();
    let lambda: Vec<f64> =
        (0..=k).map(|m| (std::f64::consts::PI * m as f64 / k as f64).sin()).collect();
    let dim = basis.dim();
    let mut cols = vec![Vec::new(); dim];
    for j in 0..dim {
        let h = basis.heights(j);
        let (lo, mid, hi) = (h[i - 1], h[i], h[i + 1]);
        if lo != hi {
            continue;
        }
        let z = lo as u32;
        let l = z + 1; // vertex label of the flanking height
        let is_valley = mid < lo;
        let diag = if is_valley { lambda[(l - 1) as usize] } else { lambda[(l + 1) as usize] };
        cols[j].push((j as u32, diag / lambda[l as usize]));
        // The partner variant with the middle height flipped.
        let mut partner = basis.path(j).to_vec();
        partner[i - 1] = -partner[i - 1];
        partner[i] = -partner[i];
        if let Some(pj) = basis.index_of(&partner) {
            let off = (lambda[(l - 1) as usize] * lambda[(l + 1) as usize]).sqrt();
            cols[j].push((pj as u32, off / lambda[l as usize]));
        }
    }
    Ok(TlGenerator { position: i, dim, cols })
}

/// Dense image ρ(σ_i^{sign}) = A·I + A^{-1}·E_i (adjoint for sign -1).
pub fn braid_generator_rep(i: usize, sign: i32, basis: &PathBasis) -> Result<RepOperator> {
    let root = RootOfUnity::new(basis.k())?;
    let e = tl_generator(i, basis)?.to_dense();
    let (alpha, beta) = letter_coefficients(root.a, sign);
    Ok(RepOperator::identity(basis.dim()).scale(alpha).add(&e.scale(beta)))
}

/// (α, β) with ρ = α·I + β·E; A lies on the unit circle so the inverse image
/// is the adjoint: coefficients swap.
fn letter_coefficients(a: Complex64, sign: i32) -> (Complex64, Complex64) {
    let a_inv = 1.0 / a;
    if sign >= 0 {
        (a, a_inv)
    } else {
        (a_inv, a)
    }
}

/// State on a path basis.
#[derive(Debug, Clone)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis_vector(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩ (conjugate-linear in self).
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// The representation of B_{2n} at root order k, with all sparse generators
/// precomputed. Cheap to clone and share across threads.
#[derive(Debug, Clone)]
pub struct PathRep {
    basis: Arc<PathBasis>,
    root: RootOfUnity,
    generators: Arc<Vec<TlGenerator>>,
}

impl PathRep {
    pub fn new(n: usize, k: u32) -> Result<Self> {
        let basis = Arc::new(PathBasis::new(n, k)?);
        let root = RootOfUnity::new(k)?;
        let generators = (1..2 * n)
            .map(|i| tl_generator(i, &basis))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { basis, root, generators: Arc::new(generators) })
    }

    pub fn basis(&self) -> &PathBasis {
        &self.basis
    }

    /// Shared handle on the basis, for structures that outlive the rep.
    pub fn basis_handle(&self) -> Arc<PathBasis> {
        Arc::clone(&self.basis)
    }

    pub fn root(&self) -> RootOfUnity {
        self.root
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// The plat-cap state |α⟩: the alternating path, as a unit basis vector.
    pub fn cap_state(&self) -> StateVector {
        StateVector::basis_vector(self.dim(), self.basis.cap_index())
    }

    fn check_word(&self, word: &BraidWord) -> Result<()> {
        if word.strands() != 2 * self.basis.n() {
            return Err(Error::Mismatch(format!(
                "word on {} strands applied to a basis for {} strands",
                word.strands(),
                2 * self.basis.n()
            )));
        }
        Ok(())
    }

    /// Applies ρ(b) to a state by sequential sparse generator application,
    /// letters acting leftmost-first.
    pub fn apply_braid(&self, word: &BraidWord, state: &StateVector) -> Result<StateVector> {
        self.check_word(word)?;
        if state.dim() != self.dim() {
            return Err(Error::Mismatch(format!(
                "state dimension {} does not match basis dimension {}",
                state.dim(),
                self.dim()
            )));
        }
        let mut x = state.amplitudes.clone();
        for &g in word.letters() {
            let e = &self.generators[g.unsigned_abs() as usize - 1];
            let (alpha, beta) = letter_coefficients(self.root.a, g.signum());
            let ex = e.apply(&x);
            for (xv, exv) in x.iter_mut().zip(ex) {
                *xv = alpha * *xv + beta * exv;
            }
        }
        Ok(StateVector { amplitudes: x })
    }

    /// ⟨cap|ρ(b)|cap⟩.
    pub fn amplitude(&self, word: &BraidWord) -> Result<Complex64> {
        let out = self.apply_braid(word, &self.cap_state())?;
        Ok(out.amplitudes[self.basis.cap_index()])
    }

    /// Dense ρ(b) as an ordered product of generator images. Letters act
    /// leftmost-first, so rep_matrix(b1 ++ b2) = rep_matrix(b2)·rep_matrix(b1).
    pub fn rep_matrix(&self, word: &BraidWord) -> Result<RepOperator> {
        self.check_word(word)?;
        let dim = self.dim();
        if dim > DENSE_DIM_LIMIT {
            return Err(Error::DimensionGuard {
                what: "path-model dimension",
                value: dim,
                limit: DENSE_DIM_LIMIT,
            });
        }
        let mut m = RepOperator::identity(dim);
        for &g in word.letters() {
            let gen = braid_generator_rep(g.unsigned_abs() as usize, g.signum(), &self.basis)?;
            m = gen.mul(&m);
        }
        Ok(m)
    }
}
