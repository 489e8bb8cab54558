//! Exact Laurent polynomials in the bracket variable `A`, and the evaluation
//! roots `A = i·exp(-iπ/2k)` used throughout the crate.
//!
//! Coefficients are arbitrary-precision integers so that state sums and the
//! writhe correction are exact; floating point only enters at evaluation time.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial `Σ c_e · A^e` with exact integer coefficients.
///
/// Invariant: the map never stores a zero coefficient, so equality of maps is
/// equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, BigInt::from(1))
    }

    /// `c · A^e` (the zero polynomial if `c = 0`).
    pub fn monomial(exponent: i64, coefficient: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coefficient.is_zero() {
            coeffs.insert(exponent, coefficient);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    /// The loop weight `d = -A^2 - A^{-2}`.
    pub fn loop_weight() -> Self {
        Self::from_pairs([(2, -1), (-2, -1)])
    }

    /// `(-A)^m` for any (possibly negative) integer `m`.
    pub fn neg_a_power(m: i64) -> Self {
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(m, BigInt::from(sign))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored terms (all nonzero by invariant).
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Iterates over `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// The coefficient of `A^e` (zero if absent).
    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, exponent: i64, coefficient: &BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_default();
        *entry += coefficient;
        if entry.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, &(-c.clone()));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.coeffs.insert(e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// Multiplies by the monomial `c · A^e` in place.
    pub fn mul_monomial(&self, exponent: i64, coefficient: &BigInt) -> Self {
        let mut out = Self::zero();
        if coefficient.is_zero() {
            return out;
        }
        for (e, c) in self.terms() {
            out.coeffs.insert(e + exponent, c * coefficient);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Evaluates at an arbitrary complex point.
    pub fn eval(&self, a: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            let coeff = c.to_f64().unwrap_or(f64::NAN);
            acc += coeff * a.powi(e as i32);
        }
        acc
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest exponent first, conventional reading order.
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = mag != BigInt::from(1) || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "A^{e}")?;
            }
        }
        Ok(())
    }
}

// JSON form: a map from exponent (string key) to coefficient. Coefficients are
// written as decimal strings so arbitrary-precision values survive the trip;
// plain JSON numbers are accepted on input.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPolynomial;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a map from exponent to integer coefficient")
            }

            fn visit_map<M: MapAccess<'de>>(
                self,
                mut access: M,
            ) -> std::result::Result<Self::Value, M::Error> {
                let mut poly = LaurentPolynomial::zero();
                while let Some((key, value)) =
                    access.next_entry::<String, serde_json::Value>()?
                {
                    let exponent: i64 = key
                        .parse()
                        .map_err(|_| serde::de::Error::custom(format!("bad exponent {key:?}")))?;
                    let coeff = match &value {
                        serde_json::Value::String(s) => s.parse::<BigInt>().ok(),
                        serde_json::Value::Number(n) => n.to_string().parse::<BigInt>().ok(),
                        _ => None,
                    }
                    .ok_or_else(|| {
                        serde::de::Error::custom(format!("bad coefficient {value:?}"))
                    })?;
                    poly.add_term(exponent, &coeff);
                }
                Ok(poly)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

/// The evaluation point shared by the exact evaluator and the path model:
/// `ω = exp(2πi/k)`, `A = i·exp(-iπ/2k)` (so `A^{-4} = ω`), and the loop
/// weight `d = -A^2 - A^{-2} = 2cos(π/k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootOfUnity {
    pub k: u32,
    pub omega: Complex64,
    pub a: Complex64,
    pub d: f64,
}

impl RootOfUnity {
    /// Requires `k >= 3` (below that the loop weight degenerates and the path
    /// model is empty).
    pub fn new(k: u32) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter(format!(
                "root order k = {k} violates k >= 3"
            )));
        }
        let kf = k as f64;
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / kf);
        let a = Complex64::i() * Complex64::from_polar(1.0, -std::f64::consts::PI / (2.0 * kf));
        let d = 2.0 * (std::f64::consts::PI / kf).cos();
        Ok(Self { k, omega, a, d })
    }

    /// `ω^{1/2}`, realized as `A^{-2}` so that skein-relation factors are
    /// phase-consistent with the bracket.
    pub fn omega_sqrt(&self) -> Complex64 {
        self.a.powi(-2)
    }

    /// True in the parameter range where the braid representations are dense
    /// (k = 5 or k >= 7); the lattice roots k ∈ {3, 4, 6} are classically easy.
    pub fn universal_regime(&self) -> bool {
        self.k == 5 || self.k >= 7
    }
}

/// Evaluates a polynomial at the order-`k` root (`k >= 3`).
pub fn evaluate_at(poly: &LaurentPolynomial, k: u32) -> Result<Complex64> {
    Ok(poly.eval(RootOfUnity::new(k)?.a))
}
