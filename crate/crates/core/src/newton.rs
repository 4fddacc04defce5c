//! Univariate interpolation over exact rationals.
//!
//! The polynomial is grown one node at a time: starting from the constant
//! through the first point, each step adds
//! `[y_{k+1} - p(x_{k+1})] / q(x_{k+1}) * q(x)` with
//! `q(x) = (x - x_1)(x - x_2)...(x - x_k)`, so the running polynomial keeps
//! interpolating every node seen so far.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ComplementError, Result};
use crate::model::{MappingTable, Word};
use crate::rational::{self, Rational};

/// Dense polynomial with exact rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePolynomial {
    coefficients: Vec<Rational>,
    // The same polynomial as integer numerators over one common denominator.
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl DensePolynomial {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        let denominator = coefficients
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numerators = coefficients
            .iter()
            .map(|c| c.numer() * (&denominator / c.denom()))
            .collect();
        Self {
            coefficients,
            numerators,
            denominator,
        }
    }

    /// `numerators / denominator`, reduced to lowest terms.
    fn from_scaled(mut numerators: Vec<BigInt>, denominator: BigInt) -> Self {
        while numerators.last().is_some_and(Zero::is_zero) {
            numerators.pop();
        }
        let coefficients = numerators
            .iter()
            .map(|n| Rational::new(n.clone(), denominator.clone()))
            .collect();
        Self::new(coefficients)
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl Default for DensePolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

/// Horner evaluation of integer coefficients.
fn eval_integer(coefficients: &[BigInt], x: &BigInt) -> BigInt {
    coefficients
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

impl fmt::Display for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(rational::format).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialJson {
    coefficients: Vec<String>,
}

impl Serialize for DensePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson {
            coefficients: self.coefficients.iter().map(rational::format).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolynomialJson::deserialize(d)?;
        let coefficients = raw
            .coefficients
            .iter()
            .map(|c| rational::parse(c))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        if coefficients.last().is_some_and(Zero::is_zero) {
            return Err(serde::de::Error::custom("trailing zero coefficient"));
        }
        Ok(Self::new(coefficients))
    }
}

/// Exact value of `p` at the integer `x`.
pub fn poly_eval(p: &DensePolynomial, x: Word) -> Rational {
    let numer = eval_integer(&p.numerators, &BigInt::from(x));
    Rational::new(numer, p.denominator.clone())
}

/// Interpolates `points` with the incremental correction recurrence.
///
/// The running polynomial is kept as integer numerators `P` over a common
/// denominator `D`, and `q` has integer coefficients throughout, so each step
/// is integer arithmetic followed by one content reduction.
pub fn newton_interpolate(points: &[(Word, Word)]) -> Result<DensePolynomial> {
    let mut seen = HashSet::with_capacity(points.len());
    if let Some(&(x, _)) = points.iter().find(|(x, _)| !seen.insert(*x)) {
        return Err(ComplementError::DuplicateNode(x));
    }
    let Some(&(x0, y0)) = points.first() else {
        return Ok(DensePolynomial::zero());
    };

    let mut numer = vec![BigInt::from(y0)];
    let mut denom = BigInt::one();
    // q(x) = product of (x - x_j) over the nodes already interpolated.
    let mut q = vec![-BigInt::from(x0), BigInt::one()];
    for &(x, y) in &points[1..] {
        let xb = BigInt::from(x);
        // Correction [y - p(x)] / q(x) = residual / (D * q(x)).
        let residual = BigInt::from(y) * &denom - eval_integer(&numer, &xb);
        if !residual.is_zero() {
            let q_at = eval_integer(&q, &xb);
            let g = residual.gcd(&q_at);
            let (mut s, mut t) = (residual / &g, q_at / &g);
            if t.is_negative() {
                s = -s;
                t = -t;
            }
            // P/D + (s / (D t)) q = (t P + s q) / (D t)
            numer.resize(q.len().max(numer.len()), BigInt::zero());
            for (n, qc) in numer.iter_mut().zip(&q) {
                *n = &*n * &t + &s * qc;
            }
            for n in numer.iter_mut().skip(q.len()) {
                *n *= &t;
            }
            denom *= t;
            let mut content = denom.clone();
            for n in &numer {
                if content.is_one() {
                    break;
                }
                content = content.gcd(n);
            }
            if !content.is_one() {
                for n in numer.iter_mut() {
                    *n /= &content;
                }
                denom /= &content;
            }
        }
        // q <- q * (x - x_new)
        q.push(BigInt::zero());
        for i in (0..q.len()).rev() {
            let lower = if i > 0 { q[i - 1].clone() } else { BigInt::zero() };
            q[i] = lower - &q[i] * &xb;
        }
    }
    Ok(DensePolynomial::from_scaled(numer, denom))
}

/// Polynomial through `(key, value)` for every entry of the table.
pub fn synthesize_newton(m: &MappingTable) -> Result<DensePolynomial> {
    let points: Vec<(Word, Word)> = m.entries().iter().map(|e| (e.key, e.value)).collect();
    newton_interpolate(&points)
}
