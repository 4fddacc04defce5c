//! Fourier expansion of output bits over `{-1,+1}`-encoded inputs.
//!
//! Input bit `v` and output bit `z` are both encoded as `2v - 1`. The
//! coefficient of the monomial over variable set `mask` is
//! `2^-b * sum_x Z(x) * chi_mask(x)`, where `chi_mask(x)` is the product of
//! the encoded input bits in `mask`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ComplementError, Result};
use crate::model::{MappingTable, Word};
use crate::rational::{self, Rational};

/// Multilinear polynomial in the `{-1,+1}` variables `sigma_1 ..= sigma_b`,
/// stored sparsely by variable mask (bit `i-1` of a mask selects
/// `sigma_i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPolynomial {
    var_count: u32,
    coefficients: BTreeMap<Word, Rational>,
    // Coefficients over their common denominator, for evaluation.
    numerators: Vec<(Word, BigInt)>,
    denominator: BigInt,
}

impl MultilinearPolynomial {
    pub fn new(var_count: u32, coefficients: BTreeMap<Word, Rational>) -> Result<Self> {
        if let Some(mask) = coefficients.keys().find(|&&m| m >> var_count != 0) {
            return Err(ComplementError::InvalidArgument(format!(
                "mask {mask} uses variables beyond sigma_{var_count}"
            )));
        }
        let coefficients: BTreeMap<Word, Rational> = coefficients
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let denominator = coefficients
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numerators = coefficients
            .iter()
            .map(|(&mask, c)| (mask, c.numer() * (&denominator / c.denom())))
            .collect();
        Ok(Self {
            var_count,
            coefficients,
            numerators,
            denominator,
        })
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    pub fn coefficients(&self) -> &BTreeMap<Word, Rational> {
        &self.coefficients
    }

    pub fn coefficient(&self, mask: Word) -> Rational {
        self.coefficients.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.coefficients
            .keys()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }
}

/// `chi_mask(x)` under the `2v - 1` encoding: `-1` to the number of zero
/// bits of `x` inside `mask`.
#[inline]
pub fn character(mask: Word, x: Word) -> i64 {
    if (mask & !x).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    mask: Word,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyJson {
    b: u32,
    terms: Vec<TermJson>,
}

impl Serialize for MultilinearPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            b: self.var_count,
            terms: self
                .coefficients
                .iter()
                .map(|(&mask, c)| TermJson {
                    mask,
                    coeff: rational::format(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultilinearPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolyJson::deserialize(d)?;
        let mut coefficients = BTreeMap::new();
        for t in raw.terms {
            let c = rational::parse(&t.coeff).map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom(format!("zero coefficient for mask {}", t.mask)));
            }
            if coefficients.insert(t.mask, c).is_some() {
                return Err(D::Error::custom(format!("mask {} listed twice", t.mask)));
            }
        }
        MultilinearPolynomial::new(raw.b, coefficients).map_err(D::Error::custom)
    }
}

/// In-place Walsh–Hadamard transform: `out[m] = sum_x v[x] * (-1)^|m & x|`.
fn walsh_hadamard(values: &mut [i64]) {
    let mut h = 1;
    while h < values.len() {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// `Z(x) = 2 * bit - 1` for output bit `bit_index` (1 = LSB) of every key.
fn encoded_column(m: &MappingTable, bit_index: u32) -> Vec<i64> {
    m.entries()
        .iter()
        .map(|e| 2 * ((e.value >> (bit_index - 1)) & 1) as i64 - 1)
        .collect()
}

/// Fourier expansion of output bit `bit_index` (1 = LSB) of the table.
pub fn fourier_expand_bit(m: &MappingTable, bit_index: u32) -> Result<MultilinearPolynomial> {
    if bit_index == 0 || bit_index > Word::BITS {
        return Err(ComplementError::InvalidArgument(format!(
            "bit index {bit_index} out of range"
        )));
    }
    let b = m.key_bits();
    let mut spectrum = encoded_column(m, bit_index);
    walsh_hadamard(&mut spectrum);
    let scale = BigInt::one() << b;
    let coefficients = spectrum
        .into_iter()
        .enumerate()
        .filter(|(_, s)| *s != 0)
        .map(|(mask, s)| {
            // The {0,1} transform differs from the 2v-1 encoding by
            // (-1)^|mask|.
            let signed = if mask.count_ones() % 2 == 0 { s } else { -s };
            (mask as Word, Rational::new(BigInt::from(signed), scale.clone()))
        })
        .collect();
    MultilinearPolynomial::new(b, coefficients)
}

/// Value of `p` at the `b`-bit input `x`.
pub fn fourier_eval(p: &MultilinearPolynomial, x: Word) -> Result<Rational> {
    if p.var_count < Word::BITS && x >> p.var_count != 0 {
        return Err(ComplementError::OutOfRange {
            key: x,
            bits: p.var_count,
        });
    }
    let mut total = BigInt::zero();
    for (mask, c) in &p.numerators {
        if character(*mask, x) > 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    Ok(Rational::new(total, p.denominator.clone()))
}

/// `g(x) = sum_i 2^(i-1) * (p_i(x) + 1) / 2` over per-bit expansions,
/// least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierComplement {
    bits: Vec<MultilinearPolynomial>,
}

impl FourierComplement {
    pub fn bits(&self) -> &[MultilinearPolynomial] {
        &self.bits
    }

    pub fn eval(&self, x: Word) -> Result<Rational> {
        let two = rational::from_i64(2);
        let mut total = Rational::zero();
        let mut weight = Rational::one();
        for p in &self.bits {
            total += &weight * (fourier_eval(p, x)? + Rational::one()) / &two;
            weight *= &two;
        }
        Ok(total)
    }

    /// `eval` as a word; `None` if the value is not a non-negative integer.
    pub fn eval_word(&self, x: Word) -> Result<Option<Word>> {
        self.eval(x).map(|r| rational::to_word(&r))
    }
}

pub fn combine_fourier_bits(bit_polys: Vec<MultilinearPolynomial>) -> Result<FourierComplement> {
    if let Some(w) = bit_polys.windows(2).find(|w| w[0].var_count != w[1].var_count) {
        return Err(ComplementError::InvalidArgument(format!(
            "bit polynomials disagree on input width ({} vs {})",
            w[0].var_count, w[1].var_count
        )));
    }
    Ok(FourierComplement { bits: bit_polys })
}

/// Expands every output bit of the table.
pub fn synthesize_fourier(m: &MappingTable, output_bits: u32) -> Result<FourierComplement> {
    let bits = (1..=output_bits)
        .map(|i| fourier_expand_bit(m, i))
        .collect::<Result<Vec<_>>>()?;
    combine_fourier_bits(bits)
}
