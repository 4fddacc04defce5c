//! Reference computations that share no code path with the library's
//! constructions. Used by the property tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use complement_core::{build_mapping_by, MappingTable, Rational, ValueSet, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Lagrange interpolation: `sum_i y_i * w(x) / ((x - x_i) * w'(x_i))` with
/// `w(x) = prod_j (x - x_j)`. Returns coefficients lowest degree first,
/// trailing zeros trimmed.
pub fn lagrange_coefficients(points: &[(Word, Word)]) -> Vec<Rational> {
    let nodes: Vec<BigInt> = points.iter().map(|&(x, _)| BigInt::from(x)).collect();
    // w(x), integer coefficients.
    let mut w = vec![BigInt::one()];
    for r in &nodes {
        let mut next = vec![BigInt::zero(); w.len() + 1];
        for (i, c) in w.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        w = next;
    }
    // Sum y_i * q_i(x) / d_i over the common denominator lcm(d_i).
    let denoms: Vec<BigInt> = (0..nodes.len())
        .map(|i| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, xj)| &nodes[i] - xj)
                .product()
        })
        .collect();
    let common = denoms.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    let mut numer = vec![BigInt::zero(); points.len()];
    for (i, &(_, y)) in points.iter().enumerate() {
        // w(x) / (x - x_i) by synthetic division.
        let deg = w.len() - 1;
        let scale = BigInt::from(y) * (&common / &denoms[i]);
        let mut carry = BigInt::zero();
        for k in (0..deg).rev() {
            carry = &w[k + 1] + &carry * &nodes[i];
            numer[k] += &scale * &carry;
        }
    }
    let mut acc: Vec<Rational> = numer
        .into_iter()
        .map(|c| Rational::new(c, common.clone()))
        .collect();
    while acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    acc
}

/// Every mapping table reachable by some sequence of without-replacement
/// choices.
pub fn all_choice_tables(s: &ValueSet, b: u32) -> HashSet<MappingTable> {
    fn walk(s: &ValueSet, b: u32, prefix: &mut Vec<usize>, out: &mut HashSet<MappingTable>) {
        let depth = prefix.len();
        if depth == s.len() {
            let mut script = prefix.iter().copied();
            let table = build_mapping_by(s, b, |_| script.next().unwrap()).unwrap();
            out.insert(table);
            return;
        }
        for idx in 0..s.len() - depth {
            prefix.push(idx);
            walk(s, b, prefix, out);
            prefix.pop();
        }
    }
    let mut out = HashSet::new();
    walk(s, b, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// `{0..2^n} \ values` by direct filtering.
pub fn brute_complement(n: u32, values: &[Word]) -> Vec<Word> {
    let image: HashSet<Word> = values.iter().copied().collect();
    (0..1u64 << n).filter(|w| !image.contains(w)).collect()
}

/// Fourier coefficients of output bit `bit` by the O(4^b) inner product.
pub fn direct_fourier(table: &[Word], b: u32, bit: u32) -> BTreeMap<Word, Rational> {
    let size = 1u64 << b;
    let z = |x: Word| 2 * ((table[x as usize] >> (bit - 1)) & 1) as i64 - 1;
    let chi = |mask: Word, x: Word| -> i64 {
        (1..=b)
            .filter(|v| (mask >> (v - 1)) & 1 == 1)
            .map(|v| 2 * ((x >> (v - 1)) & 1) as i64 - 1)
            .product()
    };
    (0..size)
        .filter_map(|mask| {
            let sum: i64 = (0..size).map(|x| z(x) * chi(mask, x)).sum();
            (sum != 0).then(|| (mask, Rational::new(sum.into(), BigInt::from(size))))
        })
        .collect()
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Horner evaluation of rational coefficients at an integer.
pub fn eval_coefficients(coeffs: &[Rational], x: Word) -> Rational {
    let x = Rational::from_integer(BigInt::from(x));
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * &x + c)
}
