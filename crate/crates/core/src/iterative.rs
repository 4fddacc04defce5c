//! On-demand evaluation of the ascending complement, and its unbounded
//! analogue for languages with a decidable membership test.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ComplementError, Result};
use crate::model::{
    choose_domain_bits, compute_image, pow2, FiniteFunction, ValueSet, Word,
};

/// Search ceiling used when the caller does not pick one.
pub const DEFAULT_STREAM_BOUND: u64 = 1_000_000;

/// Entries `<x : g(x)>` discovered while scanning the universe.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MemoTable {
    entries: BTreeMap<Word, Word>,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: Word) -> Option<Word> {
        self.entries.get(&key).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<Word, Word> {
        &self.entries
    }

    fn record(&mut self, key: Word, value: Word) {
        let prev = self.entries.insert(key, value);
        debug_assert!(prev.is_none_or(|p| p == value), "memo entry {key} changed");
    }
}

/// Lazily evaluated complement of one function at a fixed key width.
#[derive(Debug, Clone)]
pub struct LazyComplement {
    image: ValueSet,
    complement_size: u64,
    key_bits: u32,
    memo: MemoTable,
}

impl LazyComplement {
    /// Uses the least key width that can hold the whole complement set.
    pub fn new(f: &FiniteFunction) -> Result<Self> {
        let image = compute_image(f);
        let complement_size = pow2(f.output_bits()) - image.len() as u64;
        let key_bits = choose_domain_bits(complement_size, f.output_bits())?;
        Ok(Self {
            image,
            complement_size,
            key_bits,
            memo: MemoTable::new(),
        })
    }

    /// Uses an explicit key width `b`, which must satisfy `2^b >= |S|`.
    pub fn with_key_bits(f: &FiniteFunction, key_bits: u32) -> Result<Self> {
        let mut lazy = Self::new(f)?;
        if key_bits > crate::model::MAX_BITS || pow2(key_bits) < lazy.complement_size {
            return Err(ComplementError::DomainTooSmall {
                bits: key_bits,
                capacity: 1u64.checked_shl(key_bits).unwrap_or(u64::MAX),
                needed: lazy.complement_size,
            });
        }
        lazy.key_bits = key_bits;
        Ok(lazy)
    }

    pub fn key_bits(&self) -> u32 {
        self.key_bits
    }

    pub fn memo(&self) -> &MemoTable {
        &self.memo
    }

    /// `g(x)`: the `(x+1)`-th smallest word outside the image, or `g(0)` once
    /// the universe is exhausted.
    pub fn get(&mut self, x: Word) -> Result<Word> {
        if x >= pow2(self.key_bits) {
            return Err(ComplementError::OutOfRange {
                key: x,
                bits: self.key_bits,
            });
        }
        if let Some(v) = self.memo.get(x) {
            return Ok(v);
        }

        let last_word = pow2(self.image.width()) - 1;
        let last_key = pow2(self.key_bits) - 1;
        let mut u: Word = 0;
        let mut z: i64 = -1;
        while u <= last_word && z <= last_key as i64 {
            if self.image.contains(u) {
                u += 1;
                continue;
            }
            z += 1;
            if z as Word == x {
                self.memo.record(x, u);
                return Ok(u);
            }
            self.memo.record(z as Word, u);
            u += 1;
        }

        // Every word has been placed in L(f) or L(g): surplus key.
        debug_assert!(
            x >= self.complement_size,
            "surplus branch reached with x = {x} < |S| = {}",
            self.complement_size
        );
        let head = self.memo.get(0).expect("|S| >= 1, so key 0 was recorded");
        self.memo.record(x, head);
        Ok(head)
    }
}

/// One-shot `g(x)` at the least key width, recording into `memo`.
pub fn get_g_of_x(x: Word, f: &FiniteFunction, memo: &mut MemoTable) -> Result<Word> {
    let mut lazy = LazyComplement::new(f)?;
    lazy.memo = std::mem::take(memo);
    let result = lazy.get(x);
    *memo = lazy.memo;
    result
}

/// Total membership test for a language of non-negative integers.
pub trait MembershipDecider {
    fn contains(&self, y: u64) -> bool;

    /// Smallest integer the decider ranges over.
    fn domain_start(&self) -> u64 {
        0
    }

    /// Largest integer the decider is guaranteed to answer for.
    fn bound(&self) -> Option<u64> {
        None
    }
}

impl<D: MembershipDecider + ?Sized> MembershipDecider for &D {
    fn contains(&self, y: u64) -> bool {
        (**self).contains(y)
    }

    fn domain_start(&self) -> u64 {
        (**self).domain_start()
    }

    fn bound(&self) -> Option<u64> {
        (**self).bound()
    }
}

/// Image of a finite function; answers for the whole `n`-bit universe.
#[derive(Debug, Clone)]
pub struct TableDecider {
    image: ValueSet,
}

impl TableDecider {
    pub fn new(f: &FiniteFunction) -> Self {
        Self {
            image: compute_image(f),
        }
    }
}

impl MembershipDecider for TableDecider {
    fn contains(&self, y: u64) -> bool {
        self.image.contains(y)
    }

    fn bound(&self) -> Option<u64> {
        Some(pow2(self.image.width()) - 1)
    }
}

/// `{c*x + d : x >= 0}`, decided by binary search for `x` in `[0, y]`
/// (`c*x + d` is monotone in `x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineDecider {
    pub slope: u64,
    pub offset: u64,
}

impl AffineDecider {
    /// The even numbers, `f(x) = 2x`.
    pub fn even() -> Self {
        Self {
            slope: 2,
            offset: 0,
        }
    }
}

impl MembershipDecider for AffineDecider {
    fn contains(&self, y: u64) -> bool {
        if self.slope == 0 {
            return y == self.offset;
        }
        let at = |x: u64| {
            self.slope
                .checked_mul(x)
                .and_then(|v| v.checked_add(self.offset))
        };
        let (mut lo, mut hi) = (0u64, y);
        while lo <= hi {
            let mid = lo + (hi - lo) / 2;
            match at(mid).map(|v| v.cmp(&y)) {
                Some(std::cmp::Ordering::Equal) => return true,
                Some(std::cmp::Ordering::Less) => lo = mid + 1,
                _ if mid == 0 => return false,
                _ => hi = mid - 1,
            }
        }
        false
    }
}

/// Integers `y >= 2` with a factorization `u * v = y`, `u, v >= 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NontrivialProductDecider;

impl MembershipDecider for NontrivialProductDecider {
    fn contains(&self, y: u64) -> bool {
        (2..).take_while(|&u| u * u <= y).any(|u| y.is_multiple_of(u))
    }

    fn domain_start(&self) -> u64 {
        2
    }
}

/// Wraps a closure as a decider.
pub struct FnDecider<F> {
    pub predicate: F,
    pub start: u64,
    pub bound: Option<u64>,
}

impl<F: Fn(u64) -> bool> MembershipDecider for FnDecider<F> {
    fn contains(&self, y: u64) -> bool {
        (self.predicate)(y)
    }

    fn domain_start(&self) -> u64 {
        self.start
    }

    fn bound(&self) -> Option<u64> {
        self.bound
    }
}

impl<F> fmt::Debug for FnDecider<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnDecider")
            .field("start", &self.start)
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}

/// The `count` smallest integers in `[domain_start, bound]` rejected by the
/// decider. The effective bound is the tighter of `bound` and the decider's
/// own.
pub fn stream_complement(
    decider: &dyn MembershipDecider,
    count: usize,
    bound: u64,
) -> Result<Vec<u64>> {
    let ceiling = decider.bound().map_or(bound, |b| b.min(bound));
    let mut out = Vec::with_capacity(count.min(1 << 16));
    let mut y = decider.domain_start();
    while out.len() < count {
        if y > ceiling {
            return Err(ComplementError::BoundExhausted {
                produced: out.len(),
                bound: ceiling,
                values: out,
            });
        }
        if !decider.contains(y) {
            out.push(y);
        }
        y += 1;
    }
    Ok(out)
}
