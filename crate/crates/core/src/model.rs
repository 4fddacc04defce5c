//! Functions, value sets and mapping tables over fixed-width binary words.
//!
//! A [`FiniteFunction`] maps every `a`-bit key to an `n`-bit word. Its image
//! `T` and the unmapped remainder `S = U \ T` are [`ValueSet`]s, and a
//! [`MappingTable`] assigns the members of `S` to the `b`-bit keys of the
//! complement, padding any leftover keys with the value at key 0.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ComplementError, Result};

/// Widest word or domain (in bits) accepted anywhere in the crate. Every
/// construction enumerates its universe exhaustively.
pub const MAX_BITS: u32 = 24;

/// An unsigned machine word holding an element of some `{0,1}^k`.
pub type Word = u64;

fn check_width(bits: u32, what: &str) -> Result<()> {
    if bits == 0 || bits > MAX_BITS {
        return Err(ComplementError::InvalidArgument(format!(
            "{what} must be in 1..={MAX_BITS}, got {bits}"
        )));
    }
    Ok(())
}

/// `2^bits` as a count.
#[inline]
pub fn pow2(bits: u32) -> u64 {
    1u64 << bits
}

/// A total function `{0,1}^a -> {0,1}^n`, stored as its full value table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFunction")]
pub struct FiniteFunction {
    #[serde(rename = "n")]
    output_bits: u32,
    #[serde(rename = "a")]
    input_bits: u32,
    values: Vec<Word>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunction {
    n: u32,
    a: u32,
    values: Vec<Word>,
}

impl TryFrom<RawFunction> for FiniteFunction {
    type Error = ComplementError;

    fn try_from(raw: RawFunction) -> Result<Self> {
        FiniteFunction::new(raw.a, raw.n, raw.values)
    }
}

impl FiniteFunction {
    pub fn new(input_bits: u32, output_bits: u32, values: Vec<Word>) -> Result<Self> {
        check_width(input_bits, "input width a")
            .and_then(|_| check_width(output_bits, "output width n"))
            .map_err(|e| ComplementError::InvalidFunction(e.to_string()))?;
        let expected = pow2(input_bits);
        if values.len() as u64 != expected {
            return Err(ComplementError::InvalidFunction(format!(
                "a {input_bits}-bit domain needs {expected} values, got {}",
                values.len()
            )));
        }
        let limit = pow2(output_bits);
        if let Some((x, v)) = values.iter().enumerate().find(|(_, &v)| v >= limit) {
            return Err(ComplementError::InvalidFunction(format!(
                "f({x}) = {v} does not fit in {output_bits} bits"
            )));
        }
        Ok(Self {
            output_bits,
            input_bits,
            values,
        })
    }

    /// Builds the table by evaluating `rule` on every key.
    pub fn from_fn(input_bits: u32, output_bits: u32, rule: impl Fn(Word) -> Word) -> Result<Self> {
        check_width(input_bits, "input width a")
            .map_err(|e| ComplementError::InvalidFunction(e.to_string()))?;
        let values = (0..pow2(input_bits)).map(rule).collect();
        Self::new(input_bits, output_bits, values)
    }

    pub fn input_bits(&self) -> u32 {
        self.input_bits
    }

    pub fn output_bits(&self) -> u32 {
        self.output_bits
    }

    pub fn values(&self) -> &[Word] {
        &self.values
    }

    pub fn eval(&self, x: Word) -> Option<Word> {
        self.values.get(usize::try_from(x).ok()?).copied()
    }
}

/// A strictly ascending set of `width`-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValueSet {
    width: u32,
    members: Vec<Word>,
}

impl ValueSet {
    pub fn new(width: u32, members: Vec<Word>) -> Result<Self> {
        check_width(width, "set width")
            .map_err(|e| ComplementError::InvalidValueSet(e.to_string()))?;
        let limit = pow2(width);
        if let Some(w) = members.windows(2).find(|w| w[0] >= w[1]) {
            return Err(ComplementError::InvalidValueSet(format!(
                "members not strictly ascending at {} then {}",
                w[0], w[1]
            )));
        }
        if let Some(&last) = members.last() {
            if last >= limit {
                return Err(ComplementError::InvalidValueSet(format!(
                    "{last} does not fit in {width} bits"
                )));
            }
        }
        Ok(Self { width, members })
    }

    /// Sorts and deduplicates arbitrary words.
    pub fn from_unsorted(width: u32, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let set: BTreeSet<Word> = words.into_iter().collect();
        Self::new(width, set.into_iter().collect())
    }

    /// The whole universe `{0, ..., 2^width - 1}`.
    pub fn universe(width: u32) -> Result<Self> {
        check_width(width, "universe width")
            .map_err(|e| ComplementError::InvalidValueSet(e.to_string()))?;
        Ok(Self {
            width,
            members: (0..pow2(width)).collect(),
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: Word) -> bool {
        self.members.binary_search(&w).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        self.members.iter().copied()
    }
}

/// Whether a mapping entry draws a new element of `S` or repeats the value
/// at key 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Fresh,
    Surplus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MappingEntry {
    pub key: Word,
    pub value: Word,
    pub kind: EntryKind,
}

/// The complement's lookup table over keys `0 ..= 2^b - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMapping")]
pub struct MappingTable {
    #[serde(rename = "b")]
    key_bits: u32,
    entries: Vec<MappingEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMapping {
    b: u32,
    entries: Vec<MappingEntry>,
}

impl TryFrom<RawMapping> for MappingTable {
    type Error = ComplementError;

    fn try_from(raw: RawMapping) -> Result<Self> {
        MappingTable::from_entries(raw.b, raw.entries)
    }
}

impl MappingTable {
    /// Validates the structural invariants: keys in order, surplus entries
    /// repeat key 0, and fresh values are pairwise distinct.
    pub fn from_entries(key_bits: u32, entries: Vec<MappingEntry>) -> Result<Self> {
        check_width(key_bits, "key width b")
            .map_err(|e| ComplementError::InvalidMapping(e.to_string()))?;
        let size = pow2(key_bits);
        if entries.len() as u64 != size {
            return Err(ComplementError::InvalidMapping(format!(
                "{key_bits}-bit table needs {size} entries, got {}",
                entries.len()
            )));
        }
        if let Some((i, e)) = entries.iter().enumerate().find(|(i, e)| e.key != *i as u64) {
            return Err(ComplementError::InvalidMapping(format!(
                "entry {i} has key {}",
                e.key
            )));
        }
        if entries[0].kind != EntryKind::Fresh {
            return Err(ComplementError::InvalidMapping(
                "key 0 must hold a fresh value".into(),
            ));
        }
        let head = entries[0].value;
        let mut seen = BTreeSet::new();
        for e in &entries {
            match e.kind {
                EntryKind::Fresh if !seen.insert(e.value) => {
                    return Err(ComplementError::InvalidMapping(format!(
                        "fresh value {} appears twice",
                        e.value
                    )));
                }
                EntryKind::Surplus if e.value != head => {
                    return Err(ComplementError::InvalidMapping(format!(
                        "surplus key {} maps to {} instead of g(0) = {head}",
                        e.key, e.value
                    )));
                }
                _ => {}
            }
        }
        Ok(Self { key_bits, entries })
    }

    /// Builds a table from a plain value vector, tagging a repeat of `g(0)`
    /// as surplus. Useful for checking hand-written or tampered tables.
    pub fn from_values(key_bits: u32, values: &[Word]) -> Result<Self> {
        let head = values.first().copied();
        let mut seen = BTreeSet::new();
        let entries = values
            .iter()
            .enumerate()
            .map(|(i, &value)| {
                let kind = if i > 0 && Some(value) == head || !seen.insert(value) {
                    EntryKind::Surplus
                } else {
                    EntryKind::Fresh
                };
                MappingEntry {
                    key: i as Word,
                    value,
                    kind,
                }
            })
            .collect();
        Self::from_entries(key_bits, entries)
    }

    pub fn key_bits(&self) -> u32 {
        self.key_bits
    }

    pub fn entries(&self) -> &[MappingEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: Word) -> Option<Word> {
        self.entries.get(usize::try_from(key).ok()?).map(|e| e.value)
    }

    pub fn values(&self) -> Vec<Word> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Values of the fresh entries, in key order.
    pub fn fresh_values(&self) -> impl Iterator<Item = Word> + '_ {
        self.entries
            .iter()
            .filter(|e| e.kind == EntryKind::Fresh)
            .map(|e| e.value)
    }

    /// Smallest width that holds every value in the table.
    pub fn value_bits(&self) -> u32 {
        let max = self.entries.iter().map(|e| e.value).max().unwrap_or(0);
        (Word::BITS - max.leading_zeros()).max(1)
    }
}

/// How `build_mapping` orders the members of `S` over the keys.
///
/// `SeededRandom` draws each key's value uniformly from the members not yet
/// used, with a ChaCha8 stream seeded by `seed_from_u64(seed)`; step `k`
/// takes index `random_range(0..remaining)` into the ascending list of
/// remaining members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OrderingPolicy {
    #[default]
    Ascending,
    SeededRandom { seed: u64 },
}

/// `T`: the sorted, deduplicated image of `f`.
pub fn compute_image(f: &FiniteFunction) -> ValueSet {
    ValueSet::from_unsorted(f.output_bits, f.values.iter().copied())
        .expect("function values fit their declared width")
}

/// `S = U \ T` for the `universe_bits`-bit universe.
pub fn complement_set(universe_bits: u32, t: &ValueSet) -> Result<ValueSet> {
    check_width(universe_bits, "universe width")?;
    if t.width != universe_bits {
        return Err(ComplementError::InvalidValueSet(format!(
            "image has width {} but the universe has {universe_bits}",
            t.width
        )));
    }
    let mut taken = t.members.iter().copied().peekable();
    let mut members = Vec::with_capacity((pow2(universe_bits) as usize).saturating_sub(t.len()));
    for w in 0..pow2(universe_bits) {
        if taken.peek() == Some(&w) {
            taken.next();
        } else {
            members.push(w);
        }
    }
    Ok(ValueSet {
        width: universe_bits,
        members,
    })
}

/// Least `b >= 1` with `2^b >= s_size`.
pub fn choose_domain_bits(s_size: u64, universe_bits: u32) -> Result<u32> {
    check_width(universe_bits, "universe width")?;
    if s_size == 0 {
        return Err(ComplementError::EmptyComplement);
    }
    let bits = (Word::BITS - (s_size - 1).leading_zeros()).max(1);
    Ok(bits)
}

/// The necessary partition condition `2^a + 2^b >= 2^n`.
pub fn check_existence_inequality(a: u32, b: u32, n: u32) -> bool {
    let p = |k: u32| 1u128.checked_shl(k).unwrap_or(u128::MAX);
    p(a).saturating_add(p(b)) >= p(n)
}

/// Assigns `S` to the keys of a `b`-bit domain according to `policy`.
pub fn build_mapping(s: &ValueSet, b: u32, policy: OrderingPolicy) -> Result<MappingTable> {
    match policy {
        OrderingPolicy::Ascending => build_mapping_by(s, b, |_| 0),
        OrderingPolicy::SeededRandom { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            build_mapping_by(s, b, |remaining| rng.random_range(0..remaining))
        }
    }
}

/// Drives the mapping loop with an explicit chooser.
///
/// At every fresh step `pick(remaining)` returns an index into the ascending
/// list of members still unassigned; that member is removed and mapped to the
/// current key. Once `S` is exhausted, the remaining keys repeat key 0.
pub fn build_mapping_by(
    s: &ValueSet,
    b: u32,
    mut pick: impl FnMut(usize) -> usize,
) -> Result<MappingTable> {
    check_width(b, "key width b")?;
    if s.is_empty() {
        return Err(ComplementError::EmptyComplement);
    }
    let size = pow2(b);
    if (s.len() as u64) > size {
        return Err(ComplementError::DomainTooSmall {
            bits: b,
            capacity: size,
            needed: s.len() as u64,
        });
    }

    let mut remaining = s.members.clone();
    let mut entries = Vec::with_capacity(size as usize);
    for key in 0..size {
        let entry = if remaining.is_empty() {
            MappingEntry {
                key,
                value: entries.first().map_or(0, |e: &MappingEntry| e.value),
                kind: EntryKind::Surplus,
            }
        } else {
            let idx = pick(remaining.len());
            assert!(idx < remaining.len(), "chooser returned {idx} of {}", remaining.len());
            MappingEntry {
                key,
                value: remaining.remove(idx),
                kind: EntryKind::Fresh,
            }
        };
        entries.push(entry);
    }
    Ok(MappingTable {
        key_bits: b,
        entries,
    })
}
