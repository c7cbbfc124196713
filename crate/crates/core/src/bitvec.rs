//! Static rank/select primitives.
//!
//! `rank(b, i, s)` counts the occurrences of `b` among the first `i` bits.
//! `select(b, i, s)` is the 1-based position of the `i`-th occurrence of `b`,
//! `0` when `i == 0` and `s.len() + 1` when fewer than `i` occurrences exist.
//! `succ` and `pred` are compositions of the two and inherit their offsets.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::Error;
use crate::par;

/// An immutable sequence of bits indexed from 0.
///
/// The text form is a string of `0`/`1` characters with index 0 first;
/// whitespace anywhere in the input is ignored when parsing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSeq(Vec<bool>);

impl BitSeq {
    pub fn new() -> Self {
        BitSeq(Vec::new())
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<bool> {
        self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&x| x).count()
    }
}

impl Deref for BitSeq {
    type Target = [bool];

    fn deref(&self) -> &[bool] {
        &self.0
    }
}

impl AsRef<[bool]> for BitSeq {
    fn as_ref(&self) -> &[bool] {
        &self.0
    }
}

impl From<Vec<bool>> for BitSeq {
    fn from(bits: Vec<bool>) -> Self {
        BitSeq(bits)
    }
}

impl From<&[bool]> for BitSeq {
    fn from(bits: &[bool]) -> Self {
        BitSeq(bits.to_vec())
    }
}

impl From<BitSeq> for Vec<bool> {
    fn from(bits: BitSeq) -> Self {
        bits.0
    }
}

impl FromIterator<bool> for BitSeq {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitSeq(iter.into_iter().collect())
    }
}

impl FromStr for BitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut bits = Vec::with_capacity(s.len());
        for (offset, c) in s.char_indices() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                found => return Err(Error::InvalidBit { offset, found }),
            }
        }
        Ok(BitSeq(bits))
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.0)
    }
}

pub(crate) fn write_bits(f: &mut impl fmt::Write, bits: &[bool]) -> fmt::Result {
    for &b in bits {
        f.write_char(if b { '1' } else { '0' })?;
    }
    Ok(())
}

/// Renders a bit slice in the ASCII bit format.
pub fn bits_to_string(bits: &[bool]) -> String {
    let mut out = String::with_capacity(bits.len());
    write_bits(&mut out, bits).expect("writing to a String cannot fail");
    out
}

/// Number of occurrences of `b` in the first `i` bits of `s`.
///
/// `i` past the end saturates to `s.len()`.
pub fn rank(b: bool, i: usize, s: &[bool]) -> usize {
    s[..i.min(s.len())].iter().filter(|&&x| x == b).count()
}

/// 1-based position of the `i`-th occurrence of `b` in `s`.
pub fn select(b: bool, i: usize, s: &[bool]) -> usize {
    if i == 0 {
        return 0;
    }
    let mut remaining = i;
    for (k, &x) in s.iter().enumerate() {
        if x == b {
            remaining -= 1;
            if remaining == 0 {
                return k + 1;
            }
        }
    }
    s.len() + 1
}

/// 1-based position of the first `b` at or after 1-based position `y`.
///
/// Returns `s.len() + 1` when there is none. `y` must be at least 1.
pub fn succ(b: bool, s: &[bool], y: usize) -> usize {
    select(b, rank(b, y.saturating_sub(1), s) + 1, s)
}

/// 1-based position of the last `b` at or before 1-based position `y`,
/// or `0` when there is none.
pub fn pred(b: bool, s: &[bool], y: usize) -> usize {
    select(b, rank(b, y, s), s)
}

/// Cumulative per-block popcounts over an owned bit sequence.
///
/// `block_counts[k]` is the number of ones in the first `k * block_size`
/// bits, so a rank query costs one table lookup plus a scan of at most
/// `block_size - 1` bits.
#[derive(Debug, Clone)]
pub struct RankIndex {
    bits: BitSeq,
    block_size: usize,
    block_counts: Vec<usize>,
}

impl RankIndex {
    pub fn new(bits: BitSeq, block_size: usize) -> Result<Self, Error> {
        if block_size == 0 {
            return Err(Error::ZeroBlockSize);
        }
        let blocks: Vec<&[bool]> = bits.chunks(block_size).collect();
        let per_block = par::map(&blocks, |chunk| chunk.iter().filter(|&&x| x).count());
        let block_counts = prefix_sums(per_block);
        Ok(RankIndex { bits, block_size, block_counts })
    }

    /// Sequential construction, kept for benchmarking against [`RankIndex::new`].
    pub fn new_sequential(bits: BitSeq, block_size: usize) -> Result<Self, Error> {
        if block_size == 0 {
            return Err(Error::ZeroBlockSize);
        }
        let per_block = bits.chunks(block_size).map(|chunk| chunk.iter().filter(|&&x| x).count()).collect();
        let block_counts = prefix_sums(per_block);
        Ok(RankIndex { bits, block_size, block_counts })
    }

    pub fn bits(&self) -> &BitSeq {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block_counts(&self) -> &[usize] {
        &self.block_counts
    }

    pub fn count_ones(&self) -> usize {
        *self.block_counts.last().expect("at least one boundary")
    }

    pub fn rank1(&self, i: usize) -> usize {
        let i = i.min(self.bits.len());
        let block = i / self.block_size;
        let start = block * self.block_size;
        self.block_counts[block] + self.bits[start..i].iter().filter(|&&x| x).count()
    }

    pub fn rank(&self, b: bool, i: usize) -> usize {
        if b {
            self.rank1(i)
        } else {
            i.min(self.bits.len()) - self.rank1(i)
        }
    }

    /// Select through a binary search over block boundaries.
    pub fn select(&self, b: bool, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        let n = self.bits.len();
        let at_boundary = |k: usize| {
            let ones = self.block_counts[k];
            if b {
                ones
            } else {
                (k * self.block_size).min(n) - ones
            }
        };
        // Largest boundary k with fewer than i occurrences before it.
        let (mut lo, mut hi) = (0, self.block_counts.len() - 1);
        if at_boundary(hi) < i {
            return n + 1;
        }
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if at_boundary(mid) < i {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let start = lo * self.block_size;
        let mut remaining = i - at_boundary(lo);
        for (k, &x) in self.bits[start..].iter().enumerate() {
            if x == b {
                remaining -= 1;
                if remaining == 0 {
                    return start + k + 1;
                }
            }
        }
        n + 1
    }

    pub fn rank_batch(&self, b: bool, queries: &[usize]) -> Vec<usize> {
        par::map(queries, |&i| self.rank(b, i))
    }

    pub fn rank_batch_sequential(&self, b: bool, queries: &[usize]) -> Vec<usize> {
        queries.iter().map(|&i| self.rank(b, i)).collect()
    }

    pub fn select_batch(&self, b: bool, queries: &[usize]) -> Vec<usize> {
        par::map(queries, |&i| self.select(b, i))
    }
}

fn prefix_sums(per_block: Vec<usize>) -> Vec<usize> {
    let mut counts = Vec::with_capacity(per_block.len() + 1);
    counts.push(0);
    let mut acc = 0;
    for c in per_block {
        acc += c;
        counts.push(acc);
    }
    counts
}
