//! Packed binary vectors and row reduction over GF(2).
//!
//! A [`BitVector`] holds up to [`MAX_LEN`] coordinates in a single machine
//! word. Coordinate `i` (0-indexed) is bit `i` of the word. All external
//! surfaces (supports, text) use 1-indexed positions with position 1 written
//! first.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported vector length.
pub const MAX_LEN: usize = 64;

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: u32,
    bits: u64,
}

impl BitVector {
    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_bits(len, 0)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::from_bits(len, low_mask(len))
    }

    /// Wraps a packed word; bits above `len` must be clear.
    pub fn from_bits(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::InvalidLength(len));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::InvalidParameters(format!(
                "bits set beyond length {len}"
            )));
        }
        Ok(Self {
            len: len as u32,
            bits,
        })
    }

    #[inline]
    pub(crate) fn raw(len: usize, bits: u64) -> Self {
        debug_assert!((1..=MAX_LEN).contains(&len) && bits & !low_mask(len) == 0);
        Self {
            len: len as u32,
            bits,
        }
    }

    /// Builds a vector from 1-indexed support positions.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::InvalidLength(n));
        }
        let mut bits = 0u64;
        for &p in support {
            if p == 0 || p > n {
                return Err(Error::PositionOutOfRange { position: p, len: n });
            }
            let b = 1u64 << (p - 1);
            if bits & b != 0 {
                return Err(Error::DuplicatePosition(p));
            }
            bits |= b;
        }
        Ok(Self::raw(n, bits))
    }

    /// 1-indexed support, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        let mut w = self.bits;
        while w != 0 {
            out.push(w.trailing_zeros() as usize + 1);
            w &= w - 1;
        }
        out
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i`, 0-indexed.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len() && (self.bits >> i) & 1 == 1
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self::raw(self.len(), self.bits ^ other.bits))
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self::raw(self.len(), self.bits & other.bits))
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }

    pub fn complement(&self) -> Self {
        Self::raw(self.len(), !self.bits & low_mask(self.len()))
    }

    /// Moves coordinate `i` to position `perm[i]` (both 0-indexed).
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self::raw(self.len(), permute_word(self.bits, perm))
    }

    /// Sort key matching the order of the written strings (position 1 most
    /// significant, `0 < 1`).
    #[inline]
    pub(crate) fn lex_key(&self) -> u64 {
        lex_key(self.bits, self.len())
    }
}

#[inline]
pub(crate) fn lex_key(bits: u64, len: usize) -> u64 {
    bits.reverse_bits() >> (64 - len)
}

pub(crate) fn permute_word(mut w: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    while w != 0 {
        let i = w.trailing_zeros() as usize;
        out |= 1u64 << perm[i];
        w &= w - 1;
    }
    out
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl serde::Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u64;
        let mut len = 0usize;
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            if len >= MAX_LEN {
                return Err(Error::InvalidLength(len + 1));
            }
            match c {
                '0' => {}
                '1' => bits |= 1u64 << len,
                other => {
                    return Err(Error::parse(0, format!("unexpected character `{other}`")))
                }
            }
            len += 1;
        }
        Self::from_bits(len, bits)
    }
}

/// Reduced row-echelon form of `rows`, in place. Zero rows are dropped and
/// the remaining rows are ordered by pivot (lowest coordinate first).
pub(crate) fn rref_words(rows: &mut Vec<u64>) {
    rows.retain(|&r| r != 0);
    let mut rank = 0;
    for col in 0..64 {
        if rank == rows.len() {
            break;
        }
        let bit = 1u64 << col;
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r & bit != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
}

/// Reduces `w` against an RREF basis. The result is zero iff `w` lies in the
/// span, and is a canonical representative of `w + span` otherwise.
#[inline]
pub(crate) fn reduce(mut w: u64, basis: &[u64]) -> u64 {
    for &r in basis {
        let pivot = r & r.wrapping_neg();
        if w & pivot != 0 {
            w ^= r;
        }
    }
    w
}

/// Row-reduces `rows`, returning the reduced basis and its rank.
pub fn rref(rows: &[BitVector]) -> Result<(Vec<BitVector>, usize)> {
    let Some(first) = rows.first() else {
        return Ok((Vec::new(), 0));
    };
    for r in rows {
        first.check_len(r)?;
    }
    let len = first.len();
    let mut words: Vec<u64> = rows.iter().map(|r| r.bits).collect();
    rref_words(&mut words);
    let rank = words.len();
    Ok((
        words.into_iter().map(|w| BitVector::raw(len, w)).collect(),
        rank,
    ))
}
