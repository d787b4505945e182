//! First-order Reed–Muller codes.
//!
//! [`rm1`] follows the `(u, u), (u, u + 1)` recursion. [`rm1_fixed`] returns
//! the span of fixed generator matrices for `m = 4, 5`; every vector support
//! quoted in the registry tables refers to these coordinates.

use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{low_mask, BitVector};

pub const MAX_M: usize = 6;

/// Generator rows of the fixed `[16,5,8]` code.
pub const RM4_FIXED_ROWS: [&str; 5] = [
    "1001011001101001",
    "0101010101010101",
    "0011001100110011",
    "0000111100001111",
    "0000000011111111",
];

/// Generator rows of the fixed `[32,6,16]` code.
pub const RM5_FIXED_ROWS: [&str; 6] = [
    "10010110011010010110100110010110",
    "01010101010101010101010101010101",
    "00110011001100110011001100110011",
    "00001111000011110000111100001111",
    "00000000111111110000000011111111",
    "00000000000000001111111111111111",
];

/// How the fixed matrices relate to the recursive construction, as settled
/// by comparing all `2^(m+1)` codewords (see tests): `true` means the two
/// codes are identical as sets.
pub const FIXED_EQUALS_RECURSIVE: [(usize, bool); 2] = [(4, true), (5, true)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RmVariant {
    Recursive,
    Fixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RmSpec {
    pub m: usize,
    pub variant: RmVariant,
}

impl RmSpec {
    /// The reference copy used for containment checks: fixed for `m = 4, 5`,
    /// recursive otherwise.
    pub fn reference(m: usize) -> Self {
        let variant = if matches!(m, 4 | 5) {
            RmVariant::Fixed
        } else {
            RmVariant::Recursive
        };
        Self { m, variant }
    }

    pub fn build(&self) -> Result<LinearCode> {
        match self.variant {
            RmVariant::Recursive => rm1(self.m),
            RmVariant::Fixed => rm1_fixed(self.m),
        }
    }
}

/// `RM(1,m)` from the doubling recursion, `1 <= m <= 6`.
pub fn rm1(m: usize) -> Result<LinearCode> {
    if !(1..=MAX_M).contains(&m) {
        return Err(Error::InvalidParameters(format!(
            "RM(1,m) needs 1 <= m <= {MAX_M}, got {m}"
        )));
    }
    // RM(1,1) = F_2^2
    let mut rows: Vec<u64> = vec![0b01, 0b10];
    let mut half = 2usize;
    for _ in 2..=m {
        let mut next: Vec<u64> = rows.iter().map(|&g| g | (g << half)).collect();
        next.push(low_mask(half) << half);
        rows = next;
        half *= 2;
    }
    Ok(LinearCode::from_words(half, rows))
}

/// Span of the fixed generator matrix for `m = 4` or `m = 5`.
pub fn rm1_fixed(m: usize) -> Result<LinearCode> {
    let rows: &[&str] = match m {
        4 => &RM4_FIXED_ROWS,
        5 => &RM5_FIXED_ROWS,
        _ => {
            return Err(Error::InvalidParameters(format!(
                "fixed RM(1,m) generator only exists for m = 4, 5, got {m}"
            )))
        }
    };
    let rows = rows
        .iter()
        .map(|s| s.parse::<BitVector>())
        .collect::<Result<Vec<_>>>()?;
    LinearCode::from_rows(1 << m, &rows)
}

/// The copy of `RM(1,m)` that condition checks and table reconstructions
/// are made against.
pub fn reference_rm(m: usize) -> Result<LinearCode> {
    RmSpec::reference(m).build()
}
