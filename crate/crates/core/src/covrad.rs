//! Covering radius by breadth-first search over syndromes, and the
//! maximality test built on it.
//!
//! Syndromes are the residues of vectors modulo the code's RREF basis,
//! compressed to the `n - k` non-pivot coordinates. Flipping coordinate `i`
//! moves a syndrome by the fixed column syndrome of `e_i`, so the BFS depth
//! of a syndrome is the minimum weight of its coset.

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{all_in_coset, LinearCode};
use crate::error::{Error, Result};
use crate::fourweight::FourWeightCertificate;
use crate::gf2::{self, BitVector};

/// Largest redundancy `n - k` for which the syndrome table is built.
pub const MAX_REDUNDANCY: usize = 26;

#[derive(Clone, Debug)]
pub struct CosetLeaderProfile {
    n: usize,
    k: usize,
    basis: Vec<u64>,
    free_cols: Vec<usize>,
    /// Minimum coset weight, indexed by syndrome.
    leader_weight: Vec<u8>,
}

impl CosetLeaderProfile {
    pub fn compute(code: &LinearCode) -> Result<Self> {
        let n = code.n();
        let r = n - code.k();
        if r > MAX_REDUNDANCY {
            return Err(Error::Capacity {
                what: "redundancy n - k for the syndrome table",
                requested: r,
                limit: MAX_REDUNDANCY,
            });
        }
        let pivot_mask = code.pivots().iter().fold(0u64, |m, &p| m | 1u64 << p);
        let free_cols: Vec<usize> = (0..n).filter(|&j| pivot_mask >> j & 1 == 0).collect();
        let mut profile = Self {
            n,
            k: code.k(),
            basis: code.basis_words().to_vec(),
            free_cols,
            leader_weight: Vec::new(),
        };
        let mut cols: Vec<usize> = (0..n).map(|i| profile.syndrome_of_word(1u64 << i)).collect();
        cols.sort_unstable();
        cols.dedup();
        cols.retain(|&c| c != 0);

        let dist = if r >= 6 {
            bfs_bitset(r, &cols)
        } else {
            bfs_bytes(r, &cols)
        };
        profile.leader_weight = dist;
        Ok(profile)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn leader_weight(&self) -> &[u8] {
        &self.leader_weight
    }

    pub fn covering_radius(&self) -> usize {
        self.leader_weight.iter().copied().max().unwrap_or(0) as usize
    }

    /// Number of cosets per leader weight.
    pub fn histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.covering_radius() + 1];
        for &w in &self.leader_weight {
            h[w as usize] += 1;
        }
        h
    }

    pub(crate) fn syndrome_of_word(&self, w: u64) -> usize {
        let res = gf2::reduce(w, &self.basis);
        self.free_cols
            .iter()
            .enumerate()
            .fold(0usize, |s, (j, &c)| s | (((res >> c) & 1) as usize) << j)
    }

    pub fn syndrome(&self, v: &BitVector) -> usize {
        self.syndrome_of_word(v.bits())
    }

    pub(crate) fn member_word(&self, syndrome: usize) -> u64 {
        self.free_cols
            .iter()
            .enumerate()
            .filter(|(j, _)| syndrome >> j & 1 == 1)
            .fold(0u64, |w, (_, &c)| w | 1u64 << c)
    }

    /// Some member of the coset with the given syndrome (not necessarily a
    /// leader).
    pub fn member(&self, syndrome: usize) -> BitVector {
        BitVector::raw(self.n, self.member_word(syndrome))
    }
}

/// BFS depths over `2^r` syndromes with one byte per state.
fn bfs_bytes(r: usize, cols: &[usize]) -> Vec<u8> {
    let size = 1usize << r;
    let mut dist = vec![u8::MAX; size];
    dist[0] = 0;
    let mut depth = 0u8;
    loop {
        let mut grew = false;
        for s in 0..size {
            if dist[s] != depth {
                continue;
            }
            for &c in cols {
                if dist[s ^ c] == u8::MAX {
                    dist[s ^ c] = depth + 1;
                    grew = true;
                }
            }
        }
        if !grew {
            return dist;
        }
        depth += 1;
    }
}

/// Masks selecting the bits whose index has bit `j` clear.
const LOW_HALVES: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Moves bit `b` of `x` to bit `b ^ t`, for `t < 64`.
fn xor_permute(mut x: u64, t: usize) -> u64 {
    for (j, &m) in LOW_HALVES.iter().enumerate() {
        if t >> j & 1 == 1 {
            let sh = 1 << j;
            x = ((x & m) << sh) | ((x >> sh) & m);
        }
    }
    x
}

/// Level-synchronous BFS on bitsets: the next frontier is the union of the
/// current one translated by each column syndrome, minus visited states.
/// Requires `r >= 6` so that states fill whole words.
fn bfs_bitset(r: usize, cols: &[usize]) -> Vec<u8> {
    let words = 1usize << (r - 6);
    let mut dist = vec![u8::MAX; 1 << r];
    let mut visited = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    let mut next = vec![0u64; words];
    visited[0] = 1;
    frontier[0] = 1;
    dist[0] = 0;
    let mut depth = 0u8;
    loop {
        next.iter_mut().for_each(|w| *w = 0);
        for &c in cols {
            let (hi, lo) = (c >> 6, c & 63);
            for (w, &f) in frontier.iter().enumerate() {
                if f != 0 {
                    next[w ^ hi] |= xor_permute(f, lo);
                }
            }
        }
        depth += 1;
        let mut grew = false;
        for (w, n) in next.iter_mut().enumerate() {
            *n &= !visited[w];
            if *n == 0 {
                continue;
            }
            grew = true;
            visited[w] |= *n;
            let mut bits = *n;
            while bits != 0 {
                dist[w << 6 | bits.trailing_zeros() as usize] = depth;
                bits &= bits - 1;
            }
        }
        if !grew {
            return dist;
        }
        std::mem::swap(&mut frontier, &mut next);
    }
}

pub fn covering_radius(code: &LinearCode) -> Result<usize> {
    Ok(CosetLeaderProfile::compute(code)?.covering_radius())
}

/// Whether every word of `offset + code` has a weight in `allowed`.
pub(crate) fn coset_weights_within(code: &LinearCode, offset: u64, allowed: &[usize]) -> bool {
    let mask = allowed.iter().fold(0u128, |m, &w| m | 1u128 << w);
    all_in_coset(code.basis_words(), offset, |w| mask >> w.count_ones() & 1 == 1)
}

/// Representatives of every nonzero coset `x + C` whose weights all lie in
/// `{n/2-a, n/2, n/2+a}`, in syndrome order. These are exactly the vectors
/// `x` for which `<C, x>` keeps the same weight set.
pub fn admissible_cosets(
    code: &LinearCode,
    cert: &FourWeightCertificate,
) -> Result<Vec<BitVector>> {
    let profile = CosetLeaderProfile::compute(code)?;
    Ok(admissible_cosets_in(&profile, code, cert))
}

pub(crate) fn admissible_cosets_in(
    profile: &CosetLeaderProfile,
    code: &LinearCode,
    cert: &FourWeightCertificate,
) -> Vec<BitVector> {
    let allowed = cert.coset_weights();
    let floor = allowed[0] as u8;
    profile
        .leader_weight
        .par_iter()
        .enumerate()
        .filter(|&(s, &w)| s != 0 && w >= floor)
        .filter_map(|(s, _)| {
            let x = profile.member_word(s);
            coset_weights_within(code, x, &allowed).then(|| BitVector::raw(code.n(), x))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalityPath {
    Fast,
    Slow,
}

#[derive(Clone, Debug, Serialize)]
pub struct Maximality {
    pub maximal: bool,
    pub path: MaximalityPath,
    pub covering_radius: usize,
    /// A one-dimension-larger code that still satisfies both conditions.
    #[serde(skip)]
    pub witness: Option<LinearCode>,
}

/// Whether no proper extension `<C, x>` satisfies the four-weight condition.
/// Condition (2) is inherited by every extension, so only weights matter.
pub fn is_maximal(code: &LinearCode, cert: &FourWeightCertificate) -> Result<Maximality> {
    maximality(code, cert, false)
}

/// [`is_maximal`] with the option of skipping the radius shortcut.
pub fn maximality(
    code: &LinearCode,
    cert: &FourWeightCertificate,
    force_slow: bool,
) -> Result<Maximality> {
    let profile = CosetLeaderProfile::compute(code)?;
    maximality_in(&profile, code, cert, force_slow)
}

/// [`maximality`] reusing an existing syndrome table for `code`.
pub fn maximality_in(
    profile: &CosetLeaderProfile,
    code: &LinearCode,
    cert: &FourWeightCertificate,
    force_slow: bool,
) -> Result<Maximality> {
    let radius = profile.covering_radius();
    if !force_slow && radius < cert.min_weight() {
        return Ok(Maximality {
            maximal: true,
            path: MaximalityPath::Fast,
            covering_radius: radius,
            witness: None,
        });
    }
    let witness = admissible_cosets_in(profile, code, cert)
        .first()
        .map(|x| code.extend(x))
        .transpose()?;
    Ok(Maximality {
        maximal: witness.is_none(),
        path: MaximalityPath::Slow,
        covering_radius: radius,
        witness,
    })
}
