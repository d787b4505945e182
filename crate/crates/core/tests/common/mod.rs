//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use mquwm::{BitVector, LinearCode};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn words(code: &LinearCode) -> Vec<u64> {
    code.codewords().unwrap().iter().map(|v| v.bits()).collect()
}

/// Maximum over all of `F_2^n` of the distance to the nearest codeword.
pub fn brute_covering_radius(code: &LinearCode) -> usize {
    assert!(code.n() <= 16);
    let ws = words(code);
    (0u64..1 << code.n())
        .map(|x| ws.iter().map(|c| (x ^ c).count_ones()).min().unwrap())
        .max()
        .unwrap() as usize
}

/// Weight distribution by direct popcount of every codeword.
pub fn brute_distribution(code: &LinearCode) -> Vec<u64> {
    let mut counts = vec![0u64; code.n() + 1];
    for w in words(code) {
        counts[w.count_ones() as usize] += 1;
    }
    counts
}

/// Multiset of (restriction to `coords`, full weight) over the codewords.
fn projection(ws: &[u64], coords: &[usize]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = ws
        .iter()
        .map(|&w| {
            let p = coords
                .iter()
                .enumerate()
                .fold(0u64, |p, (i, &c)| p | ((w >> c) & 1) << i);
            (p, w.count_ones())
        })
        .collect();
    out.sort_unstable();
    out
}

/// Searches for `perm` with `perm[i] = j` meaning coordinate `i` of `c1`
/// goes to coordinate `j` of `c2`, so that `c1` maps onto `c2`. Coordinates
/// are assigned one at a time; a partial map survives only if restricting
/// both codes to the assigned coordinates gives the same multiset of
/// (pattern, codeword weight) pairs.
pub fn brute_equivalence(c1: &LinearCode, c2: &LinearCode) -> Option<Vec<usize>> {
    if c1.n() != c2.n() || c1.k() != c2.k() {
        return None;
    }
    let (w1, w2) = (words(c1), words(c2));
    let n = c1.n();
    let col_weight = |ws: &[u64], i: usize| ws.iter().filter(|&&w| w >> i & 1 == 1).count();
    let cw1: Vec<usize> = (0..n).map(|i| col_weight(&w1, i)).collect();
    let cw2: Vec<usize> = (0..n).map(|i| col_weight(&w2, i)).collect();

    fn go(
        j: usize,
        n: usize,
        w1: &[u64],
        w2: &[u64],
        cw1: &[usize],
        cw2: &[usize],
        image: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if j == n {
            return true;
        }
        let domain: Vec<usize> = (0..=j).collect();
        for t in 0..n {
            if used[t] || cw1[j] != cw2[t] {
                continue;
            }
            image.push(t);
            if projection(w1, &domain) == projection(w2, image) {
                used[t] = true;
                if go(j + 1, n, w1, w2, cw1, cw2, image, used) {
                    return true;
                }
                used[t] = false;
            }
            image.pop();
        }
        false
    }

    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    go(0, n, &w1, &w2, &cw1, &cw2, &mut image, &mut used).then_some(image)
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_code<R: Rng>(n: usize, k: usize, rng: &mut R) -> LinearCode {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rows: Vec<BitVector> = (0..k)
        .map(|_| BitVector::from_bits(n, rng.random::<u64>() & mask).unwrap())
        .collect();
    LinearCode::from_rows(n, &rows).unwrap()
}
