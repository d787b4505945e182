//! Hadamard matrices from cosets of `RM(1,m)` and exact verification of
//! mutual quasi-unbiasedness.
//!
//! Each coset `u + RM(1,m)` inside a qualifying code is closed under
//! complementation. Picking one word from every complementary pair and
//! mapping `0 -> +1, 1 -> -1` gives the rows of a Hadamard matrix. All checks
//! are integer arithmetic; `sqrt(a)` is never formed.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{coset_table, LinearCode};
use crate::error::{Error, Result};
use crate::fourweight::{certify, FourWeightCertificate};
use crate::gf2::{low_mask, BitVector};
use crate::reedmuller::reference_rm;

/// Square matrix with entries in `{-1, 0, 1}`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != order {
                return Err(Error::InvalidParameters(format!(
                    "row {} has {} entries, expected {order}",
                    i + 1,
                    r.len()
                )));
            }
            if let Some(bad) = r.iter().find(|e| !(-1..=1).contains(*e)) {
                return Err(Error::InvalidParameters(format!(
                    "entry {bad} in row {} is not in {{-1,0,1}}",
                    i + 1
                )));
            }
            entries.extend(r);
        }
        Ok(Self { order, entries })
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![0i8; order * order];
        for i in 0..order {
            entries[i * order + i] = 1;
        }
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.order.max(1))
    }

    pub fn negated(&self) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// `self * other^T`, exact.
    pub fn times_transpose(&self, other: &SignMatrix) -> Vec<i64> {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            let a = self.row(i);
            for j in 0..n {
                out[i * n + j] = inner(a, other.row(j));
            }
        }
        out
    }

    /// Rows of space-separated `-1 / 0 / 1`.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.order * self.order * 3);
        for r in self.rows() {
            let line: Vec<String> = r.iter().map(ToString::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i8>()
                        .map_err(|_| Error::parse(lno + 1, format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignMatrix({})\n{}", self.order, self.to_text())
    }
}

/// `0 -> +1`, `1 -> -1`, coordinatewise.
pub fn psi(v: &BitVector) -> Vec<i8> {
    (0..v.len()).map(|i| if v.get(i) { -1 } else { 1 }).collect()
}

pub fn inner(a: &[i8], b: &[i8]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| (x as i64) * (y as i64)).sum()
}

/// One word from each complementary pair, preferring the one whose first
/// coordinate is 0. The output is sorted in string order.
pub fn antipodal_split(coset: &[BitVector]) -> Result<Vec<BitVector>> {
    antipodal_split_with(coset, |_| false)
}

/// Like [`antipodal_split`], but `take_other(v)` may swap the choice for the
/// pair whose leading-zero member is `v`.
pub fn antipodal_split_with(
    coset: &[BitVector],
    mut take_other: impl FnMut(&BitVector) -> bool,
) -> Result<Vec<BitVector>> {
    let Some(first) = coset.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    let ones = low_mask(n);
    let mut seen = HashSet::with_capacity(coset.len());
    for v in coset {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: v.len(),
            });
        }
        if !seen.insert(v.bits()) {
            return Err(Error::NotComplementClosed(format!("{v} occurs twice")));
        }
    }
    let mut out = Vec::with_capacity(coset.len() / 2);
    for v in coset {
        let c = v.bits() ^ ones;
        if !seen.contains(&c) {
            return Err(Error::NotComplementClosed(format!(
                "complement of {v} is missing"
            )));
        }
        if !v.get(0) {
            let pick = if take_other(v) { c } else { v.bits() };
            out.push(BitVector::raw(n, pick));
        }
    }
    out.sort();
    Ok(out)
}

/// Weighing-matrix parameters `(n, k, l, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuwmParams {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub a: usize,
}

impl QuwmParams {
    /// Requires `l * a = k^2`.
    pub fn new(n: usize, k: usize, l: usize, a: usize) -> Result<Self> {
        if a == 0 || l * a != k * k {
            return Err(Error::InvalidParameters(format!(
                "({n},{k},{l},{a}) violates l = k^2 / a"
            )));
        }
        Ok(Self { n, k, l, a })
    }

    /// `(n, n, (n/2a)^2, 4a^2)` for codes with offset `a`.
    pub fn from_certificate(cert: &FourWeightCertificate) -> Self {
        Self {
            n: cert.n,
            k: cert.n,
            l: cert.l,
            a: 4 * cert.a * cert.a,
        }
    }
}

impl fmt::Display for QuwmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.l, self.a)
    }
}

/// True iff entries lie in `{-1,0,1}`, every row and column has exactly `w`
/// nonzeros, and `W W^T = w I`.
pub fn verify_weighing(m: &SignMatrix, w: usize) -> bool {
    let n = m.order();
    if m.entries.iter().any(|e| !(-1..=1).contains(e)) {
        return false;
    }
    let rows_ok = m.rows().all(|r| r.iter().filter(|&&e| e != 0).count() == w);
    let cols_ok = (0..n).all(|j| (0..n).filter(|&i| m.get(i, j) != 0).count() == w);
    if !rows_ok || !cols_ok {
        return false;
    }
    let g = m.times_transpose(m);
    (0..n).all(|i| (0..n).all(|j| g[i * n + j] == if i == j { w as i64 } else { 0 }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairViolation {
    OrderMismatch { left: usize, right: usize, expected: usize },
    NotWeighing { which: usize },
    /// `W1 W2^T` has an entry whose square is neither 0 nor `a`.
    Entry { row: usize, col: usize, value: i64 },
    RowWeight { row: usize, nonzeros: usize },
    ColWeight { col: usize, nonzeros: usize },
    NotOrthogonal { row: usize, col: usize, value: i64 },
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairViolation::OrderMismatch { left, right, expected } => {
                write!(f, "orders {left} and {right}, expected {expected}")
            }
            PairViolation::NotWeighing { which } => {
                write!(f, "matrix {which} is not a weighing matrix of the stated weight")
            }
            PairViolation::Entry { row, col, value } => {
                write!(f, "product entry ({row},{col}) = {value}")
            }
            PairViolation::RowWeight { row, nonzeros } => {
                write!(f, "product row {row} has {nonzeros} nonzeros")
            }
            PairViolation::ColWeight { col, nonzeros } => {
                write!(f, "product column {col} has {nonzeros} nonzeros")
            }
            PairViolation::NotOrthogonal { row, col, value } => {
                write!(f, "scaled product is not orthogonal at ({row},{col}): {value}")
            }
        }
    }
}

/// Checks that `W1, W2` are weight-`p.k` weighing matrices and that
/// `W1 W2^T / sqrt(p.a)` is a weighing matrix of weight `p.l`.
pub fn check_quasi_unbiased(
    w1: &SignMatrix,
    w2: &SignMatrix,
    p: &QuwmParams,
) -> std::result::Result<(), PairViolation> {
    if w1.order() != p.n || w2.order() != p.n {
        return Err(PairViolation::OrderMismatch {
            left: w1.order(),
            right: w2.order(),
            expected: p.n,
        });
    }
    for (which, w) in [(1, w1), (2, w2)] {
        if !verify_weighing(w, p.k) {
            return Err(PairViolation::NotWeighing { which });
        }
    }
    let n = p.n;
    let a = p.a as i64;
    let prod = w1.times_transpose(w2);
    for i in 0..n {
        for j in 0..n {
            let v = prod[i * n + j];
            if v != 0 && v * v != a {
                return Err(PairViolation::Entry {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
    }
    for i in 0..n {
        let nz = (0..n).filter(|&j| prod[i * n + j] != 0).count();
        if nz != p.l {
            return Err(PairViolation::RowWeight { row: i, nonzeros: nz });
        }
    }
    for j in 0..n {
        let nz = (0..n).filter(|&i| prod[i * n + j] != 0).count();
        if nz != p.l {
            return Err(PairViolation::ColWeight { col: j, nonzeros: nz });
        }
    }
    // (M / sqrt a)(M / sqrt a)^T = l I  <=>  M M^T = a l I
    let target = a * p.l as i64;
    for i in 0..n {
        for j in 0..n {
            let v: i64 = (0..n).map(|t| prod[i * n + t] * prod[j * n + t]).sum();
            let want = if i == j { target } else { 0 };
            if v != want {
                return Err(PairViolation::NotOrthogonal { row: i, col: j, value: v });
            }
        }
    }
    Ok(())
}

pub fn verify_quasi_unbiased(w1: &SignMatrix, w2: &SignMatrix, p: &QuwmParams) -> bool {
    check_quasi_unbiased(w1, w2, p).is_ok()
}

/// A set of Hadamard matrices built from a qualifying code.
#[derive(Clone, Debug, Serialize)]
pub struct QuwmSet {
    pub params: QuwmParams,
    pub matrices: Vec<SignMatrix>,
    /// Coset representatives `u_i` of `RM(1,m)` the matrices came from.
    pub representatives: Vec<BitVector>,
    #[serde(skip)]
    pub source: LinearCode,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairFailure {
    pub i: usize,
    pub j: usize,
    pub violation: PairViolation,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetVerification {
    pub all_pass: bool,
    pub hadamard: Vec<bool>,
    pub pair_checks: usize,
    pub failures: Vec<PairFailure>,
    /// Zero entries per row of `H_i H_j^T` (`i != j`), when uniform.
    pub zero_count_per_row: Option<usize>,
}

impl QuwmSet {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Checks every matrix is Hadamard and every unordered pair is
    /// quasi-unbiased. Pairs are checked in parallel; failures are reported
    /// in `(i, j)` order.
    pub fn verify(&self) -> SetVerification {
        let n = self.params.n;
        let hadamard: Vec<bool> = self
            .matrices
            .par_iter()
            .map(|h| verify_weighing(h, n))
            .collect();
        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| (i + 1..self.len()).map(move |j| (i, j)))
            .collect();
        let results: Vec<(usize, usize, std::result::Result<(), PairViolation>, Vec<usize>)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (a, b) = (&self.matrices[i], &self.matrices[j]);
                let res = check_quasi_unbiased(a, b, &self.params);
                let prod = a.times_transpose(b);
                let zeros = (0..n)
                    .map(|r| prod[r * n..(r + 1) * n].iter().filter(|&&v| v == 0).count())
                    .collect();
                (i, j, res, zeros)
            })
            .collect();
        let mut failures = Vec::new();
        let mut zero_counts = HashSet::new();
        for (i, j, res, zeros) in results {
            zero_counts.extend(zeros);
            if let Err(violation) = res {
                failures.push(PairFailure { i, j, violation });
            }
        }
        let zero_count_per_row = if zero_counts.len() == 1 {
            zero_counts.into_iter().next()
        } else {
            None
        };
        SetVerification {
            all_pass: failures.is_empty() && hadamard.iter().all(|&h| h),
            hadamard,
            pair_checks: pairs.len(),
            failures,
            zero_count_per_row,
        }
    }
}

fn build_with(
    code: &LinearCode,
    mut split: impl FnMut(&[BitVector]) -> Result<Vec<BitVector>>,
) -> Result<QuwmSet> {
    let cert = certify(code)?;
    let rm = reference_rm(cert.m)?;
    let table = coset_table(code, &rm)?;
    let rm_words = rm.codewords()?;
    let mut matrices = Vec::with_capacity(table.len());
    for u in &table.representatives {
        let coset: Vec<BitVector> = rm_words
            .iter()
            .map(|c| BitVector::raw(code.n(), c.bits() ^ u.bits()))
            .collect();
        let rows = split(&coset)?;
        matrices.push(SignMatrix::from_rows(rows.iter().map(psi).collect())?);
    }
    Ok(QuwmSet {
        params: QuwmParams::from_certificate(&cert),
        matrices,
        representatives: table.representatives,
        source: code.clone(),
    })
}

/// The `2^(k-m-1)` Hadamard matrices of a qualifying code, one per coset of
/// `RM(1,m)`, with rows in string order of the underlying words.
pub fn build_quwm_set(code: &LinearCode) -> Result<QuwmSet> {
    build_with(code, antipodal_split)
}

/// Same construction with a random representative from each complementary
/// pair.
pub fn build_quwm_set_randomized<R: Rng>(code: &LinearCode, rng: &mut R) -> Result<QuwmSet> {
    build_with(code, |coset| {
        antipodal_split_with(coset, |_| rng.random_bool(0.5))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reedmuller::rm1;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&bv("0000")), vec![1, 1, 1, 1]);
        assert_eq!(psi(&bv("1111")), vec![-1, -1, -1, -1]);
    }

    #[test]
    fn psi_inner_product_exhaustive_n8() {
        for x in 0u64..256 {
            let px = psi(&BitVector::raw(8, x));
            for y in 0u64..256 {
                let py = psi(&BitVector::raw(8, y));
                assert_eq!(inner(&px, &py), 8 - 2 * (x ^ y).count_ones() as i64);
            }
        }
    }

    #[test]
    fn antipodal_split_examples() {
        let rm3 = rm1(3).unwrap().codewords().unwrap();
        let x = antipodal_split(&rm3).unwrap();
        assert_eq!(x.len(), 8);
        assert!(x.iter().all(|v| !v.get(0)));

        let pair = [bv("0000"), bv("1111")];
        assert_eq!(antipodal_split(&pair).unwrap(), vec![bv("0000")]);

        let rm4 = rm1(4).unwrap().codewords().unwrap();
        assert_eq!(antipodal_split(&rm4).unwrap().len(), 16);

        let bad = [bv("0000"), bv("1110")];
        assert!(matches!(antipodal_split(&bad), Err(Error::NotComplementClosed(_))));
    }

    #[test]
    fn weighing_examples() {
        let h2 = SignMatrix::from_rows(vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert!(verify_weighing(&h2, 2));
        assert!(verify_weighing(&SignMatrix::identity(5), 1));
        let ones = SignMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(!verify_weighing(&ones, 2));
        assert!(SignMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn self_pair_params() {
        let h = SignMatrix::from_rows(vec![vec![1, 1], vec![1, -1]]).unwrap();
        let n = 2;
        // H H^T = n I, so H/sqrt(a) against itself needs a = n^2, l = 1.
        assert!(verify_quasi_unbiased(&h, &h, &QuwmParams::new(n, n, 1, n * n).unwrap()));
        assert!(!verify_quasi_unbiased(&h, &h, &QuwmParams { n, k: n, l: n, a: n }));
        let neg = h.negated();
        assert!(!verify_quasi_unbiased(&h, &neg, &QuwmParams { n, k: n, l: n, a: n }));
        assert!(QuwmParams::new(16, 16, 4, 63).is_err());
    }

    #[test]
    fn matrix_text_roundtrip() {
        let h = SignMatrix::from_rows(vec![vec![1, -1, 0], vec![0, 1, 1], vec![-1, 0, 1]]).unwrap();
        assert_eq!(h.to_text(), "1 -1 0\n0 1 1\n-1 0 1\n");
        assert_eq!(SignMatrix::parse(&h.to_text()).unwrap(), h);
        assert!(SignMatrix::parse("1 1\n1\n").is_err());
    }
}
