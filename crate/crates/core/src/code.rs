//! Binary linear codes held as a reduced generator basis.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{self, low_mask, BitVector, MAX_LEN};

/// Largest dimension whose codewords we are willing to enumerate.
pub const MAX_ENUM_DIM: usize = 28;
/// Largest ambient dimension for explicit coset tables.
pub const MAX_COSET_AMBIENT_DIM: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    /// RREF rows, pivots ascending.
    basis: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Divisibility {
    None,
    DoublyEven,
    TriplyEven,
}

impl WeightDistribution {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            counts: vec![0; n + 1],
        }
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Weights that occur, ascending (includes 0).
    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len())
            .filter(|&i| self.counts[i] != 0)
            .collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&i| self.counts[i] != 0)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..=n).all(|i| self.counts[i] == self.counts[n - i])
    }

    /// `(weight, count)` pairs for nonzero counts.
    pub fn nonzero(&self) -> Vec<(usize, u64)> {
        self.support()
            .into_iter()
            .map(|w| (w, self.counts[w]))
            .collect()
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero()
            .into_iter()
            .map(|(w, c)| format!("A{w}={c}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Calls `f` on every word of `offset + span(basis)`, in Gray-code order.
pub(crate) fn for_each_in_coset(basis: &[u64], offset: u64, mut f: impl FnMut(u64)) {
    let mut w = offset;
    f(w);
    let total = 1u64 << basis.len();
    for i in 1..total {
        w ^= basis[i.trailing_zeros() as usize];
        f(w);
    }
}

/// Like [`for_each_in_coset`] but stops as soon as `f` returns `false`.
/// Returns whether the traversal completed.
pub(crate) fn all_in_coset(basis: &[u64], offset: u64, mut f: impl FnMut(u64) -> bool) -> bool {
    let mut w = offset;
    if !f(w) {
        return false;
    }
    let total = 1u64 << basis.len();
    for i in 1..total {
        w ^= basis[i.trailing_zeros() as usize];
        if !f(w) {
            return false;
        }
    }
    true
}

fn count_weights(n: usize, basis: &[u64], offset: u64) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    for_each_in_coset(basis, offset, |w| counts[w.count_ones() as usize] += 1);
    counts
}

impl LinearCode {
    /// Span of `rows`; dependent rows are allowed.
    pub fn from_rows(n: usize, rows: &[BitVector]) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::InvalidLength(n));
        }
        for r in rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: r.len(),
                });
            }
        }
        Ok(Self::from_words(n, rows.iter().map(|r| r.bits()).collect()))
    }

    pub(crate) fn from_words(n: usize, mut words: Vec<u64>) -> Self {
        debug_assert!(words.iter().all(|w| w & !low_mask(n) == 0));
        gf2::rref_words(&mut words);
        Self { n, basis: words }
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_rows(n, &[])
    }

    /// The whole space F_2^n.
    pub fn full(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::InvalidLength(n));
        }
        Ok(Self::from_words(n, (0..n).map(|i| 1u64 << i).collect()))
    }

    /// The even-weight code of length `n`.
    pub fn even_weight(n: usize) -> Result<Self> {
        if !(2..=MAX_LEN).contains(&n) {
            return Err(Error::InvalidLength(n));
        }
        Ok(Self::from_words(
            n,
            (1..n).map(|i| 1u64 | (1u64 << i)).collect(),
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<BitVector> {
        self.basis
            .iter()
            .map(|&w| BitVector::raw(self.n, w))
            .collect()
    }

    pub(crate) fn basis_words(&self) -> &[u64] {
        &self.basis
    }

    /// Pivot coordinate of each basis row (0-indexed).
    pub(crate) fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.trailing_zeros() as usize)
            .collect()
    }

    pub fn contains_vector(&self, v: &BitVector) -> bool {
        v.len() == self.n && gf2::reduce(v.bits(), &self.basis) == 0
    }

    pub(crate) fn contains_word(&self, w: u64) -> bool {
        gf2::reduce(w, &self.basis) == 0
    }

    /// Whether `other` is a subcode of `self`.
    pub fn contains(&self, other: &LinearCode) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(other.basis.iter().all(|&r| self.contains_word(r)))
    }

    /// `<self, v>`.
    pub fn extend(&self, v: &BitVector) -> Result<Self> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        let mut words = self.basis.clone();
        words.push(v.bits());
        Ok(Self::from_words(self.n, words))
    }

    /// Image of the code under coordinate `i -> perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n);
        Self::from_words(
            self.n,
            self.basis
                .iter()
                .map(|&w| gf2::permute_word(w, perm))
                .collect(),
        )
    }

    fn enum_guard(&self) -> Result<()> {
        if self.k() > MAX_ENUM_DIM {
            return Err(Error::Capacity {
                what: "code dimension for enumeration",
                requested: self.k(),
                limit: MAX_ENUM_DIM,
            });
        }
        Ok(())
    }

    /// All codewords, in Gray-code order starting from zero.
    pub fn codewords(&self) -> Result<Vec<BitVector>> {
        self.enum_guard()?;
        let mut out = Vec::with_capacity(1 << self.k());
        for_each_in_coset(&self.basis, 0, |w| out.push(BitVector::raw(self.n, w)));
        Ok(out)
    }

    /// Exact weight distribution by enumeration of all `2^k` codewords.
    ///
    /// Large codes are split on their top basis rows and counted in parallel;
    /// the sum is independent of the split.
    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        self.enum_guard()?;
        let k = self.k();
        const SPLIT_FROM: usize = 16;
        if k < SPLIT_FROM {
            return Ok(WeightDistribution {
                counts: count_weights(self.n, &self.basis, 0),
            });
        }
        let top = (k - 12).min(10);
        let (low, high) = self.basis.split_at(k - top);
        let counts = (0u64..(1 << top))
            .into_par_iter()
            .map(|mask| {
                let offset = high
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &r)| acc ^ r);
                count_weights(self.n, low, offset)
            })
            .reduce(
                || vec![0u64; self.n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(WeightDistribution { counts })
    }

    /// Minimum nonzero weight `d(C)`.
    pub fn min_weight(&self) -> Result<usize> {
        if self.k() == 0 {
            return Err(Error::InvalidParameters(
                "minimum weight of the zero code is undefined".into(),
            ));
        }
        Ok(self
            .weight_distribution()?
            .min_nonzero_weight()
            .expect("nonzero code has a nonzero word"))
    }

    pub fn dual(&self) -> Self {
        let pivots = self.pivots();
        let pivot_mask = pivots.iter().fold(0u64, |m, &p| m | 1u64 << p);
        let mut words = Vec::with_capacity(self.n - self.k());
        for j in (0..self.n).filter(|&j| pivot_mask >> j & 1 == 0) {
            let mut v = 1u64 << j;
            for (&r, &p) in self.basis.iter().zip(&pivots) {
                if r >> j & 1 == 1 {
                    v |= 1u64 << p;
                }
            }
            words.push(v);
        }
        Self::from_words(self.n, words)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, &a)| {
            self.basis[i..]
                .iter()
                .all(|&b| (a & b).count_ones() % 2 == 0)
        })
    }

    pub fn divisibility(&self) -> Result<Divisibility> {
        let wd = self.weight_distribution()?;
        let weights = wd.support();
        Ok(if weights.iter().all(|w| w % 8 == 0) {
            Divisibility::TriplyEven
        } else if weights.iter().all(|w| w % 4 == 0) {
            Divisibility::DoublyEven
        } else {
            Divisibility::None
        })
    }

    /// Parses the code text format: a header line `n k`, then `k` rows of
    /// `n` characters from `{0,1}`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n k` header"))?;
        let mut it = header.split_whitespace();
        let mut field = |name: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| Error::parse(hline, format!("missing {name}")))?
                .parse()
                .map_err(|_| Error::parse(hline, format!("{name} is not an integer")))
        };
        let n = field("n")?;
        let k = field("k")?;
        if n == 0 || n > MAX_LEN {
            return Err(Error::parse(hline, format!("length {n} outside 1..={MAX_LEN}")));
        }
        let mut rows = Vec::with_capacity(k);
        for (lno, line) in lines {
            if rows.len() == k {
                return Err(Error::parse(lno, "more rows than declared"));
            }
            let mut bits = 0u64;
            let mut len = 0;
            for c in line.chars() {
                match c {
                    '0' => {}
                    '1' => {
                        if len < MAX_LEN {
                            bits |= 1u64 << len;
                        }
                    }
                    c if c.is_whitespace() => continue,
                    other => {
                        return Err(Error::parse(lno, format!("unexpected character `{other}`")))
                    }
                }
                len += 1;
            }
            if len != n {
                return Err(Error::parse(lno, format!("row has {len} symbols, expected {n}")));
            }
            rows.push(bits);
        }
        if rows.len() != k {
            return Err(Error::parse(
                hline,
                format!("declared {k} rows, found {}", rows.len()),
            ));
        }
        let code = Self::from_words(n, rows);
        if code.k() != k {
            return Err(Error::parse(
                hline,
                format!("rows are linearly dependent: rank {} < {k}", code.k()),
            ));
        }
        Ok(code)
    }

    /// Writes the code text format with the RREF basis.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.k());
        for r in self.basis() {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

impl Serialize for LinearCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<String> = self.basis().iter().map(ToString::to_string).collect();
        let mut st = s.serialize_struct("LinearCode", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k())?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{},{}]", self.n, self.k())?;
        f.debug_list().entries(self.basis()).finish()
    }
}

/// Coset representatives of `sub` inside `ambient`.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub subcode: LinearCode,
    /// One per coset; sorted by (weight, string order). The zero coset is
    /// first and is represented by the zero vector.
    pub representatives: Vec<BitVector>,
}

impl CosetTable {
    pub fn min_weights(&self) -> Vec<usize> {
        self.representatives.iter().map(BitVector::weight).collect()
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Builds a coset table by enumerating `ambient`. Each representative is the
/// least-weight member of its coset, ties broken by string order.
pub fn coset_table(ambient: &LinearCode, sub: &LinearCode) -> Result<CosetTable> {
    if !ambient.contains(sub)? {
        return Err(Error::NotSubcode);
    }
    if ambient.k() > MAX_COSET_AMBIENT_DIM {
        return Err(Error::Capacity {
            what: "ambient dimension for coset table",
            requested: ambient.k(),
            limit: MAX_COSET_AMBIENT_DIM,
        });
    }
    let n = ambient.n();
    let mut best: HashMap<u64, (u32, u64, u64)> = HashMap::new();
    for_each_in_coset(ambient.basis_words(), 0, |w| {
        let key = gf2::reduce(w, sub.basis_words());
        let cand = (w.count_ones(), gf2::lex_key(w, n), w);
        best.entry(key)
            .and_modify(|cur| {
                if (cand.0, cand.1) < (cur.0, cur.1) {
                    *cur = cand;
                }
            })
            .or_insert(cand);
    });
    let mut reps: Vec<_> = best.into_values().collect();
    reps.sort_unstable();
    Ok(CosetTable {
        subcode: sub.clone(),
        representatives: reps
            .into_iter()
            .map(|(_, _, w)| BitVector::raw(n, w))
            .collect(),
    })
}
