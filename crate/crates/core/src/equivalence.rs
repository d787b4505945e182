//! Permutation equivalence of binary codes through a canonical form.
//!
//! The canonical form of `C` is the least RREF generator matrix of `σ(C)`
//! over the coordinate permutations `σ` reachable by an
//! individualization–refinement search. Coordinates are refined against an
//! invariant set of codewords (the lightest two weight classes of the code,
//! or of its dual when that is smaller), so the reachable set is closed
//! under the automorphism group and the minimum is a class invariant.
//!
//! The search prunes with automorphisms it discovers along the way: a leaf
//! equal to an earlier leaf yields an automorphism, the search backs up to
//! where the two paths diverged, and children in one orbit of the
//! automorphisms fixing the current prefix are explored once.

use std::cmp::Ordering;

use serde::Serialize;

use crate::code::{for_each_in_coset, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::{self, permute_word};

/// Codes must have `min(k, n - k)` at most this to be canonicalized.
pub const MAX_INVARIANT_DIM: usize = 20;
const MAX_INVARIANT_WORDS: usize = 1 << 12;
const MAX_LEAVES: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// Input coordinate `i` moves to canonical position `witness[i]`.
    pub witness: Vec<usize>,
}

impl CanonicalForm {
    /// The canonical representative `σ(C)`.
    pub fn apply(&self, code: &LinearCode) -> LinearCode {
        code.permute(&self.witness)
    }
}

fn encode_key(n: usize, rows: &[u64]) -> CanonicalKey {
    let mut key = Vec::with_capacity(2 + rows.len() * 8);
    key.push(n as u8);
    key.push(rows.len() as u8);
    for r in rows {
        key.extend_from_slice(&r.to_be_bytes());
    }
    CanonicalKey(key)
}

/// The invariant word set driving refinement.
fn invariant_words(code: &LinearCode) -> Vec<u64> {
    let n = code.n();
    let source = if code.k() <= n - code.k() {
        code.clone()
    } else {
        code.dual()
    };
    if source.k() == 0 {
        return Vec::new();
    }
    let ones = gf2::low_mask(n);
    let mut by_weight: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for_each_in_coset(source.basis_words(), 0, |w| {
        if w != 0 && w != ones {
            by_weight[w.count_ones() as usize].push(w);
        }
    });
    let mut out = Vec::new();
    for (classes, class) in by_weight.into_iter().filter(|c| !c.is_empty()).enumerate() {
        if classes == 2 || (classes == 1 && out.len() + class.len() > MAX_INVARIANT_WORDS) {
            break;
        }
        if class.len() > MAX_INVARIANT_WORDS && classes == 0 {
            // Too many light words to be useful; refine on nothing.
            break;
        }
        out.extend(class);
    }
    out.sort_unstable();
    out
}

struct Refiner<'a> {
    n: usize,
    words: &'a [u64],
}

impl Refiner<'_> {
    /// Splits cells until the partition is equitable with respect to the
    /// word set. Each split keeps the cell's place and orders the pieces by
    /// their signatures, so the result does not depend on labels.
    fn refine(&self, cells: &mut Vec<u64>) {
        if self.words.is_empty() {
            return;
        }
        let n = self.n;
        loop {
            if cells.len() == n {
                return;
            }
            let nc = cells.len();
            // Word signatures: how many coordinates each word has in each cell.
            let mut sig = vec![0u8; self.words.len() * nc];
            for (wi, &w) in self.words.iter().enumerate() {
                for (ci, &c) in cells.iter().enumerate() {
                    sig[wi * nc + ci] = (w & c).count_ones() as u8;
                }
            }
            let mut order: Vec<usize> = (0..self.words.len()).collect();
            order.sort_unstable_by(|&a, &b| sig[a * nc..(a + 1) * nc].cmp(&sig[b * nc..(b + 1) * nc]));
            let mut color = vec![0usize; self.words.len()];
            let mut ncolors = 0;
            for (pos, &wi) in order.iter().enumerate() {
                if pos > 0 {
                    let prev = order[pos - 1];
                    if sig[prev * nc..(prev + 1) * nc] != sig[wi * nc..(wi + 1) * nc] {
                        ncolors += 1;
                    }
                }
                color[wi] = ncolors;
            }
            ncolors += 1;

            // Coordinate signatures: words of each colour through the coordinate.
            let mut csig = vec![0u32; n * ncolors];
            for (wi, &w) in self.words.iter().enumerate() {
                let mut x = w;
                while x != 0 {
                    let c = x.trailing_zeros() as usize;
                    csig[c * ncolors + color[wi]] += 1;
                    x &= x - 1;
                }
            }
            let row = |c: usize| &csig[c * ncolors..(c + 1) * ncolors];

            let mut next = Vec::with_capacity(n);
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut members: Vec<usize> = bits(cell).collect();
                members.sort_by(|&a, &b| row(a).cmp(row(b)).then(a.cmp(&b)));
                let mut cur = 0u64;
                for (i, &c) in members.iter().enumerate() {
                    if i > 0 && row(members[i - 1]) != row(c) {
                        next.push(cur);
                        cur = 0;
                    }
                    cur |= 1u64 << c;
                }
                next.push(cur);
            }
            let grew = next.len() != cells.len();
            *cells = next;
            if !grew {
                return;
            }
        }
    }
}

fn bits(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let i = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i)
        }
    })
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

struct Leaf {
    cert: Vec<u64>,
    perm: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    n: usize,
    basis: &'a [u64],
    refiner: Refiner<'a>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms found so far, as coordinate maps.
    gens: Vec<Vec<usize>>,
    leaves: usize,
}

enum Step {
    Continue,
    /// Abandon everything below this level.
    JumpTo(usize),
}

impl Search<'_> {
    fn leaf_cert(&self, perm: &[usize]) -> Vec<u64> {
        let mut rows: Vec<u64> = self.basis.iter().map(|&w| permute_word(w, perm)).collect();
        gf2::rref_words(&mut rows);
        rows
    }

    fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
        // γ = from⁻¹ ∘ to
        let inv = invert(from);
        to.iter().map(|&p| inv[p]).collect()
    }

    fn divergence(a: &[usize], b: &[usize]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    fn visit_leaf(&mut self, cells: &[u64], path: &[usize]) -> Result<Step> {
        self.leaves += 1;
        if self.leaves > MAX_LEAVES {
            return Err(Error::Capacity {
                what: "canonical form search leaves",
                requested: self.leaves,
                limit: MAX_LEAVES,
            });
        }
        let mut perm = vec![0usize; self.n];
        for (pos, &c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = pos;
        }
        let cert = self.leaf_cert(&perm);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                cert: cert.clone(),
                perm: perm.clone(),
                path: path.to_vec(),
            };
            self.first = Some(leaf);
            self.best = Some(Leaf {
                cert,
                perm,
                path: path.to_vec(),
            });
            return Ok(Step::Continue);
        };
        if cert == first.cert {
            let g = Self::automorphism(&first.perm, &perm);
            let d = Self::divergence(&first.path, path);
            self.gens.push(g);
            return Ok(Step::JumpTo(d));
        }
        let best = self.best.as_ref().expect("set with first");
        match cert.cmp(&best.cert) {
            Ordering::Less => {
                self.best = Some(Leaf {
                    cert,
                    perm,
                    path: path.to_vec(),
                });
                Ok(Step::Continue)
            }
            Ordering::Equal => {
                let g = Self::automorphism(&best.perm, &perm);
                let d = Self::divergence(&best.path, path);
                self.gens.push(g);
                Ok(Step::JumpTo(d))
            }
            Ordering::Greater => Ok(Step::Continue),
        }
    }

    /// Orbit labels under the automorphisms fixing `prefix` pointwise.
    fn orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.gens {
            if prefix.iter().any(|&v| g[v] != v) {
                continue;
            }
            for (i, &j) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|i| find(&mut parent, i)).collect()
    }

    fn dfs(&mut self, mut cells: Vec<u64>, path: &mut Vec<usize>) -> Result<Step> {
        self.refiner.refine(&mut cells);
        if cells.len() == self.n {
            return self.visit_leaf(&cells, path);
        }
        let level = path.len();
        let (t, &target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored: Vec<usize> = Vec::new();
        for v in bits(target) {
            if !explored.is_empty() {
                let orb = self.orbits(path);
                if explored.iter().any(|&u| orb[u] == orb[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1u64 << v);
            child.push(target & !(1u64 << v));
            child.extend_from_slice(&cells[t + 1..]);
            path.push(v);
            let step = self.dfs(child, path)?;
            path.pop();
            if let Step::JumpTo(d) = step {
                if d < level {
                    return Ok(step);
                }
            }
        }
        Ok(Step::Continue)
    }
}

/// Canonical form of `code` under coordinate permutations.
pub fn canonical_form(code: &LinearCode) -> Result<CanonicalForm> {
    let n = code.n();
    let small = code.k().min(n - code.k());
    if small > MAX_INVARIANT_DIM {
        return Err(Error::Capacity {
            what: "min(k, n - k) for canonical form",
            requested: small,
            limit: MAX_INVARIANT_DIM,
        });
    }
    let words = invariant_words(code);
    let mut search = Search {
        n,
        basis: code.basis_words(),
        refiner: Refiner { n, words: &words },
        first: None,
        best: None,
        gens: Vec::new(),
        leaves: 0,
    };
    search.dfs(vec![gf2::low_mask(n)], &mut Vec::with_capacity(n))?;
    let best = search.best.expect("search reaches at least one leaf");
    Ok(CanonicalForm {
        key: encode_key(n, &best.cert),
        witness: best.perm,
    })
}

/// If the codes are equivalent, a map `τ` with `c1.permute(τ) == c2`.
pub fn equivalence_witness(c1: &LinearCode, c2: &LinearCode) -> Result<Option<Vec<usize>>> {
    if c1.n() != c2.n() || c1.k() != c2.k() {
        return Ok(None);
    }
    if c1.k() <= crate::code::MAX_ENUM_DIM
        && c1.weight_distribution()? != c2.weight_distribution()?
    {
        return Ok(None);
    }
    let f1 = canonical_form(c1)?;
    let f2 = canonical_form(c2)?;
    if f1.key != f2.key {
        return Ok(None);
    }
    let inv2 = invert(&f2.witness);
    Ok(Some(f1.witness.iter().map(|&p| inv2[p]).collect()))
}

pub fn are_equivalent(c1: &LinearCode, c2: &LinearCode) -> Result<bool> {
    Ok(equivalence_witness(c1, c2)?.is_some())
}
