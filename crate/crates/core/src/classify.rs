//! Classification of qualifying codes by repeated one-dimensional
//! extension and isomorph rejection.
//!
//! Starting from the reference `RM(1,m)` with a fixed offset `a`, each step
//! adds one vector from every coset whose weights stay inside
//! `{n/2-a, n/2, n/2+a}`, then keeps one code per equivalence class. When
//! every allowed weight is divisible by four the extensions are doubly even,
//! hence self-orthogonal, and only cosets inside `C^⊥` need to be tried.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{Divisibility, LinearCode};
use crate::covrad::{self, CosetLeaderProfile};
use crate::equivalence::{canonical_form, CanonicalKey};
use crate::error::{Error, Result};
use crate::fourweight::{admissible_offsets, allowed_coset_weights, log2_length, offset_from_weights};
use crate::gf2::{self, BitVector};
use crate::reedmuller::reference_rm;

/// A code to be extended, with its fixed offset and how it was built.
#[derive(Clone, Debug)]
pub struct Seed {
    pub code: LinearCode,
    pub a: usize,
    /// Vectors added to `RM(1,m)`, in order.
    pub provenance: Vec<BitVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub code: LinearCode,
    #[serde(serialize_with = "key_hex")]
    pub key: CanonicalKey,
    pub a: usize,
    pub min_weight: usize,
    pub divisibility: Divisibility,
    /// `None` until the next dimension has been searched.
    pub maximal: Option<bool>,
    pub covering_radius: Option<usize>,
    #[serde(serialize_with = "supports")]
    pub provenance: Vec<BitVector>,
}

fn key_hex<S: serde::Serializer>(k: &CanonicalKey, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&k.to_hex())
}

fn supports<S: serde::Serializer>(v: &[BitVector], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.support())?;
    }
    seq.end()
}

impl ClassEntry {
    pub fn as_seed(&self) -> Seed {
        Seed {
            code: self.code.clone(),
            a: self.a,
            provenance: self.provenance.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub k: usize,
    /// Sorted by canonical key.
    pub classes: Vec<ClassEntry>,
}

impl ClassificationReport {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn doubly_even_target(n: usize, a: usize) -> bool {
    allowed_coset_weights(n, a).iter().all(|w| w % 4 == 0) && n.is_multiple_of(4)
}

/// Vectors spanning `C^⊥` modulo `C`, as residues against `C`.
fn dual_quotient_generators(code: &LinearCode) -> Vec<u64> {
    let mut basis: Vec<u64> = code.basis_words().to_vec();
    let mut gens = Vec::new();
    for &d in code.dual().basis_words() {
        let r = gf2::reduce(d, &basis);
        if r != 0 {
            gens.push(r);
            basis.push(r);
            gf2::rref_words(&mut basis);
        }
    }
    gens
}

/// Representatives `x` of the nonzero cosets of `code` whose weights all lie
/// in `{n/2-a, n/2, n/2+a}`, such that `<code, x>` has exactly the weight set
/// `{0, n/2±a, n/2, n}`.
pub fn extension_vectors(code: &LinearCode, a: usize) -> Result<Vec<BitVector>> {
    let n = code.n();
    log2_length(n)?;
    if a == 0 || a >= n / 2 {
        return Err(Error::InvalidParameters(format!("offset {a} out of range")));
    }
    let allowed = allowed_coset_weights(n, a);
    let candidates: Vec<u64> = if doubly_even_target(n, a) && code.is_self_orthogonal() {
        let gens = dual_quotient_generators(code);
        if gens.len() > 30 {
            return Err(Error::Capacity {
                what: "dimension of C^⊥/C",
                requested: gens.len(),
                limit: 30,
            });
        }
        (1u64..1 << gens.len())
            .into_par_iter()
            .filter_map(|mask| {
                let x = gens
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &g)| acc ^ g);
                covrad::coset_weights_within(code, x, &allowed).then_some(x)
            })
            .collect()
    } else if doubly_even_target(n, a) {
        // A doubly-even target cannot extend a code that is not self-orthogonal.
        Vec::new()
    } else {
        let profile = CosetLeaderProfile::compute(code)?;
        let floor = allowed[0] as u8;
        profile
            .leader_weight()
            .par_iter()
            .enumerate()
            .filter(|&(s, &w)| s != 0 && w >= floor)
            .filter_map(|(s, _)| {
                let x = profile.member_word(s);
                covrad::coset_weights_within(code, x, &allowed).then_some(x)
            })
            .collect()
    };
    // A coset of weight exactly n/2 throughout would leave the weight set
    // short of n/2 ± a.
    let base_has_offset = code
        .weight_distribution()?
        .get(n / 2 - a)
        != 0;
    Ok(candidates
        .into_iter()
        .filter(|&x| {
            base_has_offset || {
                let ext = LinearCode::from_words(n, {
                    let mut w = code.basis_words().to_vec();
                    w.push(x);
                    w
                });
                ext.weight_distribution()
                    .map(|wd| offset_from_weights(n, &wd.support()) == Some(a))
                    .unwrap_or(false)
            }
        })
        .map(|x| BitVector::raw(n, x))
        .collect())
}

/// All codes `<code, x>` obtained from [`extension_vectors`].
pub fn extensions(code: &LinearCode, a: usize) -> Result<Vec<LinearCode>> {
    extension_vectors(code, a)?
        .iter()
        .map(|x| code.extend(x))
        .collect()
}

struct Candidate {
    key: CanonicalKey,
    code: LinearCode,
    a: usize,
    provenance: Vec<BitVector>,
}

fn order_key(c: &Candidate) -> (&CanonicalKey, &[u64], Vec<u64>) {
    (
        &c.key,
        c.code.basis_words(),
        c.provenance.iter().map(|v| v.bits()).collect(),
    )
}

/// Extends every seed by one dimension and reduces the result to one
/// representative per equivalence class. The representative of a class is
/// its member with the least RREF basis, so the outcome does not depend on
/// seed order or on how the work is split across threads.
pub fn classify_step(seeds: &[Seed]) -> Result<ClassificationReport> {
    let n = seeds.first().map(|s| s.code.n()).unwrap_or(0);
    let k = seeds.first().map(|s| s.code.k() + 1).unwrap_or(0);
    if seeds.iter().any(|s| s.code.n() != n || s.code.k() + 1 != k) {
        return Err(Error::InvalidParameters(
            "seeds must share length and dimension".into(),
        ));
    }
    let vectors = seeds
        .par_iter()
        .map(|s| extension_vectors(&s.code, s.a))
        .collect::<Result<Vec<_>>>()?;
    classify_extended(n, k, seeds, &vectors)
}

fn classify_extended(
    n: usize,
    k: usize,
    seeds: &[Seed],
    vectors: &[Vec<BitVector>],
) -> Result<ClassificationReport> {
    let raw: Vec<(LinearCode, usize, Vec<BitVector>)> = seeds
        .iter()
        .zip(vectors)
        .flat_map(|(s, xs)| {
            xs.iter().map(move |x| {
                let mut prov = s.provenance.clone();
                prov.push(*x);
                (s.code.extend(x).expect("same length"), s.a, prov)
            })
        })
        .collect();

    // Bucket by weight distribution; equal codes collapse before the
    // expensive canonical form is computed.
    let mut buckets: BTreeMap<(Vec<u64>, Vec<u64>), (LinearCode, usize, Vec<BitVector>)> = BTreeMap::new();
    for (code, a, prov) in raw {
        let wd = code.weight_distribution()?.counts().to_vec();
        let basis = code.basis_words().to_vec();
        let prov_bits: Vec<u64> = prov.iter().map(|v| v.bits()).collect();
        buckets
            .entry((wd, basis))
            .and_modify(|cur| {
                let cur_bits: Vec<u64> = cur.2.iter().map(|v| v.bits()).collect();
                if prov_bits < cur_bits {
                    *cur = (code.clone(), a, prov.clone());
                }
            })
            .or_insert((code, a, prov));
    }
    let distinct: Vec<_> = buckets.into_values().collect();
    let mut candidates: Vec<Candidate> = distinct
        .into_par_iter()
        .map(|(code, a, provenance)| {
            Ok(Candidate {
                key: canonical_form(&code)?.key,
                code,
                a,
                provenance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    candidates.sort_by(|x, y| order_key(x).cmp(&order_key(y)));
    candidates.dedup_by(|later, earlier| later.key == earlier.key);

    let classes = candidates
        .into_par_iter()
        .map(|c| {
            let min_weight = c.code.min_weight()?;
            let divisibility = c.code.divisibility()?;
            let covering_radius = if c.code.n() - c.code.k() <= covrad::MAX_REDUNDANCY {
                Some(covrad::covering_radius(&c.code)?)
            } else {
                None
            };
            Ok(ClassEntry {
                code: c.code,
                key: c.key,
                a: c.a,
                min_weight,
                divisibility,
                maximal: None,
                covering_radius,
                provenance: c.provenance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport { n, k, classes })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassifyOptions {
    /// Required for length 32.
    pub allow_long: bool,
}

/// Classifies every qualifying code of length `n`, dimension by dimension.
/// A class is maximal when it has no extension.
pub fn classify_all(n: usize, opts: ClassifyOptions) -> Result<Vec<ClassificationReport>> {
    let m = log2_length(n)?;
    if n > 16 && !opts.allow_long {
        return Err(Error::Refused(format!(
            "classifying length {n} extends RM(1,{m}) one dimension at a time and \
             canonicalizes every intermediate class (hundreds at k = 9); expect minutes of CPU time in a release build. \
             Pass --allow-long to proceed"
        )));
    }
    if n > 32 {
        return Err(Error::Capacity {
            what: "classification length",
            requested: n,
            limit: 32,
        });
    }
    let rm = reference_rm(m)?;
    let mut seeds: Vec<Seed> = admissible_offsets(n)?
        .into_iter()
        .map(|a| Seed {
            code: rm.clone(),
            a,
            provenance: Vec::new(),
        })
        .collect();
    let mut reports: Vec<ClassificationReport> = Vec::new();
    loop {
        let n_seeds = seeds.len();
        let k = seeds.first().map(|s| s.code.k() + 1).unwrap_or(0);
        let vectors = seeds
            .par_iter()
            .map(|s| extension_vectors(&s.code, s.a))
            .collect::<Result<Vec<_>>>()?;
        if let Some(prev) = reports.last_mut() {
            debug_assert_eq!(prev.classes.len(), n_seeds);
            for (class, xs) in prev.classes.iter_mut().zip(&vectors) {
                class.maximal = Some(xs.is_empty());
            }
        }
        let report = classify_extended(n, k, &seeds, &vectors)?;
        if report.is_empty() {
            break;
        }
        seeds = report.classes.iter().map(ClassEntry::as_seed).collect();
        reports.push(report);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reedmuller::rm1;

    #[test]
    fn rm3_has_seven_weight_two_extensions() {
        let v = extension_vectors(&rm1(3).unwrap(), 2).unwrap();
        assert_eq!(v.len(), 7);
        assert!(v.iter().all(|x| x.weight() == 2 || x.weight() == 6 || x.weight() == 4));
    }

    #[test]
    fn doubly_even_target_uses_dual() {
        assert!(doubly_even_target(16, 4));
        assert!(!doubly_even_target(16, 2));
        assert!(!doubly_even_target(8, 2));
        assert!(doubly_even_target(32, 4));
    }

    #[test]
    fn refuses_length_32_without_flag() {
        let err = classify_all(32, ClassifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Refused(_)));
    }

    #[test]
    fn length_8_chain() {
        let reports = classify_all(8, ClassifyOptions::default()).unwrap();
        let ks: Vec<_> = reports.iter().map(|r| (r.k, r.len())).collect();
        assert_eq!(ks, vec![(5, 1), (6, 1), (7, 1)]);
        let last = &reports[2].classes[0];
        assert_eq!(last.code, LinearCode::even_weight(8).unwrap());
        assert_eq!(last.maximal, Some(true));
        assert_eq!(reports[0].classes[0].maximal, Some(false));
    }
}
