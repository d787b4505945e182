//! Named vectors and codes from the published tables, their reconstruction,
//! and an end-to-end check of every claim made about them.
//!
//! All supports live in `data/paper_tables.txt`. The tenth generators of the
//! `[32,10]` codes are not tabulated and come from `data/computed.txt`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify_all, ClassifyOptions};
use crate::code::{Divisibility, LinearCode, WeightDistribution};
use crate::covrad::{self, CosetLeaderProfile, MaximalityPath};
use crate::equivalence::canonical_form;
use crate::error::{Error, Result};
use crate::fourweight::{allowed_coset_weights, check_conditions, log2_length, offset_from_weights};
use crate::gf2::BitVector;
use crate::quwm::{build_quwm_set, QuwmParams};
use crate::reedmuller::reference_rm;

pub const TABLES: &str = include_str!("../data/paper_tables.txt");
pub const COMPUTED: &str = include_str!("../data/computed.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedVector {
    pub id: String,
    pub n: usize,
    /// 1-indexed.
    pub support: Vec<usize>,
    /// False for vectors that come from `computed.txt`.
    pub tabulated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    Named(String),
    /// Lexicographically least minimum-weight leader of the first coset that
    /// keeps the weight set.
    Leader,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCode {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Added to the reference `RM(1,m)` in order.
    pub generators: Vec<Generator>,
}

impl NamedCode {
    pub fn a(&self) -> usize {
        self.n / 2 - self.d
    }
}

#[derive(Clone, Debug, Default)]
pub struct Registry {
    vectors: BTreeMap<String, NamedVector>,
    codes: Vec<NamedCode>,
}

/// Accepts `C_{32,9,1}` as well as the shell-friendly `C_32_9_1`.
pub fn normalize_id(id: &str) -> String {
    let id = id.trim();
    if id.contains('{') {
        return id.to_string();
    }
    let mut parts = id.split('_');
    let head = parts.next().unwrap_or_default();
    let rest: Vec<&str> = parts.collect();
    if rest.is_empty() {
        return id.to_string();
    }
    format!("{head}_{{{}}}", rest.join(","))
}

impl Registry {
    pub fn parse(text: &str, tabulated: bool) -> Result<Self> {
        let mut reg = Registry::default();
        reg.add(text, tabulated)?;
        Ok(reg)
    }

    fn add(&mut self, text: &str, tabulated: bool) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let tok: Vec<&str> = body.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::parse(line, format!("expected an integer, found {s:?}")))
            };
            match tok[0] {
                "vector" if tok.len() >= 3 => {
                    let n = num(tok[2])?;
                    let support = tok[3..].iter().map(|s| num(s)).collect::<Result<Vec<_>>>()?;
                    BitVector::from_support(n, &support)?;
                    let v = NamedVector {
                        id: tok[1].to_string(),
                        n,
                        support,
                        tabulated,
                    };
                    if self.vectors.insert(v.id.clone(), v).is_some() {
                        return Err(Error::parse(line, format!("duplicate vector {}", tok[1])));
                    }
                }
                "code" if tok.len() >= 5 => {
                    let generators = tok[5..]
                        .iter()
                        .map(|g| match *g {
                            "+" => Generator::Leader,
                            id => Generator::Named(id.to_string()),
                        })
                        .collect();
                    self.codes.push(NamedCode {
                        id: tok[1].to_string(),
                        n: num(tok[2])?,
                        k: num(tok[3])?,
                        d: num(tok[4])?,
                        generators,
                    });
                }
                other => return Err(Error::parse(line, format!("unrecognized record {other:?}"))),
            }
        }
        Ok(())
    }

    /// The tables plus the computed generators.
    pub fn builtin() -> &'static Registry {
        static REG: OnceLock<Registry> = OnceLock::new();
        REG.get_or_init(|| {
            let mut reg = Registry::parse(TABLES, true).expect("bundled tables parse");
            reg.add(COMPUTED, false).expect("bundled computed vectors parse");
            reg
        })
    }

    pub fn vectors(&self) -> impl Iterator<Item = &NamedVector> {
        self.vectors.values()
    }

    pub fn codes(&self) -> &[NamedCode] {
        &self.codes
    }

    pub fn named_vector(&self, id: &str) -> Result<&NamedVector> {
        self.vectors
            .get(&normalize_id(id))
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn vector(&self, id: &str) -> Result<BitVector> {
        let v = self.named_vector(id)?;
        BitVector::from_support(v.n, &v.support)
    }

    pub fn code_entry(&self, id: &str) -> Result<&NamedCode> {
        let id = normalize_id(id);
        self.codes
            .iter()
            .find(|c| c.id == id)
            .ok_or(Error::UnknownId(id))
    }

    /// Codes of length `n` (and dimension `k` if given), in table order.
    pub fn family(&self, n: usize, k: Option<usize>) -> Vec<&NamedCode> {
        self.codes
            .iter()
            .filter(|c| c.n == n && k.is_none_or(|k| c.k == k))
            .collect()
    }

    /// Builds the code, failing if a generator is already in the span or if
    /// the dimension or minimum weight differs from the table.
    pub fn load_code(&self, id: &str) -> Result<LinearCode> {
        let entry = self.code_entry(id)?;
        let code = self.build_prefix(entry, entry.generators.len())?;
        if code.k() != entry.k {
            return Err(Error::Integrity(format!(
                "{} has dimension {}, expected {}",
                entry.id,
                code.k(),
                entry.k
            )));
        }
        let d = code.min_weight()?;
        if d != entry.d {
            return Err(Error::Integrity(format!(
                "{} has minimum weight {d}, expected {}",
                entry.id, entry.d
            )));
        }
        Ok(code)
    }

    /// The reference `RM(1,m)` extended by the first `count` generators.
    pub fn build_prefix(&self, entry: &NamedCode, count: usize) -> Result<LinearCode> {
        let m = log2_length(entry.n)?;
        let mut code = reference_rm(m)?;
        for g in &entry.generators[..count] {
            let x = match g {
                Generator::Named(id) => {
                    let v = self.vector(id)?;
                    if v.len() != entry.n {
                        return Err(Error::Integrity(format!(
                            "{id} has length {}, {} has length {}",
                            v.len(),
                            entry.id,
                            entry.n
                        )));
                    }
                    v
                }
                Generator::Leader => least_admissible_leader(&code, entry.a())?,
            };
            if code.contains_vector(&x) {
                return Err(Error::Integrity(format!(
                    "generator {g:?} of {} lies in the span of the previous generators",
                    entry.id
                )));
            }
            code = code.extend(&x)?;
        }
        Ok(code)
    }
}

/// Lexicographically least vector of minimum weight among all `x` outside
/// `code` for which `<code, x>` has weight set `{0, n/2±a, n/2, n}`.
fn least_admissible_leader(code: &LinearCode, a: usize) -> Result<BitVector> {
    let n = code.n();
    if n > 16 {
        return Err(Error::Capacity {
            what: "length for leader search",
            requested: n,
            limit: 16,
        });
    }
    let allowed = allowed_coset_weights(n, a);
    let mut xs: Vec<BitVector> = (1u64..1 << n).map(|w| BitVector::raw(n, w)).collect();
    xs.sort_by_key(|x| (x.weight(), *x));
    for x in xs {
        if code.contains_vector(&x) || !covrad::coset_weights_within(code, x.bits(), &allowed) {
            continue;
        }
        let ext = code.extend(&x)?;
        if offset_from_weights(n, &ext.weight_distribution()?.support()) == Some(a) {
            return Ok(x);
        }
    }
    Err(Error::Integrity(format!("no admissible coset for a={a}")))
}

pub fn load_code(id: &str) -> Result<LinearCode> {
    Registry::builtin().load_code(id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scope {
    #[serde(rename = "8")]
    Eight,
    #[serde(rename = "16")]
    Sixteen,
    #[serde(rename = "32")]
    ThirtyTwo,
    #[serde(rename = "all")]
    All,
}

impl Scope {
    pub fn lengths(self) -> Vec<usize> {
        match self {
            Scope::Eight => vec![8],
            Scope::Sixteen => vec![16],
            Scope::ThirtyTwo => vec![32],
            Scope::All => vec![8, 16, 32],
        }
    }
}

impl std::str::FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "8" => Ok(Scope::Eight),
            "16" => Ok(Scope::Sixteen),
            "32" => Ok(Scope::ThirtyTwo),
            "all" => Ok(Scope::All),
            _ => Err(Error::InvalidParameters(format!(
                "scope must be 8, 16, 32 or all, not {s:?}"
            ))),
        }
    }
}

/// Everything computed about one named code.
#[derive(Clone, Debug, Serialize)]
pub struct CodeRecord {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub d_expected: usize,
    pub d: Option<usize>,
    pub load_error: Option<String>,
    pub conditions: bool,
    pub violations: Vec<String>,
    pub a: Option<usize>,
    pub distribution: Option<WeightDistribution>,
    pub distribution_matches_formula: bool,
    pub divisibility: Option<Divisibility>,
    pub covering_radius: Option<usize>,
    pub maximal: Option<bool>,
    pub maximality_path: Option<MaximalityPath>,
    /// Generators of a larger qualifying code, when one exists.
    pub witness_extension: Option<Vec<String>>,
    #[serde(skip)]
    pub key: Option<Vec<u8>>,
    pub uses_computed_generators: bool,
}

fn examine(reg: &Registry, entry: &NamedCode) -> CodeRecord {
    let uses_computed = entry.generators.iter().any(|g| match g {
        Generator::Named(id) => reg.named_vector(id).map(|v| !v.tabulated).unwrap_or(true),
        Generator::Leader => false,
    });
    let mut rec = CodeRecord {
        id: entry.id.clone(),
        n: entry.n,
        k: entry.k,
        d_expected: entry.d,
        d: None,
        load_error: None,
        conditions: false,
        violations: Vec::new(),
        a: None,
        distribution: None,
        distribution_matches_formula: false,
        divisibility: None,
        covering_radius: None,
        maximal: None,
        maximality_path: None,
        witness_extension: None,
        key: None,
        uses_computed_generators: uses_computed,
    };
    let code = match reg.load_code(&entry.id) {
        Ok(c) => c,
        Err(e) => {
            rec.load_error = Some(e.to_string());
            return rec;
        }
    };
    rec.d = code.min_weight().ok();
    rec.divisibility = code.divisibility().ok();
    if let Ok(check) = check_conditions(&code) {
        rec.violations = check.violations.iter().map(ToString::to_string).collect();
        rec.distribution = Some(check.distribution.clone());
        if let Some(cert) = &check.certificate {
            rec.conditions = true;
            rec.a = Some(cert.a);
            rec.distribution_matches_formula = cert.expected == check.distribution;
            let profile = CosetLeaderProfile::compute(&code);
            if let Ok(profile) = &profile {
                rec.covering_radius = Some(profile.covering_radius());
            }
            if let Ok(m) = profile.and_then(|p| covrad::maximality_in(&p, &code, cert, false)) {
                rec.maximal = Some(m.maximal);
                rec.maximality_path = Some(m.path);
                rec.witness_extension = m
                    .witness
                    .map(|w| w.basis().iter().map(ToString::to_string).collect());
            }
        }
    }
    rec.key = canonical_form(&code).ok().map(|f| f.key.0);
    rec
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuwmRecord {
    pub id: String,
    pub params: QuwmParams,
    pub set_size: usize,
    pub all_pass: bool,
    pub zero_count_per_row: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperReport {
    pub scope: Scope,
    pub passed: bool,
    pub claims: Vec<Claim>,
    pub codes: Vec<CodeRecord>,
    pub quwm: Vec<QuwmRecord>,
}

impl PaperReport {
    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.claims {
            s.push_str(&format!(
                "{} {}: {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        let failed = self.failures().count();
        s.push_str(&format!(
            "{} codes, {} claims, {} failed\n",
            self.codes.len(),
            self.claims.len(),
            failed
        ));
        s
    }
}

struct Claims(Vec<Claim>);

impl Claims {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Claim {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn index_of(id: &str) -> usize {
    id.trim_end_matches('}')
        .rsplit(',')
        .next()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn ids_where(records: &[&CodeRecord], bad: impl Fn(&CodeRecord) -> bool) -> Vec<String> {
    records.iter().filter(|r| bad(r)).map(|r| r.id.clone()).collect()
}

fn listing(ids: &[String]) -> String {
    if ids.len() > 8 {
        format!("{} ... ({} total)", ids[..8].join(", "), ids.len())
    } else {
        ids.join(", ")
    }
}

fn value_set(values: impl Iterator<Item = Option<usize>>) -> String {
    let set: BTreeSet<String> = values
        .map(|v| v.map_or("?".to_string(), |v| v.to_string()))
        .collect();
    format!("{{{}}}", set.into_iter().collect::<Vec<_>>().join(","))
}

/// Expected number of inequivalent codes per (n, k) in the tables.
fn expected_classes(n: usize, k: usize) -> Option<usize> {
    match (n, k) {
        (8, 5..=7) => Some(1),
        (16, 6..=8) => Some(2),
        (32, 9) => Some(92),
        (32, 10) => Some(102),
        (32, 11) => Some(2),
        _ => None,
    }
}

/// Rebuilds every named code in scope and checks each published claim.
pub fn verify_paper(scope: Scope) -> Result<PaperReport> {
    let reg = Registry::builtin();
    let lengths = scope.lengths();
    let entries: Vec<&NamedCode> = reg
        .codes()
        .iter()
        .filter(|c| lengths.contains(&c.n))
        .collect();
    let records: Vec<CodeRecord> = entries.par_iter().map(|e| examine(reg, e)).collect();
    let mut claims = Claims(Vec::new());
    let mut quwm = Vec::new();

    for &n in &lengths {
        let fam: Vec<&CodeRecord> = records.iter().filter(|r| r.n == n).collect();
        let ks: BTreeSet<usize> = fam.iter().map(|r| r.k).collect();

        let bad = ids_where(&fam, |r| r.load_error.is_some());
        let mut detail = format!("{} codes rebuilt with the tabulated dimension and minimum weight", fam.len());
        if !bad.is_empty() {
            let first = fam.iter().find(|r| r.load_error.is_some()).and_then(|r| r.load_error.clone());
            detail = format!("failed: {} ({})", listing(&bad), first.unwrap_or_default());
        }
        claims.push(format!("n={n} reconstruction"), bad.is_empty(), detail);

        let bad = ids_where(&fam, |r| !r.conditions);
        claims.push(
            format!("n={n} conditions (1)-(2)"),
            bad.is_empty(),
            if bad.is_empty() { format!("{} codes", fam.len()) } else { format!("failed: {}", listing(&bad)) },
        );

        let bad = ids_where(&fam, |r| !r.distribution_matches_formula);
        claims.push(
            format!("n={n} weight distribution formula"),
            bad.is_empty(),
            if bad.is_empty() { format!("{} codes match enumeration", fam.len()) } else { format!("failed: {}", listing(&bad)) },
        );

        for &k in &ks {
            let sub: Vec<&CodeRecord> = fam.iter().copied().filter(|r| r.k == k).collect();
            let keys: BTreeSet<&Vec<u8>> = sub.iter().filter_map(|r| r.key.as_ref()).collect();
            let expected = expected_classes(n, k);
            let all_keyed = sub.iter().all(|r| r.key.is_some());
            claims.push(
                format!("n={n} k={k} pairwise inequivalent"),
                all_keyed && keys.len() == sub.len() && expected.is_none_or(|e| e == keys.len()),
                format!(
                    "{} codes, {} canonical classes, expected {}",
                    sub.len(),
                    keys.len(),
                    expected.map_or("-".into(), |e| e.to_string())
                ),
            );
        }

        match n {
            8 | 16 => {
                let reports = classify_all(n, ClassifyOptions::default())?;
                let found: Vec<(usize, usize)> = reports.iter().map(|r| (r.k, r.len())).collect();
                let expected: Vec<(usize, usize)> = ks.iter().map(|&k| (k, expected_classes(n, k).unwrap_or(0))).collect();
                claims.push(
                    format!("n={n} classification"),
                    found == expected,
                    format!("classes per dimension {found:?}, expected {expected:?}"),
                );
                let mut unmatched = Vec::new();
                for report in &reports {
                    for class in &report.classes {
                        let hit = fam.iter().any(|r| r.k == report.k && r.key.as_ref() == Some(&class.key.0));
                        if !hit {
                            unmatched.push(format!("[{n},{}] class {}", report.k, class.key.to_hex()));
                        }
                    }
                }
                claims.push(
                    format!("n={n} classes match named codes"),
                    unmatched.is_empty(),
                    if unmatched.is_empty() { "every class is equivalent to a named code".to_string() } else { unmatched.join("; ") },
                );
            }
            _ => {}
        }

        let radius_claims: &[(&str, Box<dyn Fn(&CodeRecord) -> bool>, Box<dyn Fn(usize) -> bool>, &str)] = &[
            ("C_{16,7,1} covering radius", Box::new(|r: &CodeRecord| r.id == "C_{16,7,1}"), Box::new(|v| v == 4), "4"),
            (
                "C_{32,9,1..90} covering radius",
                Box::new(|r: &CodeRecord| r.n == 32 && r.k == 9 && index_of(&r.id) <= 90),
                Box::new(|v| v <= 11),
                "<= 11",
            ),
            (
                "C_{32,10,1..101} covering radius",
                Box::new(|r: &CodeRecord| r.n == 32 && r.k == 10 && index_of(&r.id) <= 101),
                Box::new(|v| v == 10),
                "10",
            ),
            ("C_{32,11,*} covering radius", Box::new(|r: &CodeRecord| r.n == 32 && r.k == 11), Box::new(|v| v == 8), "8"),
        ];
        for (name, select, ok, want) in radius_claims {
            let sub: Vec<&CodeRecord> = fam.iter().copied().filter(|r| select(r)).collect();
            if sub.is_empty() {
                continue;
            }
            let bad = ids_where(&sub, |r| !r.covering_radius.is_some_and(ok));
            claims.push(
                *name,
                bad.is_empty(),
                format!(
                    "{} codes, radii {} (claimed {want}){}",
                    sub.len(),
                    value_set(sub.iter().map(|r| r.covering_radius)),
                    if bad.is_empty() { String::new() } else { format!("; failed: {}", listing(&bad)) }
                ),
            );
        }

        let must_be_maximal: Vec<&CodeRecord> = fam
            .iter()
            .copied()
            .filter(|r| r.n == 32 || r.id == "C_{16,7,1}" || (r.n == 16 && r.k == 8) || (r.n == 8 && r.k == 7))
            .collect();
        if !must_be_maximal.is_empty() {
            let bad = ids_where(&must_be_maximal, |r| r.maximal != Some(true));
            let slow = must_be_maximal.iter().filter(|r| r.maximality_path == Some(MaximalityPath::Slow)).count();
            claims.push(
                format!("n={n} maximal codes"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("{} codes maximal ({} via coset scan)", must_be_maximal.len(), slow)
                } else {
                    format!("not maximal: {}", listing(&bad))
                },
            );
        }
        let extendable: Vec<&CodeRecord> = fam
            .iter()
            .copied()
            .filter(|r| (r.n == 16 && r.k < 8 && r.id != "C_{16,7,1}") || (r.n == 8 && r.k < 7))
            .collect();
        if !extendable.is_empty() {
            let bad = ids_where(&extendable, |r| r.maximal != Some(false) || r.witness_extension.is_none());
            claims.push(
                format!("n={n} non-maximal codes"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("{} codes extend, witnesses recorded", extendable.len())
                } else {
                    format!("no extension found: {}", listing(&bad))
                },
            );
        }

        if n == 32 {
            for id in ["C_{32,9,92}", "C_{32,10,102}"] {
                if let Some(r) = fam.iter().find(|r| r.id == id) {
                    claims.push(
                        format!("{id} triply even"),
                        r.divisibility == Some(Divisibility::TriplyEven),
                        r.divisibility.map_or("unknown".to_string(), |d| format!("{d:?}")),
                    );
                }
            }
        }

        let quwm_claims: &[(&str, (usize, usize, usize, usize), usize)] = &[
            ("C_{16,8,1}", (16, 16, 4, 64), 8),
            ("C_{16,7,1}", (16, 16, 16, 16), 4),
            ("C_{32,9,1}", (32, 32, 16, 64), 8),
            ("C_{32,10,102}", (32, 32, 4, 256), 4),
        ];
        for &(id, (pn, pk, pl, pa), at_least) in quwm_claims {
            if reg.code_entry(id)?.n != n {
                continue;
            }
            let outcome = load_code(id).and_then(|c| build_quwm_set(&c));
            match outcome {
                Ok(set) => {
                    let v = set.verify();
                    let want = QuwmParams::new(pn, pk, pl, pa)?;
                    let passed = v.all_pass && set.params == want && set.len() >= at_least;
                    claims.push(
                        format!("{id} quasi-unbiased set"),
                        passed,
                        format!(
                            "{} Hadamard matrices for ({},{},{},{}), {} pairs {}, claimed at least {at_least} for ({pn},{pk},{pl},{pa})",
                            set.len(),
                            set.params.n,
                            set.params.k,
                            set.params.l,
                            set.params.a,
                            v.pair_checks,
                            if v.all_pass { "pass" } else { "FAIL" }
                        ),
                    );
                    quwm.push(QuwmRecord {
                        id: id.to_string(),
                        params: set.params,
                        set_size: set.len(),
                        all_pass: v.all_pass,
                        zero_count_per_row: v.zero_count_per_row,
                    });
                }
                Err(e) => claims.push(format!("{id} quasi-unbiased set"), false, e.to_string()),
            }
        }
    }

    let passed = claims.0.iter().all(|c| c.passed);
    Ok(PaperReport {
        scope,
        passed,
        claims: claims.0,
        codes: records,
        quwm,
    })
}
