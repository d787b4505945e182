//! The four-weight condition and the containment of `RM(1,m)`.
//!
//! A code of length `n = 2^m` qualifies when its weights are exactly
//! `{0, n/2 - a, n/2, n/2 + a, n}` for some `0 < a < n/2` (condition (1)) and
//! it contains the reference copy of `RM(1,m)` (condition (2)).

use std::fmt;

use serde::Serialize;

use crate::code::{LinearCode, WeightDistribution};
use crate::error::{Error, Result};
use crate::reedmuller::reference_rm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourWeightCertificate {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub a: usize,
    /// `(n / 2a)^2`
    pub l: usize,
    pub expected: WeightDistribution,
    /// Number of cosets of `RM(1,m)` in the code, `2^(k-m-1)`.
    pub set_size: u64,
}

impl FourWeightCertificate {
    /// Nonzero weights a proper coset of `RM(1,m)` may carry.
    pub fn coset_weights(&self) -> [usize; 3] {
        allowed_coset_weights(self.n, self.a)
    }

    pub fn min_weight(&self) -> usize {
        self.n / 2 - self.a
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The weight set is not of the form `{0, n/2±a, n/2, n}`.
    WeightSet { weights: Vec<usize> },
    /// The weight set has the right shape but `a` fails the divisibility or
    /// weighing-matrix bound.
    OffsetNotAdmissible { a: usize },
    /// The code does not contain the reference `RM(1,m)`.
    MissingReedMuller { m: usize },
}

fn fmt_set(ws: &[usize]) -> String {
    let parts: Vec<String> = ws.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WeightSet { weights } => {
                write!(f, "condition (1): weight set {}", fmt_set(weights))
            }
            Violation::OffsetNotAdmissible { a } => {
                write!(f, "condition (1): offset a={a} is not admissible")
            }
            Violation::MissingReedMuller { m } => {
                write!(f, "condition (2): code does not contain RM(1,{m})")
            }
        }
    }
}

/// Full outcome of [`check_conditions`], including failures.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionCheck {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub weight_set: Vec<usize>,
    pub distribution: WeightDistribution,
    pub c1: bool,
    pub c2: bool,
    pub violations: Vec<Violation>,
    pub certificate: Option<FourWeightCertificate>,
}

impl ConditionCheck {
    pub fn passed(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn into_certificate(self) -> Result<FourWeightCertificate> {
        self.certificate
            .ok_or(Error::ConditionsFailed(self.violations))
    }
}

/// `m` with `n = 2^m`, requiring `m >= 2`.
pub fn log2_length(n: usize) -> Result<usize> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(n.trailing_zeros() as usize)
}

pub fn allowed_coset_weights(n: usize, a: usize) -> [usize; 3] {
    [n / 2 - a, n / 2, n / 2 + a]
}

/// Extracts `a` when the weight set is exactly `{0, n/2-a, n/2, n/2+a, n}`.
pub fn offset_from_weights(n: usize, weights: &[usize]) -> Option<usize> {
    if !n.is_multiple_of(2) {
        return None;
    }
    let h = n / 2;
    match weights {
        &[0, lo, mid, hi, top] if mid == h && top == n && lo < h && hi == n - lo && lo > 0 => {
            Some(h - lo)
        }
        _ => None,
    }
}

fn is_admissible(n: usize, a: usize) -> bool {
    let half = n / 2;
    a > 0 && a < half && half.is_multiple_of(a) && {
        let r = half / a;
        r * r <= n
    }
}

/// All `a` with `a | 2^(m-1)`, `0 < a < n/2` and `(n/2a)^2 <= n`.
pub fn admissible_offsets(n: usize) -> Result<Vec<usize>> {
    log2_length(n)?;
    Ok((1..n / 2).filter(|&a| is_admissible(n, a)).collect())
}

/// The weight distribution forced on any `[n,k]` code satisfying both
/// conditions with offset `a`.
pub fn expected_distribution(n: usize, m: usize, k: usize, a: usize) -> Result<WeightDistribution> {
    if log2_length(n)? != m {
        return Err(Error::InvalidParameters(format!("n = {n} is not 2^{m}")));
    }
    if k < m + 1 || k > 63 {
        return Err(Error::InvalidParameters(format!(
            "dimension {k} must be at least m + 1 = {}",
            m + 1
        )));
    }
    if !is_admissible(n, a) {
        return Err(Error::InvalidParameters(format!(
            "offset a = {a} is not admissible for n = {n}"
        )));
    }
    let l = (n / (2 * a)).pow(2) as u64;
    let n64 = n as u64;
    let extra = (1u64 << (k - m - 1)) - 1;
    let mut counts = vec![0u64; n + 1];
    counts[0] = 1;
    counts[n] = 1;
    counts[n / 2 - a] = extra * l;
    counts[n / 2 + a] = extra * l;
    counts[n / 2] = 2 * n64 - 2 + extra * (2 * n64 - 2 * l);
    Ok(WeightDistribution::from_counts(counts))
}

/// Decides both conditions, listing every violated clause.
pub fn check_conditions(code: &LinearCode) -> Result<ConditionCheck> {
    let n = code.n();
    let m = log2_length(n)?;
    let distribution = code.weight_distribution()?;
    let weight_set = distribution.support();
    let mut violations = Vec::new();

    let offset = offset_from_weights(n, &weight_set);
    let c1 = offset.is_some();
    if !c1 {
        violations.push(Violation::WeightSet {
            weights: weight_set.clone(),
        });
    }
    let c2 = code.contains(&reference_rm(m)?)?;
    if !c2 {
        violations.push(Violation::MissingReedMuller { m });
    }
    if let Some(a) = offset {
        if !is_admissible(n, a) {
            violations.push(Violation::OffsetNotAdmissible { a });
        }
    }

    let certificate = match offset {
        Some(a) if violations.is_empty() => {
            let expected = expected_distribution(n, m, code.k(), a)?;
            Some(FourWeightCertificate {
                n,
                m,
                k: code.k(),
                a,
                l: (n / (2 * a)).pow(2),
                expected,
                set_size: 1u64 << (code.k() - m - 1),
            })
        }
        _ => None,
    };

    Ok(ConditionCheck {
        n,
        m,
        k: code.k(),
        weight_set,
        distribution,
        c1,
        c2,
        violations,
        certificate,
    })
}

/// Shorthand for `check_conditions(code)?.into_certificate()`.
pub fn certify(code: &LinearCode) -> Result<FourWeightCertificate> {
    check_conditions(code)?.into_certificate()
}
