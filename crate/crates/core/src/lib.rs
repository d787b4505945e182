//! Binary linear codes whose weights take four values around `n/2`, and the
//! quasi-unbiased weighing matrices built from them.
//!
//! The crate covers weight distributions, covering radii, code equivalence
//! via canonical forms, maximality, classification by extension, and the
//! construction and exact verification of weighing-matrix sets.

pub mod classify;
pub mod code;
pub mod covrad;
pub mod equivalence;
pub mod error;
pub mod fourweight;
pub mod gf2;
pub mod paperdata;
pub mod quwm;
pub mod reedmuller;

pub use classify::{classify_all, classify_step, ClassEntry, ClassificationReport, ClassifyOptions, Seed};
pub use code::{coset_table, CosetTable, Divisibility, LinearCode, WeightDistribution};
pub use covrad::{covering_radius, is_maximal, CosetLeaderProfile, Maximality, MaximalityPath};
pub use equivalence::{are_equivalent, canonical_form, equivalence_witness, CanonicalForm, CanonicalKey};
pub use error::{Error, Result};
pub use fourweight::{certify, check_conditions, expected_distribution, ConditionCheck, FourWeightCertificate, Violation};
pub use gf2::BitVector;
pub use quwm::{build_quwm_set, QuwmParams, QuwmSet, SignMatrix};
pub use reedmuller::{reference_rm, rm1, rm1_fixed};
pub use paperdata::{load_code, verify_paper, PaperReport, Registry, Scope};
