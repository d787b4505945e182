mod common;

use common::*;
use mquwm::classify::{classify_all, ClassifyOptions};
use mquwm::paperdata::Registry;
use mquwm::quwm::{build_quwm_set_randomized, inner, psi};
use mquwm::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every code of length at most 16 the crate knows about, plus a few
/// random ones.
fn small_codes() -> Vec<(String, LinearCode)> {
    let reg = Registry::builtin();
    let mut out: Vec<(String, LinearCode)> = reg
        .codes()
        .iter()
        .filter(|c| c.n <= 16)
        .map(|c| (c.id.clone(), reg.load_code(&c.id).unwrap()))
        .collect();
    for n in [8, 16] {
        for r in classify_all(n, ClassifyOptions::default()).unwrap() {
            for (i, c) in r.classes.iter().enumerate() {
                out.push((format!("class [{n},{}] #{i}", r.k), c.code.clone()));
            }
        }
    }
    out.push(("RM(1,3)".into(), rm1(3).unwrap()));
    out.push(("RM(1,4)".into(), rm1(4).unwrap()));
    out.push(("even [12,11]".into(), LinearCode::even_weight(12).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, k) in [(10, 4), (12, 5), (14, 6), (16, 7), (9, 3), (13, 8)] {
        out.push((format!("random [{n},{k}]"), random_code(n, k, &mut rng)));
    }
    out
}

#[test]
fn covering_radius_matches_brute_force() {
    for (name, code) in small_codes() {
        assert_eq!(covering_radius(&code).unwrap(), brute_covering_radius(&code), "{name}");
    }
}

#[test]
fn coset_minimum_weights_peak_at_covering_radius() {
    let full = LinearCode::full(16).unwrap();
    for id in ["C_{16,6,1}", "C_{16,7,2}"] {
        let code = load_code(id).unwrap();
        let table = coset_table(&full, &code).unwrap();
        assert_eq!(table.len(), 1 << (16 - code.k()));
        let max = table.min_weights().into_iter().max().unwrap();
        assert_eq!(max, covering_radius(&code).unwrap(), "{id}");
    }
}

#[test]
fn histogram_is_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in ["C_{16,6,1}", "C_{16,7,1}", "C_{16,8,2}"] {
        let code = load_code(id).unwrap();
        let h = CosetLeaderProfile::compute(&code).unwrap().histogram();
        for _ in 0..5 {
            let p = random_perm(16, &mut rng);
            assert_eq!(CosetLeaderProfile::compute(&code.permute(&p)).unwrap().histogram(), h);
        }
    }
}

#[test]
fn weight_distribution_matches_popcount() {
    for (name, code) in small_codes() {
        assert_eq!(code.weight_distribution().unwrap().counts(), brute_distribution(&code), "{name}");
    }
}

#[test]
fn canonical_keys_agree_with_brute_force_equivalence() {
    let codes = small_codes();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (i, (na, a)) in codes.iter().enumerate() {
        let p = random_perm(a.n(), &mut rng);
        let b = a.permute(&p);
        assert!(brute_equivalence(a, &b).is_some(), "{na} vs its permutation");
        assert_eq!(canonical_form(a).unwrap().key, canonical_form(&b).unwrap().key, "{na}");
        for (nb, other) in &codes[i + 1..] {
            if other.n() != a.n() || other.k() != a.k() {
                continue;
            }
            let brute = brute_equivalence(a, other).is_some();
            let keyed = canonical_form(a).unwrap().key == canonical_form(other).unwrap().key;
            assert_eq!(brute, keyed, "{na} vs {nb}");
        }
    }
}

#[test]
fn equivalence_witness_maps_one_code_onto_the_other() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, code) in small_codes() {
        let p = random_perm(code.n(), &mut rng);
        let other = code.permute(&p);
        let w = equivalence_witness(&code, &other).unwrap().expect(&name);
        assert_eq!(code.permute(&w), other, "{name}");
    }
}

#[test]
fn canonical_key_invariant_under_hundred_permutations() {
    let mut ids = vec!["C_{8,5}", "C_{16,6,1}", "C_{16,6,2}", "C_{16,7,1}", "C_{16,8,1}", "C_{16,8,2}"];
    ids.extend(["C_{32,9,1}", "C_{32,9,92}", "C_{32,10,102}", "C_{32,11,2}"]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for id in ids {
        let code = load_code(id).unwrap();
        let key = canonical_form(&code).unwrap().key;
        for _ in 0..100 {
            let p = random_perm(code.n(), &mut rng);
            let f = canonical_form(&code.permute(&p)).unwrap();
            assert_eq!(f.key, key, "{id}");
        }
    }
}

#[test]
fn canonical_form_witness_reproduces_key() {
    for id in ["C_{16,7,2}", "C_{32,9,91}"] {
        let code = load_code(id).unwrap();
        let f = canonical_form(&code).unwrap();
        let image = f.apply(&code);
        assert_eq!(canonical_form(&image).unwrap().key, f.key);
        let rows = image.basis();
        assert_eq!(f.key.0[1] as usize, rows.len());
    }
}

#[test]
fn equal_keys_imply_equal_distributions() {
    let codes = small_codes();
    for (na, a) in &codes {
        for (nb, b) in &codes {
            if a.n() == b.n() && canonical_form(a).unwrap().key == canonical_form(b).unwrap().key {
                assert_eq!(a.weight_distribution().unwrap(), b.weight_distribution().unwrap(), "{na} {nb}");
            }
        }
    }
}

#[test]
fn psi_inner_product_identity_exhaustive_length_8() {
    for x in 0u64..256 {
        for y in 0u64..256 {
            let (u, v) = (BitVector::from_bits(8, x).unwrap(), BitVector::from_bits(8, y).unwrap());
            let d = u.add(&v).unwrap().weight() as i64;
            assert_eq!(inner(&psi(&u), &psi(&v)), 8 - 2 * d);
        }
    }
}

#[test]
fn psi_inner_product_identity_random_length_32() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..10_000 {
        let u = BitVector::from_bits(32, rng.random::<u32>() as u64).unwrap();
        let v = BitVector::from_bits(32, rng.random::<u32>() as u64).unwrap();
        let d = u.add(&v).unwrap().weight() as i64;
        assert_eq!(inner(&psi(&u), &psi(&v)), 32 - 2 * d);
    }
}

#[test]
fn randomized_antipodal_choice_still_verifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for id in ["C_{8,5}", "C_{16,7,1}", "C_{16,8,1}", "C_{32,9,1}"] {
        let code = load_code(id).unwrap();
        let set = build_quwm_set_randomized(&code, &mut rng).unwrap();
        let v = set.verify();
        assert!(v.all_pass, "{id}: {:?}", v.failures);
        assert_eq!(set.len() as u64, 1 << (code.k() - log2(code.n()) - 1));
    }
}

fn log2(n: usize) -> usize {
    n.trailing_zeros() as usize
}

#[test]
fn quwm_construction_is_deterministic() {
    let code = load_code("C_{16,8,2}").unwrap();
    let a = build_quwm_set(&code).unwrap();
    let b = build_quwm_set(&code).unwrap();
    assert_eq!(a.matrices, b.matrices);
}

#[test]
fn zero_entries_per_row_equal_n_minus_l() {
    for id in ["C_{16,6,1}", "C_{16,8,1}", "C_{32,9,1}"] {
        let code = load_code(id).unwrap();
        let set = build_quwm_set(&code).unwrap();
        let v = set.verify();
        assert_eq!(v.zero_count_per_row, Some(set.params.n - set.params.l), "{id}");
    }
}

#[test]
fn offset_preserved_by_arbitrary_permutation_but_containment_may_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let code = load_code("C_{16,7,1}").unwrap();
    let base = check_conditions(&code).unwrap();
    let mut lost_containment = false;
    for _ in 0..50 {
        let p = random_perm(16, &mut rng);
        let c = check_conditions(&code.permute(&p)).unwrap();
        assert!(c.c1);
        assert_eq!(c.weight_set, base.weight_set);
        lost_containment |= !c.c2;
    }
    assert!(lost_containment, "a random permutation should move RM(1,4)");
}

#[test]
fn rm_automorphism_keeps_certificate() {
    // Coordinate translations x -> x + e of the affine space fix RM(1,m).
    let code = load_code("C_{16,6,1}").unwrap();
    let cert = certify(&code).unwrap();
    for shift in 1..16usize {
        let p: Vec<usize> = (0..16).map(|i| i ^ shift).collect();
        assert_eq!(reference_rm(4).unwrap().permute(&p), reference_rm(4).unwrap());
        let c2 = certify(&code.permute(&p)).unwrap();
        assert_eq!((c2.a, c2.l), (cert.a, cert.l));
    }
}
