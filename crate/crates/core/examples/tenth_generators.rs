//! Regenerates `data/computed.txt`: a tenth generator for every `[32,10]`
//! code, whose first nine generators are tabulated.
//!
//! Each nine-dimensional base is extended by every admissible coset and the
//! extensions are sorted into equivalence classes. Indices are then matched
//! to classes: index `i` may take any class its base reaches, and every class
//! is used once. Indices are processed in order, each taking the first
//! candidate (in string order of the lightest coset member) that still
//! leaves a perfect matching for the rest.
//!
//!     cargo run --release -p mquwm-core --example tenth_generators > crates/core/data/computed.txt

use std::collections::BTreeMap;

use mquwm::classify::extension_vectors;
use mquwm::paperdata::Registry;
use mquwm::{canonical_form, BitVector, LinearCode};

struct Candidate {
    class: usize,
    x: BitVector,
}

fn lightest_member(base: &LinearCode, x: &BitVector) -> BitVector {
    base.codewords()
        .expect("small code")
        .iter()
        .map(|c| c.add(x).expect("same length"))
        .min_by_key(|v| (v.weight(), *v))
        .expect("nonempty coset")
}

/// One augmenting-path step of bipartite matching from index `i`.
fn try_assign(
    i: usize,
    edges: &[Vec<usize>],
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &c in &edges[i] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if owner[c].is_none_or(|j| try_assign(j, edges, owner, seen)) {
            owner[c] = Some(i);
            return true;
        }
    }
    false
}

fn perfect(edges: &[Vec<usize>], classes: usize) -> bool {
    let mut owner = vec![None; classes];
    (0..edges.len()).all(|i| try_assign(i, edges, &mut owner, &mut vec![false; classes]))
}

fn main() {
    let reg = Registry::builtin();
    let family = reg.family(32, Some(10));
    let mut keys: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut options: Vec<Vec<Candidate>> = Vec::new();
    for entry in &family {
        let base = reg.build_prefix(entry, 3).expect("tabulated base");
        let mut opts: Vec<Candidate> = extension_vectors(&base, entry.a())
            .expect("extensions")
            .iter()
            .map(|x| {
                let code = base.extend(x).expect("extension");
                let key = canonical_form(&code).expect("canonical form").key.0;
                let next = keys.len();
                Candidate {
                    class: *keys.entry(key).or_insert(next),
                    x: lightest_member(&base, x),
                }
            })
            .collect();
        opts.sort_by_key(|o| o.x);
        options.push(opts);
    }
    let classes = keys.len();
    eprintln!("{} indices, {} classes reachable", family.len(), classes);

    let mut edges: Vec<Vec<usize>> = options.iter().map(|o| o.iter().map(|o| o.class).collect()).collect();
    assert!(perfect(&edges, classes), "no perfect matching");
    let mut forced = 0;
    let mut chosen = Vec::new();
    for i in 0..family.len() {
        let mut viable = Vec::new();
        for o in &options[i] {
            if chosen.iter().any(|&(c, _): &(usize, BitVector)| c == o.class) {
                continue;
            }
            let mut trial = edges.clone();
            trial[i] = vec![o.class];
            for (j, e) in trial.iter_mut().enumerate() {
                if j != i {
                    e.retain(|&c| c != o.class);
                }
            }
            if perfect(&trial, classes) {
                viable.push((o.class, o.x));
            }
        }
        if viable.iter().map(|v| v.0).collect::<std::collections::BTreeSet<_>>().len() == 1 {
            forced += 1;
        }
        let (class, x) = viable[0];
        chosen.push((class, x));
        edges[i] = vec![class];
        for (j, e) in edges.iter_mut().enumerate() {
            if j != i {
                e.retain(|&c| c != class);
            }
        }
    }
    eprintln!("{forced} of {} assignments forced", family.len());

    println!("# Tenth generators of the [32,10] codes, found by search.");
    println!("# Not tabulated; regenerate with the tenth_generators example.");
    for (entry, (_, x)) in family.iter().zip(&chosen) {
        let w = entry.generators.last().expect("four generators");
        let id = match w {
            mquwm::paperdata::Generator::Named(id) => id,
            _ => unreachable!("tenth generator is named"),
        };
        let support: Vec<String> = x.support().iter().map(ToString::to_string).collect();
        println!("vector {id} 32 {}", support.join(" "));
    }
}
