#![allow(dead_code)]

use closure_basis::io::{parse_family, parse_implications};
use closure_basis::{Basis, ClosureSystem, ElementSet, Implication, Universe};

pub const TEN_SETS: &str = include_str!("../../../../data/ten-sets.fam");
pub const LOWER_BOUNDED: &str = include_str!("../../../../data/lower-bounded.fam");
pub const LOWER_BOUNDED_D: &str = include_str!("../../../../data/lower-bounded-d.imp");
pub const D_CYCLE: &str = include_str!("../../../../data/d-cycle.imp");
pub const AGGREGATED_UNORDERABLE: &str = include_str!("../../../../data/aggregated-unorderable.fam");
pub const AGGREGATED_UNORDERABLE_CANONICAL: &str =
    include_str!("../../../../data/aggregated-unorderable-canonical.imp");
pub const UNORDERABLE: &str = include_str!("../../../../data/unorderable.fam");
pub const COVER_CHAIN: &str = include_str!("../../../../data/cover-chain.imp");
pub const N5: &str = include_str!("../../../../data/n5.fam");
pub const FIVE_POINTS: &str = include_str!("../../../../data/five-points.fam");

pub fn family(text: &str) -> ClosureSystem {
    parse_family(text).expect("fixture parses")
}

pub fn basis(text: &str) -> Basis {
    parse_implications(text, None).expect("fixture parses")
}

/// `"23"` is the set {2, 3} over single-character labels; `""` is empty.
pub fn set(u: &Universe, compact: &str) -> ElementSet {
    compact
        .chars()
        .map(|c| u.index_of(&c.to_string()).expect("known label"))
        .collect()
}

/// `"5>4 23>4 12>46"` over single-character labels.
pub fn imps(u: &Universe, compact: &str) -> Vec<Implication> {
    compact
        .split_whitespace()
        .map(|pair| {
            let (p, c) = pair.split_once('>').expect("premise>conclusion");
            Implication::new(set(u, p), set(u, c))
        })
        .collect()
}

/// Sorted unit expansion of a compact list, for multiset comparison.
pub fn unit_multiset(u: &Universe, compact: &str) -> Vec<Implication> {
    Basis::infer(u.clone(), imps(u, compact))
        .expect("valid list")
        .unit_multiset()
}

/// The system generated by a basis given in a text fixture.
pub fn system_of(text: &str) -> ClosureSystem {
    let b = basis(text);
    closure_basis::horn::system_from_basis(&b, &closure_basis::Limits::default()).unwrap()
}
