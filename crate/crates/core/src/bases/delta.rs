use crate::error::Result;
use crate::implication::{Basis, Form, Implication};
use crate::set::ElementSet;
use crate::system::{ClosureSystem, Limits};

use super::canonical_key;

/// The canonical direct unit basis: `X -> y` whenever `y ∈ φ(X) ∖ X` and no
/// proper subset of `X` has `y` in its closure.
///
/// By isotonicity it is enough to test the subsets missing one element.
pub fn build_sigma_delta(system: &ClosureSystem) -> Result<Basis> {
    build_sigma_delta_with(system, &Limits::default())
}

pub fn build_sigma_delta_with(system: &ClosureSystem, limits: &Limits) -> Result<Basis> {
    let table = system.closure_table(limits)?;
    let closure = |x: ElementSet| table[x.bits() as usize];
    let mut implications = Vec::new();
    for x in system.full().subsets() {
        let gained = closure(x) - x;
        if gained.is_empty() {
            continue;
        }
        let from_smaller = x
            .maximal_proper_subsets()
            .fold(ElementSet::empty(), |acc, z| acc | closure(z));
        implications.extend(
            (gained - from_smaller)
                .iter()
                .map(|y| Implication::unit(x, y)),
        );
    }
    implications.sort_by_key(canonical_key);
    Ok(Basis::from_parts_unchecked(
        system.universe().clone(),
        implications,
        Form::Unit,
    ))
}
