use std::collections::HashMap;

use crate::error::Result;
use crate::implication::{Basis, Form, Implication};
use crate::set::ElementSet;
use crate::system::{ClosureSystem, Limits};

/// The Duquenne–Guigues canonical basis in aggregated form:
/// `X -> φ(X) ∖ X` for each quasi-closed `X` that is containment-minimal
/// among the quasi-closed sets with the same closure. Sorted by premise
/// size, then premise mask.
pub fn build_dg_canonical(system: &ClosureSystem, limits: &Limits) -> Result<Basis> {
    let table = system.closure_table(limits)?;
    let closure = |x: ElementSet| table[x.bits() as usize];
    let closed = system.closed_sets();

    let mut by_closure: HashMap<ElementSet, Vec<ElementSet>> = HashMap::new();
    for x in system.full().subsets() {
        let c = closure(x);
        if c == x {
            continue;
        }
        let quasi = closed
            .iter()
            .all(|&z| x.is_subset(z) || closure(z & x) == (z & x));
        if quasi {
            by_closure.entry(c).or_default().push(x);
        }
    }

    let mut implications: Vec<Implication> = by_closure
        .iter()
        .flat_map(|(&c, members)| {
            members
                .iter()
                .filter(|x| !members.iter().any(|w| w.is_proper_subset(**x)))
                .map(move |&x| Implication::new(x, c))
        })
        .collect();
    implications.sort_by_key(|imp| (imp.premise().len(), imp.premise().bits()));
    Ok(Basis::from_parts_unchecked(
        system.universe().clone(),
        implications,
        Form::Aggregated,
    ))
}
