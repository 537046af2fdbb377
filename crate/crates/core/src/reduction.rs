//! Reduced and standard closure systems.
//!
//! A system is *reduced* when distinct elements have distinct singleton
//! closures, and *standard* when in addition `φ(∅) = ∅` and `φ({i}) ∖ {i}`
//! is closed for every element `i`. [`reduce_system`] strips `φ(∅)` and
//! keeps one representative (the lowest index) per class of elements with
//! equal closures; [`standardize_system`] then drops elements whose
//! singleton closure minus themselves is not closed, repeating until none
//! remain. Both preserve the lattice of closed sets.

use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::system::ClosureSystem;

/// How the elements of an original system relate to a derived one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    /// `φ(∅)` of the original system.
    pub removed_zero: ElementSet,
    /// Per original element, the original element representing its class,
    /// or `None` for members of `removed_zero`.
    pub class_representative: Vec<Option<usize>>,
    /// Representatives dropped while standardizing.
    pub dropped_nonstandard: ElementSet,
    /// Per original element, its index in the derived universe, if kept.
    pub index_in_output: Vec<Option<usize>>,
}

impl ReductionMap {
    pub fn identity(n: usize) -> Self {
        ReductionMap {
            removed_zero: ElementSet::empty(),
            class_representative: (0..n).map(Some).collect(),
            dropped_nonstandard: ElementSet::empty(),
            index_in_output: (0..n).map(Some).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.removed_zero.is_empty()
            && self.dropped_nonstandard.is_empty()
            && self
                .index_in_output
                .iter()
                .enumerate()
                .all(|(i, o)| *o == Some(i))
    }

    /// Elements of the original universe absent from the derived one.
    pub fn discarded(&self) -> ElementSet {
        self.index_in_output
            .iter()
            .enumerate()
            .filter(|(_, o)| o.is_none())
            .map(|(i, _)| i)
            .collect()
    }

    /// Image of an original set in the derived universe: every element is
    /// replaced by its class representative, and discarded representatives
    /// are dropped.
    pub fn map_set(&self, original: ElementSet) -> ElementSet {
        original
            .iter()
            .filter_map(|i| self.class_representative[i])
            .filter_map(|r| self.index_in_output[r])
            .collect()
    }

    /// Original closed set corresponding to a closed set of a reduced (not
    /// standardized) system: classes expanded, `φ(∅)` added back.
    pub fn lift_closed(&self, derived: ElementSet) -> ElementSet {
        let mut out = self.removed_zero;
        for (i, rep) in self.class_representative.iter().enumerate() {
            if let Some(r) = rep {
                if let Some(o) = self.index_in_output[*r] {
                    if derived.contains(o) {
                        out.insert(i);
                    }
                }
            }
        }
        out
    }

    /// Composition: `self` maps A to B, `next` maps B to C.
    pub fn then(&self, next: &ReductionMap) -> ReductionMap {
        let mut out_index = vec![None; self.index_in_output.len()];
        let mut dropped = self.dropped_nonstandard;
        for (i, idx) in self.index_in_output.iter().enumerate() {
            if let Some(b) = idx {
                // representatives of B are B-indices; translate back through
                // next's representative of b.
                match next.class_representative[*b].and_then(|r| next.index_in_output[r]) {
                    Some(c) if next.index_in_output[*b].is_some() => out_index[i] = Some(c),
                    _ => {
                        if next.dropped_nonstandard.contains(*b) {
                            dropped.insert(i);
                        }
                    }
                }
            }
        }
        ReductionMap {
            removed_zero: self.removed_zero,
            class_representative: self.class_representative.clone(),
            dropped_nonstandard: dropped,
            index_in_output: out_index,
        }
    }
}

/// Property (3): distinct elements have distinct singleton closures.
pub fn is_reduced(system: &ClosureSystem) -> bool {
    let closures = system.singleton_closures();
    let mut sorted = closures.clone();
    sorted.sort();
    sorted.dedup();
    sorted.len() == closures.len()
}

/// `φ(∅) = ∅` and `φ({i}) ∖ {i}` closed for every `i`.
pub fn is_standard(system: &ClosureSystem) -> bool {
    system.is_closed(ElementSet::empty())
        && (0..system.len()).all(|i| system.is_closed(system.element_closure(i).without(i)))
}

/// Reduced with `φ(∅) = ∅`: what the basis constructions require.
pub fn require_reduced(system: &ClosureSystem) -> Result<()> {
    if !system.is_closed(ElementSet::empty()) {
        return Err(Error::NotReduced("closure of the empty set is not empty".into()));
    }
    let closures = system.singleton_closures();
    for i in 0..closures.len() {
        for j in 0..i {
            if closures[i] == closures[j] {
                return Err(Error::NotReduced(format!(
                    "elements `{}` and `{}` have the same closure",
                    system.universe().label(j),
                    system.universe().label(i)
                )));
            }
        }
    }
    Ok(())
}

fn restrict(system: &ClosureSystem, keep: ElementSet) -> ClosureSystem {
    let universe = system.universe().restrict(keep);
    let closed = system
        .closed_sets()
        .iter()
        .map(|&c| compress(c & keep, keep))
        .collect();
    ClosureSystem::from_closed_unchecked(universe, closed)
}

/// Re-index the members of `set` (a subset of `keep`) densely.
fn compress(set: ElementSet, keep: ElementSet) -> ElementSet {
    keep.iter()
        .enumerate()
        .filter(|(_, orig)| set.contains(*orig))
        .map(|(new, _)| new)
        .collect()
}

fn dense_index(n: usize, keep: ElementSet) -> Vec<Option<usize>> {
    let mut out = vec![None; n];
    for (new, orig) in keep.iter().enumerate() {
        out[orig] = Some(new);
    }
    out
}

/// Strips `φ(∅)` and collapses elements with equal closures onto the
/// lowest-index member of their class.
pub fn reduce_system(system: &ClosureSystem) -> (ClosureSystem, ReductionMap) {
    let n = system.len();
    let zero = system.closure(ElementSet::empty());
    let closures = system.singleton_closures();
    let mut representative = vec![None; n];
    let mut keep = ElementSet::empty();
    for i in (0..n).filter(|&i| !zero.contains(i)) {
        let rep = (0..i)
            .find(|&j| !zero.contains(j) && closures[j] == closures[i])
            .unwrap_or(i);
        representative[i] = Some(rep);
        if rep == i {
            keep.insert(i);
        }
    }
    let reduced = restrict(system, keep);
    let map = ReductionMap {
        removed_zero: zero,
        class_representative: representative,
        dropped_nonstandard: ElementSet::empty(),
        index_in_output: dense_index(n, keep),
    };
    (reduced, map)
}

/// Drops elements `u` with `φ({u}) ∖ {u}` not closed until every remaining
/// element passes. The input must be reduced with `φ(∅) = ∅`.
pub fn standardize_system(system: &ClosureSystem) -> Result<(ClosureSystem, ReductionMap)> {
    require_reduced(system)?;
    let n = system.len();
    let mut current = system.clone();
    // original indices of the current universe, in order
    let mut alive = system.full();
    loop {
        let bad: ElementSet = (0..current.len())
            .filter(|&u| !current.is_closed(current.element_closure(u).without(u)))
            .collect();
        if bad.is_empty() {
            break;
        }
        let keep = current.full() - bad;
        let originals: Vec<usize> = alive.iter().collect();
        alive = keep.iter().map(|k| originals[k]).collect();
        current = restrict(&current, keep);
    }
    let map = ReductionMap {
        removed_zero: ElementSet::empty(),
        class_representative: (0..n).map(Some).collect(),
        dropped_nonstandard: system.full() - alive,
        index_in_output: dense_index(n, alive),
    };
    Ok((current, map))
}

/// [`reduce_system`] followed by [`standardize_system`], with the maps
/// composed.
pub fn standard_form(system: &ClosureSystem) -> (ClosureSystem, ReductionMap) {
    let (reduced, first) = reduce_system(system);
    let (standard, second) =
        standardize_system(&reduced).expect("reduce_system output is reduced");
    (standard, first.then(&second))
}
