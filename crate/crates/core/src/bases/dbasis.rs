use std::collections::HashSet;

use crate::closure::{ordered_iteration, Run};
use crate::error::Result;
use crate::implication::{Basis, Form, Implication};
use crate::reduction::require_reduced;
use crate::set::ElementSet;
use crate::structure::{poset_from_singletons, CoverContext};
use crate::system::{ClosureSystem, Limits};

use super::canonical_key;

/// The D-basis of a reduced system, binary implications first.
pub fn build_d_basis(system: &ClosureSystem) -> Result<Basis> {
    build_d_basis_with(system, &Limits::default())
}

pub fn build_d_basis_with(system: &ClosureSystem, limits: &Limits) -> Result<Basis> {
    require_reduced(system)?;
    let ctx = CoverContext::new(system, limits)?;
    let mut implications = binary_part_of(&ctx.singletons);
    let mut covers: Vec<Implication> = (0..system.len())
        .flat_map(|x| {
            ctx.minimal_covers(x)
                .into_iter()
                .map(move |cover| Implication::unit(cover, x))
        })
        .collect();
    covers.sort_by_key(canonical_key);
    implications.extend(covers);
    Ok(Basis::from_parts_unchecked(
        system.universe().clone(),
        implications,
        Form::Unit,
    ))
}

/// `y -> x` for every `x ∈ φ(y) ∖ {y}`, by premise then conclusion.
pub(crate) fn binary_part_of(singletons: &[ElementSet]) -> Vec<Implication> {
    singletons
        .iter()
        .enumerate()
        .flat_map(|(y, c)| c.without(y).iter().map(move |x| Implication::binary(y, x)))
        .collect()
}

/// Extracts the D-basis from a direct unit basis of a reduced system by
/// discarding every non-binary `X -> x` that is not a minimal cover.
///
/// Each comparison between two candidate covers `X1 -> x`, `X2 -> x` runs
/// the binary implications followed by `X1 -> x` on `X2`: `x` appears iff
/// `X1 ≪ X2` or `x` lies below an element of `X2`.
pub fn extract_d_basis(direct: &Basis) -> Basis {
    let units = direct.unit_expansion();
    let mut seen = HashSet::new();
    let units: Vec<Implication> = units
        .iter()
        .copied()
        .filter(|imp| seen.insert(*imp))
        .collect();
    let binary: Vec<Implication> = units.iter().filter(|i| i.is_binary()).copied().collect();
    let candidates: Vec<Implication> = units.iter().filter(|i| !i.is_binary()).copied().collect();

    let mut kept = Vec::with_capacity(candidates.len());
    for (k, imp) in candidates.iter().enumerate() {
        let x = imp.target().expect("unit");
        let premise = imp.premise();
        // x below some y in the premise
        if ordered_iteration(&binary, premise).closure.contains(x) {
            continue;
        }
        let mut probe = binary.clone();
        probe.push(Implication::unit(ElementSet::empty(), x));
        let dominated = candidates.iter().enumerate().any(|(j, other)| {
            if j == k || other.target() != Some(x) || other.premise() == premise {
                return false;
            }
            let last = probe.len() - 1;
            probe[last] = *other;
            let refines = ordered_iteration(&probe, premise).closure.contains(x);
            refines && !premise.is_subset(other.premise())
        });
        if !dominated {
            kept.push(*imp);
        }
    }
    let mut implications = binary;
    implications.extend(kept);
    Basis::from_parts_unchecked(direct.universe().clone(), implications, Form::Unit)
}

/// Every binary implication precedes every non-binary one.
pub fn order_is_valid_d(implications: &[Implication]) -> bool {
    let first_non_binary = implications
        .iter()
        .position(|imp| !imp.is_binary())
        .unwrap_or(implications.len());
    implications[first_non_binary..]
        .iter()
        .all(|imp| !imp.is_binary())
}

/// Binary covers `y -> x` of the element order, grouped by premise and
/// listed from the top of a linear extension down.
fn ordered_covers(singletons: &[ElementSet]) -> Vec<Implication> {
    let poset = poset_from_singletons(singletons);
    let mut out = Vec::with_capacity(poset.cover_relation.len());
    for &upper in poset.linear_extension.iter().rev() {
        out.extend(
            poset
                .cover_relation
                .iter()
                .filter(|(u, _)| *u == upper)
                .map(|&(u, l)| Implication::binary(u, l)),
        );
    }
    out
}

/// Replaces the binary part by the covering pairs of the element order, in
/// an order under which a single sweep still reaches everything below each
/// singleton. Non-binary implications follow, in their original order.
pub fn optimize_binary(basis: &Basis, system: &ClosureSystem) -> Basis {
    let mut implications = ordered_covers(&system.singleton_closures());
    implications.extend(basis.iter().filter(|imp| !imp.is_binary()).copied());
    Basis::from_parts_unchecked(basis.universe().clone(), implications, Form::Unit)
}

/// An ordered list of implications taken from a basis, possibly with
/// repetitions, evaluated by a single ordered sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSequence {
    pub steps: Vec<Implication>,
    pub source: Basis,
}

impl OrderedSequence {
    pub fn evaluate(&self, x: ElementSet) -> Run {
        ordered_iteration(&self.steps, x)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn as_basis(&self) -> Basis {
        Basis::from_parts_unchecked(self.source.universe().clone(), self.steps.clone(), Form::Unit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPlus {
    /// The reduced basis: ordered binary covers, then the kept non-binary
    /// implications.
    pub basis: Basis,
    /// Binary covers, kept non-binary implications, then the binary covers
    /// needed to push removed conclusions down from the kept ones.
    pub sequence: OrderedSequence,
}

/// Shrinks a D-basis by dropping
///
/// * `A -> x` when `A -> y` and `y -> x` are present, and
/// * `z -> x` when `z -> y` and `y -> x` are present,
///
/// and builds the ordered direct sequence that compensates for the first
/// kind of removal with a trailing block of binary covers.
pub fn build_d_plus(d_basis: &Basis, system: &ClosureSystem) -> DPlus {
    let units = d_basis.unit_expansion();
    let singletons = system.singleton_closures();
    // x ≤ y
    let below = |x: usize, y: usize| singletons[y].contains(x);

    let binary: HashSet<(usize, usize)> = units
        .iter()
        .filter(|imp| imp.is_binary())
        .map(|imp| (imp.premise().first().unwrap(), imp.target().unwrap()))
        .collect();
    let non_binary: Vec<Implication> = units.iter().filter(|imp| !imp.is_binary()).copied().collect();
    let conclusions_of = |premise: ElementSet| -> ElementSet {
        non_binary
            .iter()
            .filter(|imp| imp.premise() == premise)
            .fold(ElementSet::empty(), |acc, imp| acc | imp.conclusion())
    };

    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for imp in &non_binary {
        let x = imp.target().expect("unit");
        let siblings = conclusions_of(imp.premise());
        if siblings.iter().any(|y| binary.contains(&(y, x))) {
            removed.push(*imp);
        } else {
            kept.push(*imp);
        }
    }

    let sigma1 = ordered_covers(&singletons);
    let cover_set: HashSet<Implication> = sigma1.iter().copied().collect();

    // One chain of covers per removed implication, from a kept conclusion of
    // the same premise down to the removed conclusion.
    let mut needed: HashSet<Implication> = HashSet::new();
    for imp in &removed {
        let x = imp.target().expect("unit");
        let top = kept
            .iter()
            .filter(|k| k.premise() == imp.premise())
            .filter_map(|k| k.target())
            .find(|&y| y != x && below(x, y))
            .expect("a removed conclusion lies below a kept one");
        let mut current = top;
        while current != x {
            let step = sigma1
                .iter()
                .filter(|c| c.premise().first() == Some(current))
                .filter_map(|c| c.target())
                .find(|&c| below(x, c))
                .expect("cover chain reaches every element below");
            needed.insert(Implication::binary(current, step));
            current = step;
        }
    }
    debug_assert!(needed.iter().all(|imp| cover_set.contains(imp)));
    let sigma3: Vec<Implication> = sigma1.iter().filter(|c| needed.contains(c)).copied().collect();

    let mut basis_imps = sigma1.clone();
    basis_imps.extend(kept.iter().copied());
    let basis = Basis::from_parts_unchecked(d_basis.universe().clone(), basis_imps.clone(), Form::Unit);
    let mut steps = basis_imps;
    steps.extend(sigma3);
    DPlus {
        sequence: OrderedSequence {
            steps,
            source: basis.clone(),
        },
        basis,
    }
}
