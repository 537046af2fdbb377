//! Closure computation from a list of implications.
//!
//! Four strategies are provided. All of them count *checks*: one unit each
//! time an implication is attended, i.e. its premise is tested against the
//! growing set (for forward chaining, each countdown of a premise counter).
//!
//! * [`folklore_closure`] sweeps the whole list repeatedly until a sweep adds
//!   nothing. It needs at least two sweeps whenever the input grows.
//! * [`ordered_iteration`] sweeps the list exactly once, in list order. It
//!   returns the closure only for ordered direct lists.
//! * [`ForwardChaining`] keeps, per element, the implications whose premise
//!   mentions it, and a per-implication countdown of unmet premise elements.
//! * [`wild_closure`] repeatedly splits the pending implications into the
//!   applicable and the not-yet-applicable ones and fires all applicable
//!   ones at once.

use crate::implication::Implication;
use crate::set::ElementSet;

/// Result of a closure computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub closure: ElementSet,
    /// Implications attended.
    pub checks: usize,
    /// Full sweeps over the list (1 for single-pass strategies).
    pub passes: usize,
}

/// One unordered sweep: `x` together with the conclusions of every
/// implication whose premise is contained in `x` itself.
pub fn pi_step(implications: &[Implication], x: ElementSet) -> ElementSet {
    implications
        .iter()
        .filter(|imp| imp.premise().is_subset(x))
        .fold(x, |acc, imp| acc | imp.conclusion())
}

pub fn folklore_closure(implications: &[Implication], x: ElementSet) -> Run {
    let mut set = x;
    let mut passes = 0;
    loop {
        passes += 1;
        let before = set;
        for imp in implications {
            if imp.premise().is_subset(set) {
                set |= imp.conclusion();
            }
        }
        if set == before {
            break;
        }
    }
    Run {
        closure: set,
        checks: passes * implications.len(),
        passes,
    }
}

/// Single pass over the list in order; each implication sees the set as
/// grown by the implications before it.
pub fn ordered_iteration(implications: &[Implication], x: ElementSet) -> Run {
    let mut set = x;
    for imp in implications {
        if imp.premise().is_subset(set) {
            set |= imp.conclusion();
        }
    }
    Run {
        closure: set,
        checks: implications.len(),
        passes: 1,
    }
}

/// Ordered iteration repeated until it stabilizes.
pub fn iterated_ordered(implications: &[Implication], x: ElementSet) -> ElementSet {
    let mut set = x;
    loop {
        let next = ordered_iteration(implications, set).closure;
        if next == set {
            return set;
        }
        set = next;
    }
}

pub fn wild_closure(implications: &[Implication], x: ElementSet) -> Run {
    let mut set = x;
    let mut pending: Vec<&Implication> = implications.iter().collect();
    let mut checks = 0;
    let mut passes = 0;
    loop {
        passes += 1;
        checks += pending.len();
        let (applicable, rest): (Vec<&Implication>, Vec<&Implication>) = pending
            .into_iter()
            .partition(|imp| imp.premise().is_subset(set));
        if applicable.is_empty() {
            break;
        }
        for imp in applicable {
            set |= imp.conclusion();
        }
        pending = rest;
    }
    Run {
        closure: set,
        checks,
        passes,
    }
}

/// Preprocessed forward-chaining state.
///
/// `clause_list[i]` holds the implications whose premise contains element
/// `i`; `consequent[j]` is the conclusion of implication `j`. Only the
/// countdowns and the working set change between runs.
#[derive(Clone, Debug)]
pub struct ForwardChaining {
    clause_list: Vec<Vec<usize>>,
    premise_len: Vec<usize>,
    consequent: Vec<ElementSet>,
    propositions: Vec<usize>,
    true_set: ElementSet,
    queue: Vec<usize>,
}

impl ForwardChaining {
    /// Builds clause lists for a universe of `n` elements.
    pub fn new(implications: &[Implication], n: usize) -> Self {
        let mut clause_list = vec![Vec::new(); n];
        for (j, imp) in implications.iter().enumerate() {
            for i in imp.premise() {
                clause_list[i].push(j);
            }
        }
        let premise_len: Vec<usize> = implications.iter().map(|imp| imp.premise().len()).collect();
        ForwardChaining {
            clause_list,
            propositions: premise_len.clone(),
            premise_len,
            consequent: implications.iter().map(Implication::conclusion).collect(),
            true_set: ElementSet::empty(),
            queue: Vec::with_capacity(n),
        }
    }

    /// Remaining unmet premise elements per implication after the last run.
    pub fn propositions(&self) -> &[usize] {
        &self.propositions
    }

    pub fn true_set(&self) -> ElementSet {
        self.true_set
    }

    pub fn clause_list(&self, element: usize) -> &[usize] {
        &self.clause_list[element]
    }

    /// Closes `x`, resetting only the countdowns and the working set.
    pub fn run(&mut self, x: ElementSet) -> Run {
        self.propositions.copy_from_slice(&self.premise_len);
        self.true_set = x;
        self.queue.clear();
        self.queue.extend(x.iter());
        let mut checks = 0;
        // Empty premises fire unconditionally.
        for j in 0..self.premise_len.len() {
            if self.premise_len[j] == 0 {
                checks += 1;
                self.fire(j);
            }
        }
        while let Some(i) = self.queue.pop() {
            for k in 0..self.clause_list[i].len() {
                let j = self.clause_list[i][k];
                checks += 1;
                self.propositions[j] -= 1;
                if self.propositions[j] == 0 {
                    self.fire(j);
                }
            }
        }
        Run {
            closure: self.true_set,
            checks,
            passes: 1,
        }
    }

    fn fire(&mut self, j: usize) {
        let new = self.consequent[j] - self.true_set;
        self.true_set |= new;
        self.queue.extend(new.iter());
    }
}

/// Forward chaining from scratch, or reusing a preprocessed state built
/// for the same implications.
pub fn forward_chaining_closure(
    implications: &[Implication],
    n: usize,
    x: ElementSet,
    reuse: Option<&mut ForwardChaining>,
) -> Run {
    match reuse {
        Some(state) => state.run(x),
        None => ForwardChaining::new(implications, n).run(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> ElementSet {
        ix.iter().copied().collect()
    }

    // 0 -> 1, 1 -> 2, {0,2} -> 3 listed back to front
    fn chain() -> Vec<Implication> {
        vec![
            Implication::unit(set(&[0, 2]), 3),
            Implication::binary(1, 2),
            Implication::binary(0, 1),
        ]
    }

    #[test]
    fn all_strategies_agree_on_a_chain() {
        let imps = chain();
        let want = set(&[0, 1, 2, 3]);
        let f = folklore_closure(&imps, set(&[0]));
        assert_eq!(f.closure, want);
        assert_eq!(f.passes, 4);
        assert_eq!(f.checks, 12);
        assert_eq!(wild_closure(&imps, set(&[0])).closure, want);
        assert_eq!(forward_chaining_closure(&imps, 4, set(&[0]), None).closure, want);
        assert_eq!(iterated_ordered(&imps, set(&[0])), want);
        // one ordered sweep only reaches 1
        let single = ordered_iteration(&imps, set(&[0]));
        assert_eq!(single.closure, set(&[0, 1]));
        assert_eq!(single.checks, 3);
    }

    #[test]
    fn empty_list_returns_input() {
        let x = set(&[1, 3]);
        let f = folklore_closure(&[], x);
        assert_eq!((f.closure, f.passes, f.checks), (x, 1, 0));
        assert_eq!(ordered_iteration(&[], x).closure, x);
        assert_eq!(wild_closure(&[], x).closure, x);
        assert_eq!(forward_chaining_closure(&[], 4, x, None).closure, x);
    }

    #[test]
    fn empty_premise_fires() {
        let imps = vec![
            Implication::new(ElementSet::empty(), set(&[2])),
            Implication::binary(2, 0),
        ];
        let want = set(&[0, 2]);
        assert_eq!(folklore_closure(&imps, ElementSet::empty()).closure, want);
        assert_eq!(ordered_iteration(&imps, ElementSet::empty()).closure, want);
        assert_eq!(wild_closure(&imps, ElementSet::empty()).closure, want);
        assert_eq!(forward_chaining_closure(&imps, 3, ElementSet::empty(), None).closure, want);
    }

    #[test]
    fn forward_chaining_state_is_reusable() {
        let imps = chain();
        let mut state = ForwardChaining::new(&imps, 4);
        assert_eq!(state.clause_list(0), &[0, 2]);
        let a = state.run(set(&[0])).closure;
        let b = state.run(set(&[2])).closure;
        let c = state.run(set(&[0])).closure;
        assert_eq!(a, c);
        assert_eq!(b, set(&[2]));
        assert_eq!(state.true_set(), a);
        // implication 2 (0 -> 1) fired, so its countdown reached zero
        assert_eq!(state.propositions()[2], 0);
    }

    #[test]
    fn aggregated_conclusions_are_added_atomically() {
        let imps = vec![Implication::new(set(&[0]), set(&[1, 2])), Implication::unit(set(&[1, 2]), 3)];
        assert_eq!(forward_chaining_closure(&imps, 4, set(&[0]), None).closure, set(&[0, 1, 2, 3]));
        assert_eq!(wild_closure(&imps, set(&[0])).closure, set(&[0, 1, 2, 3]));
    }

    #[test]
    fn pi_is_contained_in_rho() {
        let imps = chain();
        for x in ElementSet::full(4).subsets() {
            assert!(pi_step(&imps, x).is_subset(ordered_iteration(&imps, x).closure));
        }
    }
}
