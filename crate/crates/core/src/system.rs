//! Closure systems given by their family of closed sets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::set::{ElementSet, Universe};

/// Bounds on the exhaustive operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe for which `2^n` subsets may be enumerated.
    pub universe_cap: usize,
    /// Largest basis handed to the ordering search.
    pub search_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            universe_cap: 20,
            search_cap: 10,
        }
    }
}

impl Limits {
    pub fn check_universe(&self, n: usize) -> Result<()> {
        if n > self.universe_cap {
            Err(Error::LimitExceeded {
                size: n,
                limit: self.universe_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// A universe together with an intersection-closed family containing it.
///
/// The family is kept sorted by mask value and free of duplicates.
/// Equality compares universes and families only.
#[derive(Clone, Debug)]
pub struct ClosureSystem {
    universe: Universe,
    closed: Vec<ElementSet>,
    completed: bool,
}

impl PartialEq for ClosureSystem {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.closed == other.closed
    }
}

impl Eq for ClosureSystem {}

impl ClosureSystem {
    /// Builds the system whose closed sets are `family`, adding the full set
    /// and all intersections when they are missing. [`was_completed`]
    /// reports whether anything had to be added.
    ///
    /// [`was_completed`]: ClosureSystem::was_completed
    pub fn from_family<I>(universe: Universe, family: I) -> Result<Self>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        let full = universe.full();
        let mut given: Vec<ElementSet> = family.into_iter().collect();
        if given.iter().any(|s| !s.is_subset(full)) {
            return Err(Error::OutOfUniverse {
                size: universe.len(),
            });
        }
        given.sort();
        given.dedup();
        let closed = moore_completion(&given, full);
        let completed = closed.len() != given.len();
        Ok(ClosureSystem {
            universe,
            closed,
            completed,
        })
    }

    pub(crate) fn from_closed_unchecked(universe: Universe, mut closed: Vec<ElementSet>) -> Self {
        closed.sort();
        closed.dedup();
        debug_assert!(closed.contains(&universe.full()));
        ClosureSystem {
            universe,
            closed,
            completed: false,
        }
    }

    #[inline]
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.universe.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    #[inline]
    pub fn full(&self) -> ElementSet {
        self.universe.full()
    }

    /// Closed sets in ascending mask order.
    #[inline]
    pub fn closed_sets(&self) -> &[ElementSet] {
        &self.closed
    }

    /// True when the input family was not already intersection-closed (or
    /// lacked the full set) and was completed on construction.
    pub fn was_completed(&self) -> bool {
        self.completed
    }

    pub fn is_closed(&self, x: ElementSet) -> bool {
        self.closed.binary_search(&x).is_ok()
    }

    /// The smallest closed set containing `x`.
    pub fn closure(&self, x: ElementSet) -> ElementSet {
        self.closed
            .iter()
            .filter(|c| x.is_subset(**c))
            .fold(self.full(), |acc, c| acc & *c)
    }

    /// Closure of a single element.
    pub fn element_closure(&self, i: usize) -> ElementSet {
        self.closure(ElementSet::singleton(i))
    }

    /// `φ({i})` for every element, indexed by element.
    pub fn singleton_closures(&self) -> Vec<ElementSet> {
        (0..self.len()).map(|i| self.element_closure(i)).collect()
    }

    /// Closure of every subset, indexed by mask. Subject to the universe cap.
    pub fn closure_table(&self, limits: &Limits) -> Result<Vec<ElementSet>> {
        limits.check_universe(self.len())?;
        let n = self.len();
        let mut table = vec![self.full(); 1usize << n];
        // Every subset's closure is the intersection of the closed supersets;
        // pushing each closed set down to its subsets computes all of them.
        for &c in &self.closed {
            for sub in c.subsets() {
                let slot = &mut table[sub.bits() as usize];
                *slot &= c;
            }
        }
        Ok(table)
    }
}

/// Smallest intersection-closed family containing `given` and `full`.
pub(crate) fn moore_completion(given: &[ElementSet], full: ElementSet) -> Vec<ElementSet> {
    let mut members: HashSet<ElementSet> = given.iter().copied().collect();
    members.insert(full);
    let mut list: Vec<ElementSet> = members.iter().copied().collect();
    let mut frontier = list.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &a in &frontier {
            for &b in &list {
                let c = a & b;
                if members.insert(c) {
                    next.push(c);
                }
            }
        }
        list.extend(next.iter().copied());
        frontier = next;
    }
    list.sort();
    list
}
