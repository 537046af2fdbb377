use crate::closure::ordered_iteration;
use crate::error::{Error, Result};
use crate::implication::Implication;
use crate::set::ElementSet;
use crate::system::{ClosureSystem, Limits};

/// The first subset, by mask, whose single ordered sweep falls short of its
/// closure.
pub fn ordered_direct_witness(
    implications: &[Implication],
    system: &ClosureSystem,
    limits: &Limits,
) -> Result<Option<ElementSet>> {
    let table = system.closure_table(limits)?;
    Ok(system
        .full()
        .subsets()
        .find(|&x| ordered_iteration(implications, x).closure != table[x.bits() as usize]))
}

/// A single sweep in list order computes the closure of every subset.
pub fn is_ordered_direct(
    implications: &[Implication],
    system: &ClosureSystem,
    limits: &Limits,
) -> Result<bool> {
    Ok(ordered_direct_witness(implications, system, limits)?.is_none())
}

#[inline]
fn fire(imp: &Implication, x: ElementSet) -> ElementSet {
    if imp.premise().is_subset(x) {
        x | imp.conclusion()
    } else {
        x
    }
}

struct Search<'a> {
    implications: &'a [Implication],
    /// Non-closed test subsets and their closures.
    targets: Vec<ElementSet>,
    order: Vec<usize>,
}

impl Search<'_> {
    /// Iterating the unused implications to a fixpoint reaches every target.
    fn reachable(&self, partial: &[ElementSet], unused: u64) -> bool {
        partial.iter().zip(&self.targets).all(|(&p, &target)| {
            if p == target {
                return true;
            }
            let mut x = p;
            loop {
                let mut next = x;
                for i in ElementSet::from_bits(unused) {
                    next = fire(&self.implications[i], next);
                }
                if next == x {
                    return x == target;
                }
                x = next;
            }
        })
    }

    fn extend(&mut self, partial: &[ElementSet], unused: u64) -> bool {
        if unused == 0 {
            return partial == self.targets.as_slice();
        }
        if !self.reachable(partial, unused) {
            return false;
        }
        let mut next = vec![ElementSet::empty(); partial.len()];
        for i in ElementSet::from_bits(unused) {
            let imp = self.implications[i];
            for (n, &p) in next.iter_mut().zip(partial) {
                *n = fire(&imp, p);
            }
            self.order.push(i);
            if self.extend(&next, unused & !(1u64 << i)) {
                return true;
            }
            self.order.pop();
        }
        false
    }
}

/// A permutation of `implications` under which a single ordered sweep is
/// the closure operator of `system`, or `None` if there is none.
///
/// Exhaustive backtracking: a prefix is abandoned once some subset can no
/// longer reach its closure even by iterating the unused implications.
pub fn find_ordered_direct_ordering(
    implications: &[Implication],
    system: &ClosureSystem,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    let m = implications.len();
    if m > limits.search_cap || m > 64 {
        return Err(Error::SearchCapExceeded {
            size: m,
            limit: limits.search_cap,
        });
    }
    let table = system.closure_table(limits)?;
    // an implication that fails in the system breaks every ordering
    if implications
        .iter()
        .any(|imp| !imp.conclusion().is_subset(table[imp.premise().bits() as usize]))
    {
        return Ok(None);
    }
    let (starts, targets): (Vec<ElementSet>, Vec<ElementSet>) = system
        .full()
        .subsets()
        .map(|x| (x, table[x.bits() as usize]))
        .filter(|(x, c)| x != c)
        .unzip();
    let mut search = Search {
        implications,
        targets,
        order: Vec::with_capacity(m),
    };
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    if search.extend(&starts, all) {
        Ok(Some(search.order))
    } else {
        Ok(None)
    }
}
