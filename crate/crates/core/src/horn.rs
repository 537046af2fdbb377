//! Implications read as definite Horn clauses: models, consequence and the
//! translation of non-definite clauses.

use crate::closure::folklore_closure;
use crate::error::Result;
use crate::implication::{Basis, Implication};
use crate::set::{ElementSet, Universe};
use crate::system::{ClosureSystem, Limits};

/// `true` iff `y` is closed under `imp`: the premise is not contained in
/// `y`, or the conclusion is.
pub fn respects(y: ElementSet, imp: &Implication) -> bool {
    imp.respected_by(y)
}

/// `y` respects every implication of the list.
pub fn is_model(y: ElementSet, implications: &[Implication]) -> bool {
    implications.iter().all(|imp| imp.respected_by(y))
}

/// The closure system whose closed sets are the models of `basis`.
pub fn system_from_basis(basis: &Basis, limits: &Limits) -> Result<ClosureSystem> {
    let universe = basis.universe().clone();
    limits.check_universe(universe.len())?;
    let closed = universe
        .full()
        .subsets()
        .filter(|&y| is_model(y, basis.implications()))
        .collect();
    Ok(ClosureSystem::from_closed_unchecked(universe, closed))
}

/// Whether every model of `basis` is a model of `query`.
pub fn consequence_holds(basis: &Basis, query: &Implication) -> bool {
    query
        .conclusion()
        .is_subset(folklore_closure(basis.implications(), query.premise()).closure)
}

/// A Horn clause: the disjunction of the negated `negative` literals and at
/// most one positive literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HornClause {
    pub negative: ElementSet,
    pub positive: Option<usize>,
}

impl HornClause {
    pub fn definite(negative: ElementSet, positive: usize) -> Self {
        HornClause {
            negative,
            positive: Some(positive),
        }
    }

    pub fn goal(negative: ElementSet) -> Self {
        HornClause {
            negative,
            positive: None,
        }
    }

    /// Truth value under the assignment whose true variables are `model`.
    pub fn satisfied_by(&self, model: ElementSet) -> bool {
        !self.negative.is_subset(model) || self.positive.is_some_and(|p| model.contains(p))
    }
}

/// Replaces every non-definite clause `¬X` by the implications `X -> y`
/// for `y ∉ X` (nothing at all when `X` is the whole universe). The result
/// has exactly the models of the input plus the full set.
pub fn definite_completion(clauses: &[HornClause], universe: &Universe) -> Basis {
    let full = universe.full();
    let mut implications = Vec::new();
    for clause in clauses {
        match clause.positive {
            Some(p) => {
                let imp = Implication::unit(clause.negative, p);
                if !imp.is_trivial() {
                    implications.push(imp);
                }
            }
            None => {
                implications.extend(
                    (full - clause.negative)
                        .iter()
                        .map(|y| Implication::unit(clause.negative, y)),
                );
            }
        }
    }
    Basis::unit(universe.clone(), implications).expect("completion yields unit implications")
}
