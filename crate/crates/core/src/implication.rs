//! Implications and ordered lists of them.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::set::{ElementSet, Universe};

/// `premise -> conclusion`, with the premise removed from the conclusion.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Implication {
    premise: ElementSet,
    conclusion: ElementSet,
}

impl Implication {
    /// Builds `premise -> conclusion ∖ premise`.
    pub fn new(premise: ElementSet, conclusion: ElementSet) -> Self {
        Implication {
            premise,
            conclusion: conclusion - premise,
        }
    }

    /// Unit implication `premise -> x`.
    pub fn unit(premise: ElementSet, x: usize) -> Self {
        Implication::new(premise, ElementSet::singleton(x))
    }

    /// `y -> x`.
    pub fn binary(y: usize, x: usize) -> Self {
        Implication::new(ElementSet::singleton(y), ElementSet::singleton(x))
    }

    #[inline]
    pub fn premise(&self) -> ElementSet {
        self.premise
    }

    #[inline]
    pub fn conclusion(&self) -> ElementSet {
        self.conclusion
    }

    /// Holds in every set; carries no information.
    pub fn is_trivial(&self) -> bool {
        self.conclusion.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.conclusion.len() == 1
    }

    /// Single-element premise.
    pub fn is_binary(&self) -> bool {
        self.premise.len() == 1
    }

    /// The conclusion element of a unit implication.
    pub fn target(&self) -> Option<usize> {
        if self.is_unit() {
            self.conclusion.first()
        } else {
            None
        }
    }

    /// Whether `set` is closed under this implication.
    #[inline]
    pub fn respected_by(&self, set: ElementSet) -> bool {
        !self.premise.is_subset(set) || self.conclusion.is_subset(set)
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> DisplayImplication<'a> {
        DisplayImplication {
            implication: self,
            universe,
        }
    }
}

impl fmt::Debug for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.premise, self.conclusion)
    }
}

pub struct DisplayImplication<'a> {
    implication: &'a Implication,
    universe: &'a Universe,
}

impl fmt::Display for DisplayImplication<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            self.universe.format_set(self.implication.premise),
            self.universe.format_set(self.implication.conclusion)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// Every conclusion is a single element.
    Unit,
    /// Premises are pairwise distinct.
    Aggregated,
}

impl Form {
    fn name(self) -> &'static str {
        match self {
            Form::Unit => "unit",
            Form::Aggregated => "aggregated",
        }
    }
}

/// An ordered list of implications over a universe.
///
/// The list order is the attendance order used by ordered iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    universe: Universe,
    implications: Vec<Implication>,
    form: Form,
}

impl Basis {
    pub fn new(universe: Universe, implications: Vec<Implication>, form: Form) -> Result<Self> {
        let full = universe.full();
        for imp in &implications {
            if !(imp.premise | imp.conclusion).is_subset(full) {
                return Err(Error::OutOfUniverse {
                    size: universe.len(),
                });
            }
            if imp.is_trivial() {
                return Err(Error::Form {
                    form: form.name(),
                    detail: format!("trivial implication {imp:?}"),
                });
            }
        }
        match form {
            Form::Unit => {
                if let Some(imp) = implications.iter().find(|imp| !imp.is_unit()) {
                    return Err(Error::Form {
                        form: form.name(),
                        detail: format!("non-singleton conclusion in {imp:?}"),
                    });
                }
            }
            Form::Aggregated => {
                let mut seen = HashSet::with_capacity(implications.len());
                if let Some(imp) = implications.iter().find(|imp| !seen.insert(imp.premise)) {
                    return Err(Error::Form {
                        form: form.name(),
                        detail: format!("repeated premise in {imp:?}"),
                    });
                }
            }
        }
        Ok(Basis {
            universe,
            implications,
            form,
        })
    }

    pub fn unit(universe: Universe, implications: Vec<Implication>) -> Result<Self> {
        Basis::new(universe, implications, Form::Unit)
    }

    pub fn aggregated(universe: Universe, implications: Vec<Implication>) -> Result<Self> {
        Basis::new(universe, implications, Form::Aggregated)
    }

    /// Unit form if every conclusion is a singleton, otherwise aggregated
    /// form after merging repeated premises.
    pub fn infer(universe: Universe, implications: Vec<Implication>) -> Result<Self> {
        if implications.iter().all(Implication::is_unit) {
            Basis::unit(universe, implications)
        } else {
            Basis::aggregated(universe, merge_premises(&implications))
        }
    }

    pub(crate) fn from_parts_unchecked(
        universe: Universe,
        implications: Vec<Implication>,
        form: Form,
    ) -> Self {
        debug_assert!(Basis::new(universe.clone(), implications.clone(), form).is_ok());
        Basis {
            universe,
            implications,
            form,
        }
    }

    pub fn empty(universe: Universe) -> Self {
        Basis {
            universe,
            implications: Vec::new(),
            form: Form::Unit,
        }
    }

    #[inline]
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    #[inline]
    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    #[inline]
    pub fn form(&self) -> Form {
        self.form
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.implications.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Implication> {
        self.implications.iter()
    }

    pub fn into_implications(self) -> Vec<Implication> {
        self.implications
    }

    /// Same implications in the order given by `order`, a permutation of
    /// `0..len`.
    pub fn permuted(&self, order: &[usize]) -> Basis {
        assert_eq!(order.len(), self.len());
        let implications = order.iter().map(|&i| self.implications[i]).collect();
        Basis {
            universe: self.universe.clone(),
            implications,
            form: self.form,
        }
    }

    /// Stable reordering with every single-premise implication first.
    pub fn binary_first(&self) -> Basis {
        let (mut binary, rest): (Vec<_>, Vec<_>) =
            self.implications.iter().partition(|imp| imp.is_binary());
        binary.extend(rest);
        Basis {
            universe: self.universe.clone(),
            implications: binary,
            form: self.form,
        }
    }

    /// Implications with a single-element premise.
    pub fn binary_part(&self) -> Vec<Implication> {
        self.implications
            .iter()
            .filter(|imp| imp.is_binary())
            .copied()
            .collect()
    }

    /// Splits every `X -> Y` into `X -> y` for `y ∈ Y`, preserving order.
    pub fn unit_expansion(&self) -> Basis {
        let implications = self
            .implications
            .iter()
            .flat_map(|imp| {
                imp.conclusion
                    .iter()
                    .map(move |y| Implication::unit(imp.premise, y))
            })
            .collect();
        Basis {
            universe: self.universe.clone(),
            implications,
            form: Form::Unit,
        }
    }

    /// Merges implications sharing a premise, in order of first occurrence.
    pub fn aggregate(&self) -> Basis {
        Basis {
            universe: self.universe.clone(),
            implications: merge_premises(&self.implications),
            form: Form::Aggregated,
        }
    }

    /// Sorted copy of the unit expansion, for order-insensitive comparison.
    pub fn unit_multiset(&self) -> Vec<Implication> {
        let mut units = self.unit_expansion().implications;
        units.sort();
        units
    }

    pub fn display(&self) -> String {
        self.implications
            .iter()
            .map(|imp| imp.display(&self.universe).to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl<'a> IntoIterator for &'a Basis {
    type Item = &'a Implication;
    type IntoIter = std::slice::Iter<'a, Implication>;
    fn into_iter(self) -> Self::IntoIter {
        self.implications.iter()
    }
}

fn merge_premises(implications: &[Implication]) -> Vec<Implication> {
    let mut merged: Vec<Implication> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for imp in implications {
        match slot.get(&imp.premise) {
            Some(&k) => {
                let prev: &mut Implication = &mut merged[k];
                prev.conclusion |= imp.conclusion;
            }
            None => {
                slot.insert(imp.premise, merged.len());
                merged.push(*imp);
            }
        }
    }
    merged
}

/// Counts describing the size of a list of implications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisSize {
    /// Sum over implications of `|premise| + |conclusion|`.
    pub s: usize,
    /// Sum of cardinalities of the distinct sets occurring as premises or
    /// conclusions, each distinct set counted once.
    pub t: usize,
    /// Number of implications.
    pub m: usize,
}

pub fn basis_size(implications: &[Implication]) -> BasisSize {
    let s = implications
        .iter()
        .map(|imp| imp.premise.len() + imp.conclusion.len())
        .sum();
    let distinct: HashSet<ElementSet> = implications
        .iter()
        .flat_map(|imp| [imp.premise, imp.conclusion])
        .collect();
    BasisSize {
        s,
        t: distinct.iter().map(|set| set.len()).sum(),
        m: implications.len(),
    }
}
