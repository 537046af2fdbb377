//! Basis constructions.
//!
//! | builder | contents |
//! |---|---|
//! | [`build_sigma_delta`] | every `X -> y` with `y ∈ φ(X)` but `y` outside the closure of each proper subset of `X` |
//! | [`build_d_basis`] | `y -> x` for `x ∈ φ(y)`, plus `X -> x` for each minimal cover `X` of `x` |
//! | [`build_d_plus`] | the D-basis with redundant binary and derived implications removed, plus a repeating sequence that is ordered direct |
//! | [`build_e_basis`] | the D-basis restricted to covers with minimal closure, ordered by D-rank |
//! | [`build_dg_canonical`] | `X -> φ(X) ∖ X` for the pseudo-closed sets `X` |

mod canonical;
mod delta;
mod dbasis;
mod ebasis;
mod ordering;

pub use canonical::build_dg_canonical;
pub use dbasis::{
    build_d_basis, build_d_basis_with, build_d_plus, extract_d_basis, optimize_binary,
    order_is_valid_d, DPlus, OrderedSequence,
};
pub use delta::{build_sigma_delta, build_sigma_delta_with};
pub use ebasis::{
    build_e_basis, build_e_basis_forced, d_cycles, d_ranks, rank_order, RankTable,
};
pub use ordering::{
    find_ordered_direct_ordering, is_ordered_direct, ordered_direct_witness,
};

use crate::implication::Implication;

/// Sort key used for construction output: premise size, premise mask,
/// conclusion mask.
pub(crate) fn canonical_key(imp: &Implication) -> (usize, u64, u64) {
    (
        imp.premise().len(),
        imp.premise().bits(),
        imp.conclusion().bits(),
    )
}
