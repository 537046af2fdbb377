//! Invariants over random closure systems.

use std::collections::HashSet;

use closure_basis::bases::*;
use closure_basis::bench::system_from_generators;
use closure_basis::closure::*;
use closure_basis::horn::{is_model, system_from_basis};
use closure_basis::io::{parse_family, parse_implications, write_family, write_implications};
use closure_basis::reduction::*;
use closure_basis::structure::*;
use closure_basis::{ClosureSystem, ElementSet, Error, Form, Implication, Limits, Universe};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn system() -> impl Strategy<Value = ClosureSystem> {
    (3usize..=6).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        prop::collection::vec(1..full, 2..=8).prop_map(move |masks| {
            let gens: Vec<ElementSet> = masks.into_iter().map(ElementSet::from_bits).collect();
            system_from_generators(Universe::numbered(n).unwrap(), &gens).unwrap()
        })
    })
}

/// Arbitrary intersection-closed families, including ones where `φ(∅)`
/// is non-empty and elements share closures.
fn any_system() -> impl Strategy<Value = ClosureSystem> {
    (2usize..=5).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        prop::collection::vec(0..=full, 0..=6).prop_map(move |masks| {
            let fam = masks.into_iter().map(ElementSet::from_bits);
            ClosureSystem::from_family(Universe::numbered(n).unwrap(), fam).unwrap()
        })
    })
}

fn reduced() -> impl Strategy<Value = ClosureSystem> {
    system().prop_map(|s| reduce_system(&s).0)
}

fn limits() -> Limits {
    Limits::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_axioms(sys in any_system()) {
        for x in sys.full().subsets() {
            let c = sys.closure(x);
            prop_assert!(x.is_subset(c));
            prop_assert_eq!(sys.closure(c), c);
            for y in x.subsets() {
                prop_assert!(sys.closure(y).is_subset(c));
            }
        }
    }

    #[test]
    fn algorithms_agree_on_every_subset(sys in any_system()) {
        let dg = build_dg_canonical(&sys, &limits()).unwrap();
        let unit = dg.unit_expansion();
        let n = sys.len();
        let mut state = ForwardChaining::new(unit.implications(), n);
        for x in sys.full().subsets() {
            let want = sys.closure(x);
            for imps in [dg.implications(), unit.implications()] {
                prop_assert_eq!(folklore_closure(imps, x).closure, want);
                prop_assert_eq!(wild_closure(imps, x).closure, want);
                prop_assert_eq!(iterated_ordered(imps, x), want);
                prop_assert_eq!(forward_chaining_closure(imps, n, x, None).closure, want);
                prop_assert!(pi_step(imps, x).is_subset(ordered_iteration(imps, x).closure));
            }
            prop_assert_eq!(state.run(x).closure, want);
            let run = folklore_closure(unit.implications(), x);
            prop_assert_eq!(run.checks, run.passes * unit.len());
            if want != x {
                prop_assert!(run.passes >= 2);
            }
        }
    }

    #[test]
    fn models_are_the_closed_sets(sys in any_system()) {
        let delta = build_sigma_delta(&sys).unwrap();
        for y in sys.full().subsets() {
            prop_assert_eq!(is_model(y, delta.implications()), sys.is_closed(y));
        }
        prop_assert_eq!(system_from_basis(&delta, &limits()).unwrap(), sys);
    }

    #[test]
    fn sigma_delta_is_direct_in_any_order(sys in any_system()) {
        let delta = build_sigma_delta(&sys).unwrap();
        let mut reversed = delta.implications().to_vec();
        reversed.reverse();
        for x in sys.full().subsets() {
            prop_assert_eq!(pi_step(delta.implications(), x), sys.closure(x));
            prop_assert_eq!(ordered_iteration(&reversed, x).closure, sys.closure(x));
        }
    }

    #[test]
    fn reduction_preserves_the_lattice(sys in any_system()) {
        let (red, map) = reduce_system(&sys);
        prop_assert!(is_reduced(&red));
        prop_assert!(red.is_closed(ElementSet::empty()));
        prop_assert_eq!(red.closed_sets().len(), sys.closed_sets().len());
        let lifted: HashSet<ElementSet> = red.closed_sets().iter().map(|&c| map.lift_closed(c)).collect();
        let original: HashSet<ElementSet> = sys.closed_sets().iter().copied().collect();
        prop_assert_eq!(lifted, original);
        for x in sys.full().subsets() {
            prop_assert_eq!(map.lift_closed(red.closure(map.map_set(x))), sys.closure(x));
        }
        let (again, again_map) = reduce_system(&red);
        prop_assert_eq!(again, red.clone());
        prop_assert!(again_map.is_identity());

        let (std_sys, _) = standardize_system(&red).unwrap();
        prop_assert!(is_standard(&std_sys));
        prop_assert_eq!(std_sys.closed_sets().len(), red.closed_sets().len());
        let mut sizes_a: Vec<usize> = std_sys.closed_sets().iter().map(|c| std_sys.closed_sets().iter().filter(|d| d.is_subset(*c)).count()).collect();
        let mut sizes_b: Vec<usize> = red.closed_sets().iter().map(|c| red.closed_sets().iter().filter(|d| d.is_subset(*c)).count()).collect();
        sizes_a.sort();
        sizes_b.sort();
        prop_assert_eq!(sizes_a, sizes_b);
        for i in std_sys.full() {
            prop_assert!(std_sys.is_closed(std_sys.element_closure(i).without(i)));
        }
    }

    #[test]
    fn d_basis_relations(sys in reduced()) {
        let delta = build_sigma_delta(&sys).unwrap();
        let d = build_d_basis(&sys).unwrap();
        let in_delta: HashSet<Implication> = delta.iter().copied().collect();
        prop_assert!(d.iter().all(|imp| in_delta.contains(imp)));
        prop_assert_eq!(extract_d_basis(&delta).unit_multiset(), d.unit_multiset());
        prop_assert_eq!(extract_d_basis(&d).unit_multiset(), d.unit_multiset());
        prop_assert!(order_is_valid_d(d.implications()));
        prop_assert!(is_ordered_direct(d.implications(), &sys, &limits()).unwrap());
        prop_assert!(is_ordered_direct(d.aggregate().implications(), &sys, &limits()).unwrap());
        let dg = build_dg_canonical(&sys, &limits()).unwrap();
        prop_assert!(d.aggregate().len() >= dg.len());
        prop_assert!(delta.aggregate().len() >= dg.len());

        let optimized = optimize_binary(&d, &sys);
        prop_assert!(is_ordered_direct(optimized.implications(), &sys, &limits()).unwrap());
        let binary = d.binary_part();
        let covers = optimized.binary_part();
        for y in sys.full() {
            let single = ElementSet::singleton(y);
            prop_assert_eq!(
                ordered_iteration(&covers, single).closure,
                ordered_iteration(&binary, single).closure
            );
        }

        let plus = build_d_plus(&d, &sys);
        prop_assert!(plus.sequence.len() <= d.len());
        let source: HashSet<Implication> = plus.basis.iter().copied().collect();
        prop_assert!(plus.sequence.steps.iter().all(|s| source.contains(s)));
        for x in sys.full().subsets() {
            prop_assert_eq!(plus.sequence.evaluate(x).closure, sys.closure(x));
        }
    }

    #[test]
    fn canonical_basis_binary_part_matches(sys in reduced()) {
        let d = build_d_basis(&sys).unwrap();
        let dg = build_dg_canonical(&sys, &limits()).unwrap();
        let mut a = dg.unit_expansion().binary_part();
        let mut b = d.binary_part();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(system_from_basis(&dg, &limits()).unwrap(), sys.clone());
        for imp in dg.iter() {
            prop_assert!(is_quasi_closed(&sys, imp.premise()));
        }
    }

    #[test]
    fn e_basis_without_cycles(sys in reduced()) {
        let table = build_cover_table(&sys, &limits()).unwrap();
        let d = build_d_basis(&sys).unwrap();
        match d_cycles(&table) {
            Some(cycle) => {
                prop_assert_eq!(build_e_basis(&sys, Form::Unit), Err(Error::DCycle { cycle: cycle.clone() }));
                let ranked = d_ranks(&sys, &d).is_err();
                prop_assert!(ranked);
            }
            None => {
                let e = build_e_basis(&sys, Form::Unit).unwrap();
                let in_d: HashSet<Implication> = d.iter().copied().collect();
                prop_assert!(e.iter().all(|imp| in_d.contains(imp)));
                prop_assert!(e.len() <= d.len());
                prop_assert_eq!(system_from_basis(&e, &limits()).unwrap(), sys.clone());
                prop_assert!(is_ordered_direct(e.implications(), &sys, &limits()).unwrap());
                let agg = build_e_basis(&sys, Form::Aggregated).unwrap();
                prop_assert!(is_ordered_direct(agg.implications(), &sys, &limits()).unwrap());
                let ranks = d_ranks(&sys, &d).unwrap();
                prop_assert!(ranks.max_rank() <= sys.len());
                for imp in d.iter().filter(|i| !i.is_binary()) {
                    prop_assert!(ranks.rank(imp.target().unwrap()) > 0);
                }
            }
        }
    }

    #[test]
    fn structure_of_refinement(sys in reduced()) {
        let poset = element_poset(&sys);
        let mut closure: HashSet<(usize, usize)> = poset.cover_relation.iter().copied().collect();
        loop {
            let extra: Vec<(usize, usize)> = closure
                .iter()
                .flat_map(|&(a, b)| closure.iter().filter(move |&&(c, _)| c == b).map(move |&(_, d)| (a, d)))
                .filter(|p| !closure.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            closure.extend(extra);
        }
        let order: HashSet<(usize, usize)> = poset.order.iter().copied().collect();
        prop_assert_eq!(closure, order);
        let position: Vec<usize> = {
            let mut p = vec![0; sys.len()];
            for (i, &e) in poset.linear_extension.iter().enumerate() {
                p[e] = i;
            }
            p
        };
        for &(upper, lower) in &poset.order {
            prop_assert!(position[lower] < position[upper]);
        }

        let table = build_cover_table(&sys, &limits()).unwrap();
        for x in sys.full() {
            for cover in covers_of(&sys, x, &limits()).unwrap() {
                prop_assert!(table.minimal_covers[x].iter().any(|&m| ll_refines(&sys, m, cover)));
            }
        }
        let subsets: Vec<ElementSet> = sys.full().subsets().collect();
        for &x in subsets.iter().step_by(3) {
            prop_assert!(ll_refines(&sys, x, x));
            let min = class_minimum(&sys, x, &limits()).unwrap();
            prop_assert!(ll_refines(&sys, min, x) && ll_refines(&sys, x, min));
        }
    }

    #[test]
    fn text_round_trips(sys in any_system()) {
        prop_assert_eq!(parse_family(&write_family(&sys)).unwrap(), sys.clone());
        let dg = build_dg_canonical(&sys, &limits()).unwrap();
        let back = parse_implications(&write_implications(&dg), None).unwrap();
        prop_assert_eq!(back.implications(), dg.implications());
        let unit = dg.unit_expansion();
        prop_assert_eq!(unit.aggregate().unit_multiset(), dg.unit_multiset());
    }
}

#[test]
fn search_finds_orders_for_d_bases() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..40 {
        let sys = reduced().new_tree(&mut runner).unwrap().current();
        let d = build_d_basis(&sys).unwrap();
        if d.len() > limits().search_cap {
            continue;
        }
        let order = find_ordered_direct_ordering(d.implications(), &sys, &limits())
            .unwrap()
            .expect("binary-first orders exist");
        assert!(is_ordered_direct(d.permuted(&order).implications(), &sys, &limits()).unwrap());
    }
}
