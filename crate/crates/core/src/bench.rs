//! Random closure systems and closure-cost experiments.
//!
//! A system is generated from `k` random proper non-empty subsets of the
//! domain (each element kept with probability 1/2), closed under
//! intersection together with `∅` and the domain. Each trial draws one
//! random 3-element input and records how many implications each strategy
//! attends while closing it.

use std::collections::BTreeMap;
use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{build_d_basis, build_dg_canonical, build_sigma_delta};
use crate::closure::{folklore_closure, forward_chaining_closure, ordered_iteration, wild_closure, ForwardChaining};
use crate::error::Result;
use crate::implication::Implication;
use crate::reduction::reduce_system;
use crate::set::{ElementSet, Universe};
use crate::system::{ClosureSystem, Limits};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub domain_size: usize,
    pub generator_subsets: RangeInclusive<usize>,
    pub seed: u64,
    pub trials: usize,
}

impl GeneratorConfig {
    pub fn new(domain_size: usize, seed: u64, trials: usize) -> Self {
        GeneratorConfig {
            domain_size,
            generator_subsets: 3..=8,
            seed,
            trials,
        }
    }
}

/// The RNG of one trial: the seed's stream number `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `∅`, the domain and every intersection of the generators.
pub fn system_from_generators(universe: Universe, generators: &[ElementSet]) -> Result<ClosureSystem> {
    let full = universe.full();
    let family = generators
        .iter()
        .copied()
        .chain([ElementSet::empty(), full]);
    ClosureSystem::from_family(universe, family)
}

pub fn random_generators<R: Rng>(config: &GeneratorConfig, rng: &mut R) -> Vec<ElementSet> {
    let n = config.domain_size;
    let full = ElementSet::full(n);
    let k = rng.gen_range(config.generator_subsets.clone());
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let set: ElementSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !set.is_empty() && set != full {
            out.push(set);
        }
    }
    out
}

pub fn generate_system<R: Rng>(config: &GeneratorConfig, rng: &mut R) -> ClosureSystem {
    let universe = Universe::numbered(config.domain_size).expect("domain within 64 elements");
    let generators = random_generators(config, rng);
    system_from_generators(universe, &generators).expect("generators lie in the domain")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BasisKind {
    /// Unit canonical basis closed by repeated sweeps.
    DgUnitFolklore,
    /// Canonical direct unit basis, single sweep.
    SigmaDelta,
    /// D-basis, binary part first, single sweep.
    DBasis,
    /// Unit canonical basis by forward chaining, counters rebuilt per call.
    DgUnitForwardChaining,
    /// Unit canonical basis by forward chaining, counters reused.
    DgUnitForwardChainingReused,
    /// Unit canonical basis by the applicable/pending split.
    DgUnitWild,
}

impl BasisKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisKind::DgUnitFolklore => "dg-unit-folklore",
            BasisKind::SigmaDelta => "sigma-delta",
            BasisKind::DBasis => "d-basis",
            BasisKind::DgUnitForwardChaining => "dg-unit-forward-chaining",
            BasisKind::DgUnitForwardChainingReused => "dg-unit-forward-chaining-reused",
            BasisKind::DgUnitWild => "dg-unit-wild",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Metric {
    ImplicationsChecked,
    Passes,
    /// Median microseconds per closure.
    WallTime,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::ImplicationsChecked => "implications-checked",
            Metric::Passes => "passes",
            Metric::WallTime => "wall-time-us",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub domain_size: usize,
    pub closed_set_count: usize,
    pub basis_kind: BasisKind,
    pub metric: Metric,
    pub value: f64,
    pub input_size: usize,
    /// Implications in the basis measured.
    pub basis_length: usize,
    /// The closure strictly contains the input.
    pub grew: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExperimentOptions {
    pub timing: bool,
    /// Repetitions per timed call; the median is reported.
    pub repetitions: usize,
}

/// Median wall time of `f` in microseconds.
fn median_micros(repetitions: usize, mut f: impl FnMut()) -> f64 {
    let reps = repetitions.max(1);
    let mut samples: Vec<f64> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_secs_f64() * 1e6
        })
        .collect();
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    samples[reps / 2]
}

/// Everything measured for one system and one input.
pub fn measure(
    system: &ClosureSystem,
    input: ElementSet,
    options: &ExperimentOptions,
) -> Result<Vec<BenchRecord>> {
    let limits = Limits::default();
    let (reduced, map) = reduce_system(system);
    let x = map.map_set(input);
    let target = reduced.closure(x);

    let dg_unit = build_dg_canonical(&reduced, &limits)?.unit_expansion();
    let delta = build_sigma_delta(&reduced)?;
    let d = build_d_basis(&reduced)?;

    let folklore = folklore_closure(dg_unit.implications(), x);
    let on_delta = ordered_iteration(delta.implications(), x);
    let on_d = ordered_iteration(d.implications(), x);
    debug_assert_eq!(folklore.closure, target);
    debug_assert_eq!(on_delta.closure, target);
    debug_assert_eq!(on_d.closure, target);

    // growth of the input actually closed, after reduction
    let grew = target != x;
    let length = |kind| match kind {
        BasisKind::SigmaDelta => delta.len(),
        BasisKind::DBasis => d.len(),
        _ => dg_unit.len(),
    };
    let record = |basis_kind, metric, value: f64| BenchRecord {
        domain_size: system.len(),
        closed_set_count: system.closed_sets().len(),
        basis_kind,
        metric,
        value,
        input_size: input.len(),
        basis_length: length(basis_kind),
        grew,
    };
    let mut out = vec![
        record(BasisKind::DgUnitFolklore, Metric::ImplicationsChecked, folklore.checks as f64),
        record(BasisKind::DgUnitFolklore, Metric::Passes, folklore.passes as f64),
        record(BasisKind::SigmaDelta, Metric::ImplicationsChecked, on_delta.checks as f64),
        record(BasisKind::DBasis, Metric::ImplicationsChecked, on_d.checks as f64),
    ];

    if options.timing {
        let reps = options.repetitions;
        let imps: &[Implication] = dg_unit.implications();
        let n = reduced.len();
        let mut state = ForwardChaining::new(imps, n);
        let timed = [
            (BasisKind::DgUnitFolklore, median_micros(reps, || {
                std::hint::black_box(folklore_closure(imps, x));
            })),
            (BasisKind::DgUnitForwardChaining, median_micros(reps, || {
                std::hint::black_box(forward_chaining_closure(imps, n, x, None));
            })),
            (BasisKind::DgUnitForwardChainingReused, median_micros(reps, || {
                std::hint::black_box(state.run(x));
            })),
            (BasisKind::DgUnitWild, median_micros(reps, || {
                std::hint::black_box(wild_closure(imps, x));
            })),
            (BasisKind::SigmaDelta, median_micros(reps, || {
                std::hint::black_box(ordered_iteration(delta.implications(), x));
            })),
            (BasisKind::DBasis, median_micros(reps, || {
                std::hint::black_box(ordered_iteration(d.implications(), x));
            })),
        ];
        out.extend(timed.into_iter().map(|(kind, v)| record(kind, Metric::WallTime, v)));
    }
    Ok(out)
}

/// A uniformly random input of `min(3, n)` elements.
pub fn random_input<R: Rng>(n: usize, rng: &mut R) -> ElementSet {
    sample(rng, n, n.min(3)).into_iter().collect()
}

/// One system and one input per trial; trials run in parallel, each on its
/// own stream of the seed.
pub fn run_experiment(config: &GeneratorConfig, options: &ExperimentOptions) -> Result<Vec<BenchRecord>> {
    let per_trial: Vec<Vec<BenchRecord>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(config.seed, trial as u64);
            let system = generate_system(config, &mut rng);
            let input = random_input(config.domain_size, &mut rng);
            measure(&system, input, options)
        })
        .collect::<Result<_>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}

/// Lower bound of the closed-set-count bucket, buckets of width 5.
pub fn bucket(closed_set_count: usize) -> usize {
    closed_set_count / 5 * 5
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub domain: usize,
    pub closed_sets_bucket: usize,
    pub basis: &'static str,
    pub metric: &'static str,
    pub mean: f64,
    pub stddev: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Mean and population standard deviation per domain, bucket, basis and
/// metric.
pub fn summarize(records: &[BenchRecord], seed: u64) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, usize, BasisKind, Metric), Vec<f64>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.domain_size, bucket(r.closed_set_count), r.basis_kind, r.metric))
            .or_default()
            .push(r.value);
    }
    groups
        .into_iter()
        .map(|((domain, b, kind, metric), values)| {
            let count = values.len() as f64;
            let mean = values.iter().sum::<f64>() / count;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / count;
            SummaryRow {
                domain,
                closed_sets_bucket: b,
                basis: kind.as_str(),
                metric: metric.as_str(),
                mean,
                stddev: var.sqrt(),
                trials: values.len(),
                seed,
            }
        })
        .collect()
}

/// CSV with header `domain,closed_sets_bucket,basis,metric,mean,stddev,trials,seed`.
pub fn write_csv<W: Write>(rows: &[SummaryRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
