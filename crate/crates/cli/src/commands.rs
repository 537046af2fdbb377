use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use closure_basis::bases::{
    build_d_basis, build_d_plus, build_dg_canonical, build_e_basis, build_sigma_delta, d_cycles,
    d_ranks, find_ordered_direct_ordering, ordered_direct_witness, rank_order,
};
use closure_basis::bench::{
    generate_system, run_experiment, summarize, trial_rng, write_csv, ExperimentOptions,
    GeneratorConfig,
};
use closure_basis::closure::{folklore_closure, forward_chaining_closure, ordered_iteration, wild_closure, Run};
use closure_basis::horn::{consequence_holds, system_from_basis};
use closure_basis::io::{parse_family, parse_implications, write_family, write_implications, write_map};
use closure_basis::reduction::{is_reduced, is_standard, reduce_system, standard_form};
use closure_basis::structure::{build_cover_table, element_poset, is_convex_geometry};
use closure_basis::{basis_size, Basis, ClosureSystem, Error, Form, Implication, Limits, Universe};
use serde_json::{json, Value};

use crate::{
    Algorithm, AnalyzeArgs, BasisArgs, BenchArgs, Cli, ClosureArgs, Command, Format, FormArg,
    GenerateArgs, Kind, OrderArg, OrderArgs, ReduceArgs, VerifyArgs,
};

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable files or malformed input (exit 2).
    Usage(String),
    /// Well-formed input that fails a check or a precondition (exit 1).
    Semantic(String),
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Semantic(m) => m,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(2),
            Failure::Semantic(_) => ExitCode::from(1),
        }
    }
}

fn from_library(err: Error) -> Failure {
    match err {
        Error::NotReduced(_) => Failure::Semantic(format!("{err}; run `cbasis reduce` first")),
        Error::DCycle { .. }
        | Error::SearchCapExceeded { .. }
        | Error::LimitExceeded { .. }
        | Error::UniverseTooLarge { .. } => Failure::Semantic(err.to_string()),
        _ => Failure::Usage(err.to_string()),
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        from_library(err)
    }
}

type Outcome<T = ()> = Result<T, Failure>;

/// Library errors that carry element indices, rewritten with labels.
fn labelled(universe: &Universe) -> impl Fn(Error) -> Failure + '_ {
    move |err| match err {
        Error::DCycle { cycle } => Failure::Semantic(format!(
            "the D-relation has a cycle through {}; no E-basis or D-ranks exist",
            universe.format_set(cycle.into_iter().collect())
        )),
        other => from_library(other),
    }
}

pub fn run(cli: &Cli) -> Outcome<ExitCode> {
    let format = cli.format;
    match &cli.command {
        Command::Closure(args) => closure(args, format),
        Command::Basis(args) => basis(args, format),
        Command::Reduce(args) => reduce(args, format),
        Command::Analyze(args) => analyze(args, format),
        Command::Verify(args) => verify(args, format),
        Command::Order(args) => order(args, format),
        Command::Generate(args) => generate(args),
        Command::Bench(args) => bench(args),
    }
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Prefixes library errors with the file they came from.
fn in_file<T>(path: &Path, result: closure_basis::Result<T>) -> Outcome<T> {
    result.map_err(|e| match from_library(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        semantic => semantic,
    })
}

fn format_of(path: &Path, forced: Option<Format>) -> Outcome<Format> {
    if let Some(f) = forced {
        return Ok(f);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("fam") => Ok(Format::Fam),
        Some("imp") => Ok(Format::Imp),
        _ => Err(Failure::Usage(format!(
            "{}: cannot infer the format from the extension; use .fam, .imp or --format",
            path.display()
        ))),
    }
}

/// A system from a closed family, or the system generated by a basis.
fn load_system(path: &Path, forced: Option<Format>) -> Outcome<ClosureSystem> {
    let text = read(path)?;
    match format_of(path, forced)? {
        Format::Fam => in_file(path, parse_family(&text)),
        Format::Imp => {
            let basis = in_file(path, parse_implications(&text, None))?;
            Ok(system_from_basis(&basis, &Limits::default())?)
        }
    }
}

fn load_basis(path: &Path, universe: Option<&Universe>) -> Outcome<Basis> {
    let text = read(path)?;
    in_file(path, parse_implications(&text, universe))
}

fn labels(universe: &Universe, set: closure_basis::ElementSet) -> Value {
    json!(universe.labels_of(set))
}

fn implication_json(universe: &Universe, imp: &Implication) -> Value {
    json!({
        "premise": labels(universe, imp.premise()),
        "conclusion": labels(universe, imp.conclusion()),
    })
}

fn basis_json(basis: &Basis) -> Value {
    let u = basis.universe();
    Value::Array(basis.iter().map(|imp| implication_json(u, imp)).collect())
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn closure(args: &ClosureArgs, format: Option<Format>) -> Outcome<ExitCode> {
    let system = args.system.as_deref().map(|p| load_system(p, format)).transpose()?;
    let basis = match &args.basis {
        Some(path) => Some(load_basis(path, system.as_ref().map(ClosureSystem::universe))?),
        None => None,
    };
    let universe = match (&basis, &system) {
        (Some(b), _) => b.universe().clone(),
        (None, Some(s)) => s.universe().clone(),
        (None, None) => unreachable!("clap requires --basis or --system"),
    };
    let x = universe.parse_set(&args.set)?;
    let algorithm = args
        .algorithm
        .unwrap_or(if basis.is_some() { Algorithm::Folklore } else { Algorithm::Phi });

    let run = match (algorithm, &basis) {
        (Algorithm::Phi, _) => {
            let Some(system) = &system else {
                return Err(Failure::Usage("--algorithm phi needs --system".into()));
            };
            Run {
                closure: system.closure(x),
                checks: 0,
                passes: 0,
            }
        }
        (_, None) => {
            return Err(Failure::Usage(format!(
                "--algorithm {} needs --basis",
                algorithm_name(algorithm)
            )))
        }
        (Algorithm::Folklore, Some(b)) => folklore_closure(b.implications(), x),
        (Algorithm::Ordered, Some(b)) => ordered_iteration(b.implications(), x),
        (Algorithm::Forward, Some(b)) => {
            forward_chaining_closure(b.implications(), universe.len(), x, None)
        }
        (Algorithm::Wild, Some(b)) => wild_closure(b.implications(), x),
    };

    if args.json {
        print_json(&json!({
            "input": labels(&universe, x),
            "closure": labels(&universe, run.closure),
            "algorithm": algorithm_name(algorithm),
            "checks": run.checks,
            "passes": run.passes,
        }));
    } else {
        println!("{}", universe.format_set(run.closure));
    }
    Ok(ExitCode::SUCCESS)
}

fn algorithm_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Folklore => "folklore",
        Algorithm::Ordered => "ordered",
        Algorithm::Forward => "forward",
        Algorithm::Wild => "wild",
        Algorithm::Phi => "phi",
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Delta => "delta",
        Kind::D => "d",
        Kind::DPlus => "d-plus",
        Kind::E => "e",
        Kind::Dg => "dg",
    }
}

fn basis(args: &BasisArgs, format: Option<Format>) -> Outcome<ExitCode> {
    let system = load_system(&args.from, format)?;
    let limits = Limits::default();
    let form = args.form.unwrap_or(match args.kind {
        Kind::Dg => FormArg::Aggregated,
        _ => FormArg::Unit,
    });
    let shaped = |b: Basis| match form {
        FormArg::Unit => b.unit_expansion(),
        FormArg::Aggregated => b.aggregate(),
    };

    let mut extra = None;
    let built = match args.kind {
        Kind::Delta => shaped(build_sigma_delta(&system)?),
        Kind::D => shaped(build_d_basis(&system)?),
        Kind::Dg => shaped(build_dg_canonical(&system, &limits)?),
        Kind::E => build_e_basis(
            &system,
            match form {
                FormArg::Unit => Form::Unit,
                FormArg::Aggregated => Form::Aggregated,
            },
        )
        .map_err(labelled(system.universe()))?,
        Kind::DPlus => {
            if form == FormArg::Aggregated {
                return Err(Failure::Usage("--kind d-plus is a unit sequence; drop --form aggregated".into()));
            }
            if args.order != OrderArg::None {
                return Err(Failure::Usage("--kind d-plus has a fixed order; drop --order".into()));
            }
            let plus = build_d_plus(&build_d_basis(&system)?, &system);
            extra = Some(basis_json(&plus.basis));
            plus.sequence.as_basis()
        }
    };

    let ordered = match args.order {
        OrderArg::None => built,
        OrderArg::BinaryFirst => built.binary_first(),
        OrderArg::Rank => {
            let ranks = d_ranks(&system, &build_d_basis(&system)?).map_err(labelled(system.universe()))?;
            rank_order(&built, &ranks)
        }
    };

    let redundant: Vec<Implication> = if args.report_redundant {
        redundant_members(&ordered)
    } else {
        Vec::new()
    };
    let universe = ordered.universe();
    for imp in &redundant {
        eprintln!("redundant: {}", imp.display(universe));
    }

    let text = if args.json {
        let size = basis_size(ordered.implications());
        let mut doc = json!({
            "kind": kind_name(args.kind),
            "form": match ordered.form() { Form::Unit => "unit", Form::Aggregated => "aggregated" },
            "universe": universe.names(),
            "implications": basis_json(&ordered),
            "size": { "s": size.s, "t": size.t, "m": size.m },
        });
        if let Some(reduced) = extra {
            doc["reduced_basis"] = reduced;
        }
        if args.report_redundant {
            doc["redundant"] = redundant.iter().map(|imp| implication_json(universe, imp)).collect();
        }
        serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
    } else {
        write_implications(&ordered)
    };
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Members that follow from the rest of the list.
fn redundant_members(basis: &Basis) -> Vec<Implication> {
    let imps = basis.implications();
    (0..imps.len())
        .filter(|&i| {
            let rest: Vec<Implication> = imps
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, imp)| *imp)
                .collect();
            let rest = Basis::infer(basis.universe().clone(), rest)
                .expect("a sub-list of a valid basis is valid");
            consequence_holds(&rest, &imps[i])
        })
        .map(|i| imps[i])
        .collect()
}

fn reduce(args: &ReduceArgs, format: Option<Format>) -> Outcome<ExitCode> {
    let system = load_system(&args.input, format)?;
    let (derived, map) = if args.standard {
        standard_form(&system)
    } else {
        reduce_system(&system)
    };
    let family = write_family(&derived);
    let map_text = write_map(&map, system.universe());
    let map_path = args
        .map
        .clone()
        .or_else(|| args.out.as_ref().map(|p| p.with_extension("map")));
    match &args.out {
        Some(path) => write_file(path, &family)?,
        None => print!("{family}"),
    }
    match map_path {
        Some(path) => write_file(&path, &map_text)?,
        None => eprint!("{map_text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn analyze(args: &AnalyzeArgs, format: Option<Format>) -> Outcome<ExitCode> {
    let system = load_system(&args.input, format)?;
    let limits = Limits::default();
    let u = system.universe();
    let reduced = is_reduced(&system);
    let mut doc = json!({
        "elements": u.names(),
        "closed_sets": system.closed_sets().len(),
        "reduced": reduced,
        "standard": reduced && is_standard(&system),
        "convex_geometry": is_convex_geometry(&system),
    });

    if reduced {
        let poset = element_poset(&system);
        let table = build_cover_table(&system, &limits)?;
        let pair = |&(a, b): &(usize, usize)| json!([u.label(a), u.label(b)]);
        let sets = |v: &[closure_basis::ElementSet]| -> Value {
            v.iter().map(|&s| labels(u, s)).collect()
        };
        doc["poset_covers"] = poset.cover_relation.iter().map(pair).collect();
        doc["minimal_covers"] = u
            .names()
            .iter()
            .enumerate()
            .map(|(x, name)| (name.clone(), sets(&table.minimal_covers[x])))
            .collect::<serde_json::Map<_, _>>()
            .into();
        doc["minimized_covers"] = u
            .names()
            .iter()
            .enumerate()
            .map(|(x, name)| (name.clone(), sets(&table.minimized_covers[x])))
            .collect::<serde_json::Map<_, _>>()
            .into();
        doc["d_relation"] = table.d_pairs.iter().map(pair).collect();
        doc["e_relation"] = table.e_pairs.iter().map(pair).collect();

        let d = build_d_basis(&system)?;
        let cycle = d_cycles(&table);
        doc["d_cycle"] = match &cycle {
            Some(c) => c.iter().map(|&i| u.label(i)).collect(),
            None => Value::Null,
        };
        if cycle.is_none() {
            let ranks = d_ranks(&system, &d)?;
            doc["d_ranks"] = u
                .names()
                .iter()
                .enumerate()
                .map(|(x, name)| (name.clone(), json!(ranks.rank(x))))
                .collect::<serde_json::Map<_, _>>()
                .into();
        }

        let delta = build_sigma_delta(&system)?;
        let dg = build_dg_canonical(&system, &limits)?;
        let mut sizes = vec![
            ("sigma-delta", delta.len()),
            ("d", d.len()),
            ("d-aggregated", d.aggregate().len()),
        ];
        if cycle.is_none() {
            sizes.push(("e", build_e_basis(&system, Form::Unit)?.len()));
            sizes.push(("e-aggregated", build_e_basis(&system, Form::Aggregated)?.len()));
        }
        sizes.push(("dg", dg.len()));
        sizes.push(("dg-unit", dg.unit_expansion().len()));
        doc["basis_sizes"] = sizes
            .into_iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect::<serde_json::Map<_, _>>()
            .into();
    }

    if args.json {
        print_json(&doc);
    } else {
        print!("{}", analysis_text(&doc));
    }
    Ok(ExitCode::SUCCESS)
}

fn yes_no(v: &Value) -> &'static str {
    if v.as_bool().unwrap_or(false) {
        "yes"
    } else {
        "no"
    }
}

fn joined(v: &Value) -> String {
    match v {
        Value::Array(items) if items.is_empty() => "{}".into(),
        Value::Array(items) => items.iter().map(joined).collect::<Vec<_>>().join(" "),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn analysis_text(doc: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", joined(&doc["elements"]));
    let _ = writeln!(out, "closed sets: {}", doc["closed_sets"]);
    let _ = writeln!(out, "reduced: {}", yes_no(&doc["reduced"]));
    let _ = writeln!(out, "standard: {}", yes_no(&doc["standard"]));
    let _ = writeln!(out, "convex geometry: {}", yes_no(&doc["convex_geometry"]));
    if !doc["reduced"].as_bool().unwrap_or(false) {
        let _ = writeln!(out, "covers and bases need a reduced system; run `cbasis reduce` first");
        return out;
    }
    let pairs = |v: &Value, sep: &str| -> String {
        let items: Vec<String> = v
            .as_array()
            .into_iter()
            .flatten()
            .map(|p| format!("{}{sep}{}", joined(&p[0]), joined(&p[1])))
            .collect();
        if items.is_empty() {
            "none".into()
        } else {
            items.join(", ")
        }
    };
    let _ = writeln!(out, "poset covers: {}", pairs(&doc["poset_covers"], " > "));
    let covers = |v: &Value| -> String {
        let items: Vec<String> = v
            .as_array()
            .into_iter()
            .flatten()
            .map(|s| format!("{{{}}}", joined(s)))
            .collect();
        if items.is_empty() {
            "none".into()
        } else {
            items.join(" ")
        }
    };
    if let Some(map) = doc["minimal_covers"].as_object() {
        for (x, m) in map {
            let star = &doc["minimized_covers"][x.as_str()];
            let _ = writeln!(out, "M({x}): {}   M*({x}): {}", covers(m), covers(star));
        }
    }
    let _ = writeln!(out, "D-relation: {}", pairs(&doc["d_relation"], " D "));
    let _ = writeln!(out, "E-relation: {}", pairs(&doc["e_relation"], " E "));
    match &doc["d_cycle"] {
        Value::Null => {
            let _ = writeln!(out, "D-cycle: none");
        }
        c => {
            let _ = writeln!(out, "D-cycle: {}", joined(c));
        }
    }
    if let Some(ranks) = doc["d_ranks"].as_object() {
        let items: Vec<String> = ranks.iter().map(|(x, r)| format!("{x}:{r}")).collect();
        let _ = writeln!(out, "D-ranks: {}", items.join(" "));
    }
    if let Some(sizes) = doc["basis_sizes"].as_object() {
        for (k, v) in sizes {
            let _ = writeln!(out, "{k}: {v} implications");
        }
    }
    out
}

fn verify(args: &VerifyArgs, format: Option<Format>) -> Outcome<ExitCode> {
    let system = load_system(&args.system, format)?;
    let basis = load_basis(&args.ordered_direct, Some(system.universe()))?;
    let u = system.universe();
    match ordered_direct_witness(basis.implications(), &system, &Limits::default())? {
        None => {
            println!("ordered direct: {} implications", basis.len());
            Ok(ExitCode::SUCCESS)
        }
        Some(x) => {
            let swept = ordered_iteration(basis.implications(), x).closure;
            println!("not ordered direct");
            println!("witness: {}", u.format_set(x));
            println!("one sweep gives: {}", u.format_set(swept));
            println!("closure: {}", u.format_set(system.closure(x)));
            Ok(ExitCode::from(1))
        }
    }
}

fn order(args: &OrderArgs, format: Option<Format>) -> Outcome<ExitCode> {
    let limits = Limits {
        search_cap: args.search_cap,
        ..Limits::default()
    };
    let (basis, system) = match &args.system {
        Some(path) => {
            let system = load_system(path, format)?;
            (load_basis(&args.search, Some(system.universe()))?, system)
        }
        None => {
            let basis = load_basis(&args.search, None)?;
            let system = system_from_basis(&basis, &limits)?;
            (basis, system)
        }
    };
    match find_ordered_direct_ordering(basis.implications(), &system, &limits)? {
        Some(order) => {
            print!("{}", write_implications(&basis.permuted(&order)));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("no order of these {} implications is ordered direct", basis.len());
            Ok(ExitCode::from(1))
        }
    }
}

/// `A..B` (inclusive) or a single number.
fn parse_range(text: &str, what: &str) -> Outcome<RangeInclusive<usize>> {
    let bad = || Failure::Usage(format!("{what}: expected `MIN..MAX` or a number, got `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let n = num(text)?;
            n..=n
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

fn check_domain(n: usize) -> Outcome {
    if n == 0 || n > 20 {
        return Err(Failure::Usage(format!("domain size {n} is outside 1..20")));
    }
    Ok(())
}

fn generate(args: &GenerateArgs) -> Outcome<ExitCode> {
    check_domain(args.domain)?;
    let config = GeneratorConfig {
        generator_subsets: parse_range(&args.subsets, "--subsets")?,
        ..GeneratorConfig::new(args.domain, args.seed, args.count)
    };
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.out_dir.display())))?;
    for k in 0..args.count {
        let mut rng = trial_rng(args.seed, k as u64);
        let system = generate_system(&config, &mut rng);
        let path: PathBuf = args
            .out_dir
            .join(format!("system-n{}-{k:04}.fam", args.domain));
        write_file(&path, &write_family(&system))?;
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: &BenchArgs) -> Outcome<ExitCode> {
    let domains = parse_range(&args.domains, "--domains")?;
    check_domain(*domains.start())?;
    check_domain(*domains.end())?;
    let options = ExperimentOptions {
        timing: args.timing,
        repetitions: args.repetitions,
    };
    let mut rows = Vec::new();
    for n in domains {
        let config = GeneratorConfig::new(n, args.seed, args.trials);
        let records = run_experiment(&config, &options)?;
        rows.extend(summarize(&records, args.seed));
    }
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).map_err(|e| Failure::Usage(e.to_string()))?;
    match &args.out {
        Some(path) => fs::write(path, &buf)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&buf)
            .map_err(|e| Failure::Usage(e.to_string()))?,
    }
    Ok(ExitCode::SUCCESS)
}
