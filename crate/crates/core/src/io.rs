//! Text formats.
//!
//! Closed families (`.fam`): one closed set per line, labels separated by
//! whitespace, `{}` for the empty set. Implications (`.imp`): one
//! `LHS -> RHS` per line, `{}` for an empty premise. In both, `#` starts a
//! comment, blank lines are ignored, and the first line may be
//! `universe: a b c ...` to fix the element order. Without it the universe
//! is every label that occurs, ordered numerically when all labels are
//! integers and lexicographically otherwise.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::implication::{Basis, Implication};
use crate::reduction::ReductionMap;
use crate::set::{ElementSet, Universe};
use crate::system::ClosureSystem;

const UNIVERSE: &str = "universe:";
const EMPTY: &str = "{}";

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_error(line: usize, token: &str, message: &str) -> Error {
    Error::Parse {
        line,
        token: token.to_string(),
        message: message.to_string(),
    }
}

/// Labels in natural order: numeric if every label is an integer.
fn natural_order(mut labels: Vec<String>) -> Vec<String> {
    labels.sort();
    labels.dedup();
    if labels.iter().all(|l| l.parse::<u64>().is_ok()) {
        labels.sort_by_key(|l| (l.parse::<u64>().unwrap(), l.clone()));
    }
    labels
}

/// Splits off a leading `universe:` declaration.
fn declared_universe(
    lines: &mut Vec<(usize, &str)>,
) -> Result<Option<Universe>> {
    match lines.first() {
        Some(&(no, line)) if line.starts_with(UNIVERSE) => {
            lines.remove(0);
            let labels = line[UNIVERSE.len()..].split_whitespace();
            Universe::new(labels)
                .map(Some)
                .map_err(|e| parse_error(no, line, &e.to_string()))
        }
        _ => Ok(None),
    }
}

fn tokens(side: &str) -> Vec<&str> {
    let toks: Vec<&str> = side.split_whitespace().collect();
    if toks == [EMPTY] {
        Vec::new()
    } else {
        toks
    }
}

fn set_of(universe: &Universe, line: usize, toks: &[&str]) -> Result<ElementSet> {
    let mut set = ElementSet::empty();
    for tok in toks {
        match universe.index_of(tok) {
            Some(i) => set.insert(i),
            None => return Err(parse_error(line, tok, "label not in the declared universe")),
        }
    }
    Ok(set)
}

fn check_label(line: usize, tok: &str) -> Result<()> {
    if tok.starts_with('{') || tok.ends_with('}') || tok.contains("->") || tok.ends_with(':') {
        return Err(parse_error(line, tok, "invalid element label"));
    }
    Ok(())
}

fn universe_for(declared: Option<Universe>, labels: Vec<String>) -> Result<Universe> {
    match declared {
        Some(u) => Ok(u),
        None => Universe::new(natural_order(labels)),
    }
}

/// Parses a closed family; the result is Moore-completed if needed
/// (see [`ClosureSystem::was_completed`]).
pub fn parse_family(text: &str) -> Result<ClosureSystem> {
    let mut lines: Vec<(usize, &str)> = content_lines(text).collect();
    let declared = declared_universe(&mut lines)?;
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::with_capacity(lines.len());
    let mut labels = Vec::new();
    for (no, line) in lines {
        let toks = tokens(line);
        for tok in &toks {
            check_label(no, tok)?;
            labels.push(tok.to_string());
        }
        rows.push((no, toks));
    }
    let universe = universe_for(declared, labels)?;
    let family = rows
        .iter()
        .map(|(no, toks)| set_of(&universe, *no, toks))
        .collect::<Result<Vec<_>>>()?;
    ClosureSystem::from_family(universe, family)
}

/// Parses implications, in file order. With `universe` given, every label
/// must belong to it and any `universe:` line in the text is ignored.
pub fn parse_implications(text: &str, universe: Option<&Universe>) -> Result<Basis> {
    let mut lines: Vec<(usize, &str)> = content_lines(text).collect();
    let declared = declared_universe(&mut lines)?;
    let mut rows = Vec::with_capacity(lines.len());
    let mut labels = Vec::new();
    for (no, line) in lines {
        let Some((lhs, rhs)) = line.split_once("->") else {
            return Err(parse_error(no, line, "expected `LHS -> RHS`"));
        };
        let (lhs, rhs) = (tokens(lhs), tokens(rhs));
        if rhs.is_empty() {
            return Err(parse_error(no, line, "empty conclusion"));
        }
        for tok in lhs.iter().chain(&rhs) {
            check_label(no, tok)?;
            labels.push(tok.to_string());
        }
        rows.push((no, lhs, rhs));
    }
    let universe = match universe {
        Some(u) => u.clone(),
        None => universe_for(declared, labels)?,
    };
    let implications = rows
        .iter()
        .map(|(no, lhs, rhs)| {
            Ok(Implication::new(
                set_of(&universe, *no, lhs)?,
                set_of(&universe, *no, rhs)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Basis::infer(universe, implications)
}

fn universe_line(universe: &Universe) -> String {
    format!("{UNIVERSE} {}\n", universe.names().join(" "))
}

pub fn write_family(system: &ClosureSystem) -> String {
    let u = system.universe();
    let mut out = universe_line(u);
    for &set in system.closed_sets() {
        out.push_str(&u.format_set(set));
        out.push('\n');
    }
    out
}

/// One implication per line, in basis order.
pub fn write_implications(basis: &Basis) -> String {
    let mut out = universe_line(basis.universe());
    for imp in basis.iter() {
        let _ = writeln!(out, "{}", imp.display(basis.universe()));
    }
    out
}

/// `orig -> rep` per original element, `{}` for removed elements.
pub fn write_map(map: &ReductionMap, original: &Universe) -> String {
    let mut out = String::from("# original -> representative, {} if removed\n");
    for (i, rep) in map.class_representative.iter().enumerate() {
        let label = original.label(i);
        let kept = rep.filter(|r| map.index_in_output[*r].is_some());
        let _ = match kept {
            Some(r) => writeln!(out, "{label} -> {}", original.label(r)),
            None if map.removed_zero.contains(i) => {
                writeln!(out, "{label} -> {EMPTY}  # in the closure of the empty set")
            }
            None => writeln!(out, "{label} -> {EMPTY}  # dropped while standardizing"),
        };
    }
    out
}
