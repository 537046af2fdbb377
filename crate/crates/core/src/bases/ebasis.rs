use crate::error::{Error, Result};
use crate::implication::{Basis, Form, Implication};
use crate::reduction::require_reduced;
use crate::set::ElementSet;
use crate::structure::{cover_table_from, CoverContext, CoverTable};
use crate::system::{ClosureSystem, Limits};

use super::canonical_key;
use super::dbasis::binary_part_of;

/// D-rank per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    pub d_rank: Vec<usize>,
}

impl RankTable {
    pub fn rank(&self, x: usize) -> usize {
        self.d_rank[x]
    }

    /// `D*`: the largest rank in `premise`.
    pub fn premise_rank(&self, premise: ElementSet) -> usize {
        premise.iter().map(|x| self.d_rank[x]).max().unwrap_or(0)
    }

    pub fn max_rank(&self) -> usize {
        self.d_rank.iter().copied().max().unwrap_or(0)
    }
}

/// A cycle in the digraph `x -> y` for `y ∈ successors[x]`, rotated to start
/// at its smallest element. Depth-first from the lowest index.
fn find_cycle(successors: &[ElementSet]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = successors.len();
    let mut mark = vec![Mark::New; n];
    let mut path: Vec<usize> = Vec::new();

    fn visit(
        x: usize,
        successors: &[ElementSet],
        mark: &mut [Mark],
        path: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        mark[x] = Mark::Open;
        path.push(x);
        for y in successors[x] {
            match mark[y] {
                Mark::Open => {
                    let start = path.iter().position(|&p| p == y).expect("open on path");
                    let mut cycle = path[start..].to_vec();
                    let low = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
                    cycle.rotate_left(low);
                    return Some(cycle);
                }
                Mark::New => {
                    if let Some(c) = visit(y, successors, mark, path) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        path.pop();
        mark[x] = Mark::Done;
        None
    }

    (0..n).find_map(|x| {
        if mark[x] == Mark::New {
            visit(x, successors, &mut mark, &mut path)
        } else {
            None
        }
    })
}

/// A cycle of the D-relation, if any.
pub fn d_cycles(cover_table: &CoverTable) -> Option<Vec<usize>> {
    let successors: Vec<ElementSet> = (0..cover_table.minimal_covers.len())
        .map(|x| cover_table.d_successors(x))
        .collect();
    find_cycle(&successors)
}

/// Longest path lengths in an acyclic successor relation.
fn ranks_from(successors: &[ElementSet]) -> Result<Vec<usize>> {
    if let Some(cycle) = find_cycle(successors) {
        return Err(Error::DCycle { cycle });
    }
    let n = successors.len();
    let mut rank: Vec<Option<usize>> = vec![None; n];
    // each round settles every element whose successors are settled
    while rank.iter().any(Option::is_none) {
        for x in 0..n {
            if rank[x].is_some() {
                continue;
            }
            let settled: Option<Vec<usize>> = successors[x].iter().map(|y| rank[y]).collect();
            if let Some(below) = settled {
                rank[x] = Some(below.into_iter().max().map_or(0, |r| r + 1));
            }
        }
    }
    Ok(rank.into_iter().map(|r| r.unwrap()).collect())
}

/// D-ranks read off the non-binary implications of a D-basis: rank 0 for
/// elements never concluded, otherwise one more than the largest rank in
/// any premise concluding them.
pub fn d_ranks(system: &ClosureSystem, d_basis: &Basis) -> Result<RankTable> {
    let mut successors = vec![ElementSet::empty(); system.len()];
    for imp in d_basis.iter().filter(|imp| !imp.is_binary()) {
        for x in imp.conclusion() {
            successors[x] |= imp.premise();
        }
    }
    Ok(RankTable {
        d_rank: ranks_from(&successors)?,
    })
}

/// Binary implications first in their given order, then the rest by
/// ascending `D*`, premise mask and conclusion mask.
pub fn rank_order(basis: &Basis, ranks: &RankTable) -> Basis {
    let mut binary: Vec<Implication> = Vec::new();
    let mut rest: Vec<Implication> = Vec::new();
    for imp in basis.iter() {
        if imp.is_binary() {
            binary.push(*imp);
        } else {
            rest.push(*imp);
        }
    }
    rest.sort_by_key(|imp| {
        (
            ranks.premise_rank(imp.premise()),
            imp.premise().bits(),
            imp.conclusion().bits(),
        )
    });
    binary.extend(rest);
    Basis::from_parts_unchecked(basis.universe().clone(), binary, basis.form())
}

fn e_implications(ctx: &CoverContext, table: &CoverTable) -> (Vec<Implication>, Vec<Implication>) {
    let binary = binary_part_of(&ctx.singletons);
    let non_binary = table
        .minimized_covers
        .iter()
        .enumerate()
        .flat_map(|(x, covers)| covers.iter().map(move |&c| Implication::unit(c, x)))
        .collect();
    (binary, non_binary)
}

fn finish(system: &ClosureSystem, implications: Vec<Implication>, form: Form) -> Basis {
    let unit = Basis::from_parts_unchecked(system.universe().clone(), implications, Form::Unit);
    match form {
        Form::Unit => unit,
        Form::Aggregated => unit.aggregate(),
    }
}

/// The E-basis of a reduced system without D-cycles, binary implications
/// first, then by D-rank of the premise.
pub fn build_e_basis(system: &ClosureSystem, form: Form) -> Result<Basis> {
    require_reduced(system)?;
    let ctx = CoverContext::new(system, &Limits::default())?;
    let table = cover_table_from(&ctx, system.len());
    if let Some(cycle) = d_cycles(&table) {
        return Err(Error::DCycle { cycle });
    }
    let successors: Vec<ElementSet> = (0..system.len()).map(|x| table.d_successors(x)).collect();
    let ranks = RankTable {
        d_rank: ranks_from(&successors)?,
    };
    let (binary, non_binary) = e_implications(&ctx, &table);
    let mut implications = binary;
    implications.extend(non_binary);
    let unit = Basis::from_parts_unchecked(system.universe().clone(), implications, Form::Unit);
    let ordered = rank_order(&unit, &ranks);
    Ok(finish(system, ordered.into_implications(), form))
}

/// The same construction with the cycle check skipped. On systems with
/// D-cycles the result need not generate the system.
pub fn build_e_basis_forced(system: &ClosureSystem, form: Form) -> Result<Basis> {
    require_reduced(system)?;
    let ctx = CoverContext::new(system, &Limits::default())?;
    let table = cover_table_from(&ctx, system.len());
    let (binary, mut non_binary) = e_implications(&ctx, &table);
    non_binary.sort_by_key(canonical_key);
    let mut implications = binary;
    implications.extend(non_binary);
    Ok(finish(system, implications, form))
}
