//! The concrete complex families: enumeration of slice bases, the terms of
//! each operator, table assembly and the special cycles.

pub mod cycles;
pub mod forested;
pub mod hairy;
pub mod ordinary;
pub mod suites;
pub mod tables;

use crate::engine::{EngineError, Family, OpKind, Operator, SliceSpec, Term};
use crate::graph::{ColoredGraph, Obj};

pub use cycles::{cycle_report, is_closed, morita_cycle, odd_w_graph, w_cycle, CycleReport};
pub use forested::{
    contraction_rank_from_dims, forested_admissible, forested_checks, forested_entry, max_marked, ForestedChecks,
};
pub use hairy::{
    action_matrix, hair_removal_report, hairy_admissible, isotypic_entries, HairRemovalReport, IsotypicEntry,
};
pub use ordinary::{in_valence_window, ordinary_admissible, ordinary_degree};
pub use suites::CaseOutcome;
pub use tables::{compute_table, hairy_vanishing_range, HomologyTable, TableCell, TableKind, TableRequest, TableRow};

/// Removes `o` from an orientation word and returns the sign `(-1)^k` of
/// taking it from position `k` (a left derivative). Panics if `o` is not
/// present, which would be a bookkeeping bug.
pub(crate) fn take(word: &mut Vec<Obj>, o: Obj) -> i8 {
    let k = word.iter().position(|&x| x == o).unwrap_or_else(|| panic!("{o:?} not in orientation word"));
    word.remove(k);
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Canonical, admissible, nonzero graphs of a slice.
pub fn enumerate(spec: &SliceSpec) -> Result<Vec<ColoredGraph>, EngineError> {
    if !spec.feasible() {
        return Ok(Vec::new());
    }
    Ok(match spec.family {
        Family::Ordinary | Family::Merkulov34 | Family::Merkulov56 => ordinary::enumerate(spec),
        Family::Hairy | Family::ColoredHairy => hairy::enumerate(spec),
        Family::Forested => forested::enumerate(spec),
    })
}

/// The summands of `op` applied to one domain graph, each signed relative
/// to the reference orientation of its own (labeled) graph under the
/// target convention.
pub fn terms(op: &Operator, g: &ColoredGraph) -> Vec<Term> {
    let conv = op.domain.convention();
    match op.kind {
        OpKind::Contract | OpKind::ContractToHigh => ordinary::contraction_terms(g, &conv),
        OpKind::ContractMarked => forested::contract_marked_terms(g, op.domain.n_odd),
        OpKind::Unmark => forested::unmark_terms(g, op.domain.n_odd),
        OpKind::HairRemoval => hairy::hair_removal_terms(g, &conv),
    }
}
