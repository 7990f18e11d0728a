//! Named self-check suites, run case by case so that a report can list
//! every failure rather than stopping at the first.

use crate::engine::{Engine, EngineError, OpKind, Operator, SliceSpec};
use crate::reference::{compare, ReferenceTable};

use super::forested::forested_checks;
use super::hairy::isotypic_entries;
use super::tables::{compute_table, hairy_vanishing_range, TableKind, TableRequest};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub suite: &'static str,
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

impl CaseOutcome {
    fn new(suite: &'static str, case: String, passed: bool, detail: impl Into<String>) -> Self {
        CaseOutcome { suite, case, passed, detail: detail.into() }
    }
}

fn slice(kind: TableKind, g: usize, v: usize) -> Option<SliceSpec> {
    Some(match kind {
        TableKind::Ordinary { n_odd } => SliceSpec::ordinary(n_odd, g, v),
        TableKind::Merkulov { n_odd } => SliceSpec::merkulov34(n_odd, g, v),
        TableKind::Hairy { n_odd, m_odd, hairs } => SliceSpec::hairy(n_odd, m_odd, g, v, hairs),
        TableKind::ColoredHairy { n_odd, hairs } => SliceSpec::colored_hairy(n_odd, g, v, hairs),
        TableKind::Forested { .. } => return None,
    })
}

/// `d² = 0` on every consecutive pair of slices; for the truncated-valence
/// complex also the relation between its two differentials, and for
/// forested graphs all three relations between `d_c` and `d_u`.
pub fn square_zero(
    engine: &Engine,
    kind: TableKind,
    loops: std::ops::RangeInclusive<usize>,
) -> Result<Vec<CaseOutcome>, EngineError> {
    let mut out = Vec::new();
    for g in loops {
        if let TableKind::Forested { n_odd, hairs } = kind {
            let c = forested_checks(engine, n_odd, g, hairs)?;
            out.push(CaseOutcome::new(
                "d2",
                format!("{kind:?} g={g}"),
                c.squares_vanish,
                "d_c², d_u², d_c d_u + d_u d_c",
            ));
            continue;
        }
        for v in 1..=kind.max_column(g) + 1 {
            let (Some(here), Some(below)) = (slice(kind, g, v), slice(kind, g, v - 1)) else { continue };
            if engine.dimension(&here)? == 0 {
                continue;
            }
            let d = |s| Operator::new(OpKind::Contract, s);
            let mut ok = engine.composite_violation(&[(d(here), d(below))])?.is_none();
            if let TableKind::Merkulov { n_odd } = kind {
                let d2 = |s| Operator::new(OpKind::ContractToHigh, s);
                ok &= engine
                    .composite_violation(&[
                        (d2(here), d(SliceSpec::merkulov56(n_odd, g, v - 1))),
                        (d(here), d2(below)),
                    ])?
                    .is_none();
            }
            out.push(CaseOutcome::new("d2", format!("{kind:?} g={g} v={v}"), ok, "composite vanishes"));
        }
    }
    Ok(out)
}

/// Forested `d_c`/`d_u` relations, excess concentration and the
/// contraction-rank identity.
pub fn forested_suite(
    engine: &Engine,
    n_odd: bool,
    hairs: usize,
    loops: std::ops::RangeInclusive<usize>,
) -> Result<Vec<CaseOutcome>, EngineError> {
    let mut out = Vec::new();
    for g in loops {
        let c = forested_checks(engine, n_odd, g, hairs)?;
        let case = || format!("n_odd={n_odd} r={hairs} g={g}");
        out.push(CaseOutcome::new("anticommute", case(), c.squares_vanish, "d_c/d_u relations"));
        out.push(CaseOutcome::new("excess", case(), c.concentrated_in_excess_zero, "homology of d_c only in excess 0"));
        out.push(CaseOutcome::new("excess", case(), c.contraction_rank_identity, "rank d_c from dimensions"));
        out.push(CaseOutcome::new("euler", case(), c.euler_characteristic, "chain and homology chi agree"));
    }
    Ok(out)
}

/// Isotypic dimensions add up to the total on every nonempty colored
/// hairy slice. Slices above the isotypic work limit are listed as
/// skipped in a final case.
pub fn isotypic_completeness(
    engine: &Engine,
    n_odd: bool,
    hairs: usize,
    loops: std::ops::RangeInclusive<usize>,
) -> Result<Vec<CaseOutcome>, EngineError> {
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for g in loops {
        let kind = TableKind::ColoredHairy { n_odd, hairs };
        let t = compute_table(engine, &TableRequest { kind, min_loops: g, max_loops: g })?;
        for cell in &t.rows[0].cells {
            let Some(total) = cell.entry.numeric() else { continue };
            if engine.dimension(&SliceSpec::colored_hairy(n_odd, g, cell.column, hairs))? == 0 {
                continue;
            }
            let parts = match isotypic_entries(engine, n_odd, g, cell.column, hairs) {
                Ok(p) => p,
                Err(EngineError::Capacity { size, limit, .. }) => {
                    skipped.push(format!("g={g} v={} (work {size} > {limit})", cell.column));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let sum: Option<i64> = parts.iter().map(|p| p.entry.numeric()).sum();
            out.push(CaseOutcome::new(
                "isotypic",
                format!("n_odd={n_odd} r={hairs} g={g} v={}", cell.column),
                sum == Some(total),
                format!("sum {sum:?}, total {total}"),
            ));
        }
    }
    if !skipped.is_empty() {
        let case = format!("n_odd={n_odd} r={hairs} skipped");
        out.push(CaseOutcome::new("isotypic", case, true, skipped.join(", ")));
    }
    Ok(out)
}

/// Euler characteristic from chain dimensions equals the one from homology
/// on every fully computed row.
pub fn euler(
    engine: &Engine,
    kind: TableKind,
    loops: std::ops::RangeInclusive<usize>,
) -> Result<Vec<CaseOutcome>, EngineError> {
    let t = compute_table(engine, &TableRequest { kind, min_loops: *loops.start(), max_loops: *loops.end() })?;
    Ok(t.rows
        .iter()
        .filter_map(|r| {
            let (a, b) = (r.chi_chain?, r.chi_homology?);
            Some(CaseOutcome::new(
                "euler",
                format!("{kind:?} g={}", r.loops),
                a == b,
                format!("chain {a}, homology {b}"),
            ))
        })
        .collect())
}

/// No computed nonzero cell lies in a known-vanishing region.
pub fn vanishing(
    engine: &Engine,
    kind: TableKind,
    loops: std::ops::RangeInclusive<usize>,
) -> Result<Vec<CaseOutcome>, EngineError> {
    let t = compute_table(engine, &TableRequest { kind, min_loops: *loops.start(), max_loops: *loops.end() })?;
    let mut out = Vec::new();
    for r in &t.rows {
        for c in &r.cells {
            if !c.shaded {
                continue;
            }
            let ok = matches!(c.entry.numeric(), Some(0) | None);
            let window = match kind {
                TableKind::Hairy { hairs, .. } | TableKind::ColoredHairy { hairs, .. } => {
                    format!(" window {:?}", hairy_vanishing_range(r.loops, hairs))
                }
                _ => String::new(),
            };
            out.push(CaseOutcome::new(
                "vanishing",
                format!("{kind:?} g={} {}={}", r.loops, kind.column_axis(), c.column),
                ok,
                format!("value {}{window}", c.entry),
            ));
        }
    }
    Ok(out)
}

/// Computes the rows of `reference` within `loops` and compares them.
pub fn reference_suite(
    engine: &Engine,
    reference: &ReferenceTable,
    loops: std::ops::RangeInclusive<usize>,
) -> Result<CaseOutcome, EngineError> {
    let rows: Vec<usize> = reference.rows.iter().map(|r| r.loops).filter(|g| loops.contains(g)).collect();
    let case = format!("{} {:?}", reference.figure, reference.kind);
    let (Some(&lo), Some(&hi)) = (rows.iter().min(), rows.iter().max()) else {
        return Ok(CaseOutcome::new("reference", case, true, "no rows in range"));
    };
    let t = compute_table(engine, &TableRequest { kind: reference.kind, min_loops: lo, max_loops: hi })?;
    let c = compare(&t, reference);
    let detail = if c.is_match() {
        format!("{} cells, {} decompositions", c.compared, c.labels_compared)
    } else {
        c.mismatches
            .iter()
            .map(|m| {
                format!("g={} col={:?}: ours {} reference {} ({})", m.loops, m.column, m.ours, m.reference, m.reason)
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    Ok(CaseOutcome::new("reference", case, c.is_match(), detail))
}
