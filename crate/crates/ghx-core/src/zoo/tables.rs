//! Homology tables: one row per loop order, one column per vertex count (or
//! marked-edge count for forested graphs), with shading, certification and
//! Euler characteristics.

use std::fmt::Write as _;

use crate::engine::{
    certify, homology_corrected, homology_three_term, Engine, EngineError, HomologyEntry, OpKind, Operator, SliceSpec,
};

use super::forested::{forested_entry, max_marked};
use super::hairy::{isotypic_entries, IsotypicEntry};

/// Which complex a table shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    Ordinary { n_odd: bool },
    Merkulov { n_odd: bool },
    Hairy { n_odd: bool, m_odd: bool, hairs: usize },
    ColoredHairy { n_odd: bool, hairs: usize },
    Forested { n_odd: bool, hairs: usize },
}

impl TableKind {
    pub fn hairs(&self) -> usize {
        match *self {
            TableKind::Ordinary { .. } | TableKind::Merkulov { .. } => 0,
            TableKind::Hairy { hairs, .. }
            | TableKind::ColoredHairy { hairs, .. }
            | TableKind::Forested { hairs, .. } => hairs,
        }
    }

    /// Column label of the table axis.
    pub fn column_axis(&self) -> &'static str {
        match self {
            TableKind::Forested { .. } => "m",
            _ => "v",
        }
    }

    /// Largest column with a possibly nonempty slice at loop order `g`.
    pub fn max_column(&self, g: usize) -> usize {
        let h = self.hairs();
        match self {
            TableKind::Forested { .. } => max_marked(g, h),
            _ => (2 * g + h).saturating_sub(2),
        }
    }

    /// Known-vanishing shading of a cell.
    pub fn shaded(&self, g: usize, column: usize) -> bool {
        match *self {
            TableKind::Ordinary { .. } | TableKind::Merkulov { .. } => column > (2 * g).saturating_sub(2),
            TableKind::Hairy { hairs, .. } | TableKind::ColoredHairy { hairs, .. } => {
                let (lo, hi) = hairy_vanishing_range(g, hairs);
                (column as i64) < lo || (column as i64) > hi
            }
            TableKind::Forested { n_odd: false, hairs: 0 } => column >= 1 && 5 * column + 5 < 4 * g,
            TableKind::Forested { .. } => false,
        }
    }
}

/// Vertex counts `[g + h - 2, 2g + h - 2]` outside which hairy homology
/// vanishes.
pub fn hairy_vanishing_range(g: usize, h: usize) -> (i64, i64) {
    let (g, h) = (g as i64, h as i64);
    (g + h - 2, 2 * g + h - 2)
}

/// A table to compute: kind and loop-order range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRequest {
    pub kind: TableKind,
    pub min_loops: usize,
    pub max_loops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub column: usize,
    pub entry: HomologyEntry,
    pub shaded: bool,
    /// Isotypic decomposition (numbered hairs only).
    pub isotypic: Vec<IsotypicEntry>,
}

impl TableCell {
    /// Text such as `3 (s[2,1] + s[3])`, or just the value.
    pub fn display(&self) -> String {
        let mut s = self.entry.to_string();
        let parts: Vec<String> = self
            .isotypic
            .iter()
            .filter_map(|i| match i.multiplicity() {
                Some(0) | None => None,
                Some(1) => Some(format!("s{}", i.lambda)),
                Some(k) => Some(format!("{k}s{}", i.lambda)),
            })
            .collect();
        if !parts.is_empty() {
            let _ = write!(s, " ({})", parts.join(" + "));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub loops: usize,
    pub cells: Vec<TableCell>,
    /// Alternating sum of chain dimensions, when every slice was built.
    pub chi_chain: Option<i64>,
    /// Alternating sum of homology dimensions, when every cell is known.
    pub chi_homology: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub kind: TableKind,
    pub rows: Vec<TableRow>,
}

impl HomologyTable {
    pub fn cell(&self, g: usize, column: usize) -> Option<&TableCell> {
        self.rows.iter().find(|r| r.loops == g)?.cells.iter().find(|c| c.column == column)
    }

    fn width(&self) -> usize {
        self.rows.iter().flat_map(|r| r.cells.iter().map(|c| c.column + 1)).max().unwrap_or(0)
    }

    /// Aligned text, shaded cells marked with `*`.
    pub fn render_text(&self) -> String {
        let w = self.width();
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut head = vec![format!("g\\{}", self.kind.column_axis())];
        head.extend((0..w).map(|c| c.to_string()));
        head.push("chi".into());
        grid.push(head);
        for r in &self.rows {
            let mut line = vec![r.loops.to_string()];
            for c in 0..w {
                line.push(match r.cells.iter().find(|x| x.column == c) {
                    Some(x) => format!("{}{}", x.display(), if x.shaded { "*" } else { "" }),
                    None => "-".into(),
                });
            }
            line.push(r.chi_chain.map_or("?".into(), |x| x.to_string()));
            grid.push(line);
        }
        let cols = grid[0].len();
        let widths: Vec<usize> = (0..cols).map(|i| grid.iter().map(|l| l[i].len()).max().unwrap_or(0)).collect();
        let mut s = String::new();
        for l in &grid {
            let cells: Vec<String> = l.iter().zip(&widths).map(|(x, w)| format!("{x:>w$}")).collect();
            s.push_str(cells.join("  ").trim_end());
            s.push('\n');
        }
        s
    }

    /// One line per cell: `g,column,value,status,shaded,label`.
    pub fn render_csv(&self) -> String {
        let mut s = format!("g,{},value,status,shaded,decomposition\n", self.kind.column_axis());
        for r in &self.rows {
            for c in &r.cells {
                let full = c.display();
                let label = full.split_once(" (").map(|(_, l)| l.trim_end_matches(')').to_string()).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{:?},{},{}", r.loops, c.column, c.entry, c.entry.status, c.shaded, label);
            }
        }
        s
    }
}

/// Turns a capacity refusal into an unknown cell.
fn or_unknown<T>(r: Result<T, EngineError>, f: impl FnOnce(T) -> HomologyEntry) -> Result<HomologyEntry, EngineError> {
    match r {
        Ok(x) => Ok(f(x)),
        Err(EngineError::Capacity { .. }) => Ok(HomologyEntry::unknown()),
        Err(e) => Err(e),
    }
}

fn slice(kind: TableKind, g: usize, v: usize) -> SliceSpec {
    match kind {
        TableKind::Ordinary { n_odd } => SliceSpec::ordinary(n_odd, g, v),
        TableKind::Merkulov { n_odd } => SliceSpec::merkulov34(n_odd, g, v),
        TableKind::Hairy { n_odd, m_odd, hairs } => SliceSpec::hairy(n_odd, m_odd, g, v, hairs),
        TableKind::ColoredHairy { n_odd, hairs } => SliceSpec::colored_hairy(n_odd, g, v, hairs),
        TableKind::Forested { n_odd, hairs } => SliceSpec::forested(n_odd, g, v, hairs, 0),
    }
}

fn entry(engine: &Engine, kind: TableKind, g: usize, c: usize) -> Result<HomologyEntry, EngineError> {
    if let TableKind::Forested { n_odd, hairs } = kind {
        return forested_entry(engine, n_odd, g, c, hairs);
    }
    let here = slice(kind, g, c);
    let above = slice(kind, g, c + 1);
    let d = |s: SliceSpec| Operator::new(OpKind::Contract, s);
    if let TableKind::Merkulov { .. } = kind {
        let d2 = |s: SliceSpec| Operator::new(OpKind::ContractToHigh, s);
        let dim = engine.dimension(&here)?;
        let a = engine.rank(&[d(here), d2(here)])?;
        let b = engine.rank(&[d(above), d2(above)])?;
        let corr = engine.rank(&[d2(above)])?;
        return homology_corrected(dim, a, b, corr);
    }
    homology_three_term(engine.dimension(&here)?, engine.rank(&[d(here)])?, engine.rank(&[d(above)])?)
}

fn chain_dimension_sum(engine: &Engine, kind: TableKind, g: usize) -> Result<i64, EngineError> {
    let mut chi = 0i64;
    let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    match kind {
        TableKind::Forested { n_odd, hairs } => {
            for m in 0..=kind.max_column(g) + 1 {
                for e in 0..=2 * g + hairs {
                    chi += sign(m) * engine.dimension(&SliceSpec::forested(n_odd, g, m, hairs, e))? as i64;
                }
            }
        }
        _ => {
            for v in 0..=kind.max_column(g) {
                chi += sign(v) * engine.dimension(&slice(kind, g, v))? as i64;
            }
        }
    }
    Ok(chi)
}

/// Computes a table. Cells whose slices exceed the engine capacity come
/// out as unknown; any other failure aborts. Rows are certified by the
/// adjacent-zero rule, except truncated-valence rows whose formula has a
/// correction term.
pub fn compute_table(engine: &Engine, req: &TableRequest) -> Result<HomologyTable, EngineError> {
    let kind = req.kind;
    let mut rows = Vec::new();
    for g in req.min_loops..=req.max_loops {
        let mut cells = Vec::new();
        for c in 0..=kind.max_column(g) {
            let e = or_unknown(entry(engine, kind, g, c), |x| x)?;
            let isotypic = match kind {
                TableKind::ColoredHairy { n_odd, hairs } if e.numeric().is_some_and(|x| x > 0) => {
                    match isotypic_entries(engine, n_odd, g, c, hairs) {
                        Ok(i) => i,
                        Err(EngineError::Capacity { .. }) => Vec::new(),
                        Err(err) => return Err(err),
                    }
                }
                _ => Vec::new(),
            };
            cells.push(TableCell { column: c, entry: e, shaded: kind.shaded(g, c), isotypic });
        }
        if !matches!(kind, TableKind::Merkulov { .. }) {
            let mut entries: Vec<HomologyEntry> = cells.iter().map(|c| c.entry).collect();
            certify(&mut entries);
            for (c, e) in cells.iter_mut().zip(entries) {
                c.entry = e;
            }
        }
        let chi_chain = match chain_dimension_sum(engine, kind, g) {
            Ok(x) => Some(x),
            Err(EngineError::Capacity { .. }) => None,
            Err(e) => return Err(e),
        };
        let chi_homology = cells
            .iter()
            .map(|c| c.entry.numeric().map(|x| if c.column % 2 == 0 { x } else { -x }))
            .sum::<Option<i64>>();
        rows.push(TableRow { loops: g, cells, chi_chain, chi_homology });
    }
    Ok(HomologyTable { kind, rows })
}
