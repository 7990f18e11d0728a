//! Bundled reference tables and the comparison of computed tables against
//! them.
//!
//! The data files under `data/reference` are hand transcriptions of
//! published homology tables. Each file is audited by the checksum list
//! shipped next to it, so an accidental edit is caught before any
//! comparison runs. Cell syntax: `-` empty slice, `?` not computed, a
//! number, or a number followed by its isotypic decomposition such as
//! `8(2s[2,1,1]+2s[1,1,1,1])`; a trailing `*` marks a shaded cell.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::{sha256_hex, Cell};
use crate::symrep::Partition;
use crate::zoo::{HomologyTable, TableKind};

const FILES: &[(&str, &str)] = &[
    ("colored-hairy.tbl", include_str!("../data/reference/colored-hairy.tbl")),
    ("forested-n-even.tbl", include_str!("../data/reference/forested-n-even.tbl")),
    ("forested-n-odd.tbl", include_str!("../data/reference/forested-n-odd.tbl")),
    ("hairy-n-even-m-even.tbl", include_str!("../data/reference/hairy-n-even-m-even.tbl")),
    ("hairy-n-even-m-odd.tbl", include_str!("../data/reference/hairy-n-even-m-odd.tbl")),
    ("hairy-n-odd-m-even.tbl", include_str!("../data/reference/hairy-n-odd-m-even.tbl")),
    ("hairy-n-odd-m-odd.tbl", include_str!("../data/reference/hairy-n-odd-m-odd.tbl")),
    ("merkulov.tbl", include_str!("../data/reference/merkulov.tbl")),
    ("ordinary.tbl", include_str!("../data/reference/ordinary.tbl")),
];

const CHECKSUMS: &str = include_str!("../data/reference/SHA256SUMS");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReferenceError {
    #[error("checksum mismatch for {file}")]
    Checksum { file: String },
    #[error("{file} is not listed in the checksum file")]
    Unlisted { file: String },
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
}

/// A transcribed cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefCell {
    Empty,
    /// A dimension with its isotypic decomposition, when one is printed.
    Value {
        value: i64,
        labels: BTreeMap<Partition, i64>,
    },
    Unknown,
}

impl RefCell {
    /// Numeric value with `-` read as 0.
    pub fn numeric(&self) -> Option<i64> {
        match self {
            RefCell::Empty => Some(0),
            RefCell::Value { value, .. } => Some(*value),
            RefCell::Unknown => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefEntry {
    pub cell: RefCell,
    pub shaded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefRow {
    pub loops: usize,
    /// `(column, entry)` in column order.
    pub entries: Vec<(usize, RefEntry)>,
    /// Printed Euler characteristic of the row and its expected value,
    /// where the table has them (`None` also for `?`).
    pub chi: Option<i64>,
    pub chi_ref: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceTable {
    /// Name of the data file the table came from.
    pub figure: String,
    pub kind: TableKind,
    pub rows: Vec<RefRow>,
}

impl ReferenceTable {
    pub fn entry(&self, g: usize, column: usize) -> Option<&RefEntry> {
        let row = self.rows.iter().find(|r| r.loops == g)?;
        row.entries.iter().find(|(c, _)| *c == column).map(|(_, e)| e)
    }
}

/// Checks every bundled file against the shipped checksums.
pub fn verify_checksums() -> Result<(), ReferenceError> {
    let listed: BTreeMap<&str, &str> =
        CHECKSUMS.lines().filter_map(|l| l.split_once("  ").map(|(h, f)| (f.trim(), h.trim()))).collect();
    for (file, text) in FILES {
        let expected = listed.get(file).ok_or_else(|| ReferenceError::Unlisted { file: file.to_string() })?;
        if sha256_hex(text.as_bytes()) != *expected {
            return Err(ReferenceError::Checksum { file: file.to_string() });
        }
    }
    Ok(())
}

/// All bundled tables, after the checksum audit.
pub fn bundled() -> Result<Vec<ReferenceTable>, ReferenceError> {
    verify_checksums()?;
    let mut out = Vec::new();
    for (file, text) in FILES {
        out.extend(parse_file(file, text)?);
    }
    Ok(out)
}

/// The bundled table for `kind`, if there is one.
pub fn find(kind: TableKind) -> Result<Option<ReferenceTable>, ReferenceError> {
    Ok(bundled()?.into_iter().find(|t| t.kind == kind))
}

fn parse_file(file: &str, text: &str) -> Result<Vec<ReferenceTable>, ReferenceError> {
    let err = |line: usize, message: String| ReferenceError::Parse { file: file.to_string(), line, message };
    let figure = file.trim_end_matches(".tbl").to_string();
    let mut tables = Vec::new();
    let mut current: Option<(TableKind, Vec<usize>, Vec<RefRow>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let no = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (word, rest) = line.split_once(' ').unwrap_or((line, ""));
        match word {
            "table" => {
                if current.is_some() {
                    return Err(err(no, "table inside table".into()));
                }
                let kind = parse_kind(rest).map_err(|m| err(no, m))?;
                current = Some((kind, Vec::new(), Vec::new()));
            }
            "cols" => {
                let t = current.as_mut().ok_or_else(|| err(no, "cols outside table".into()))?;
                t.1 = rest
                    .split_whitespace()
                    .map(|c| c.parse().map_err(|_| err(no, format!("bad column {c}"))))
                    .collect::<Result<_, _>>()?;
            }
            "row" => {
                let t = current.as_mut().ok_or_else(|| err(no, "row outside table".into()))?;
                let row = parse_row(rest, &t.1).map_err(|m| err(no, m))?;
                t.2.push(row);
            }
            "end" => {
                let (kind, _, rows) = current.take().ok_or_else(|| err(no, "end outside table".into()))?;
                tables.push(ReferenceTable { figure: figure.clone(), kind, rows });
            }
            _ => return Err(err(no, format!("unexpected {word}"))),
        }
    }
    if current.is_some() {
        return Err(err(text.lines().count(), "unterminated table".into()));
    }
    Ok(tables)
}

fn parse_kind(rest: &str) -> Result<TableKind, String> {
    let fields: BTreeMap<&str, &str> = rest.split_whitespace().filter_map(|f| f.split_once('=')).collect();
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| format!("missing {k}"));
    let parity = |k: &str| match get(k)? {
        "odd" => Ok(true),
        "even" => Ok(false),
        other => Err(format!("bad parity {other}")),
    };
    let n_odd = parity("n")?;
    let hairs: usize = get("hairs")?.parse().map_err(|_| "bad hair count".to_string())?;
    Ok(match get("kind")? {
        "ordinary" => TableKind::Ordinary { n_odd },
        "merkulov" => TableKind::Merkulov { n_odd },
        "hairy" => TableKind::Hairy { n_odd, m_odd: parity("m")?, hairs },
        "colored-hairy" => TableKind::ColoredHairy { n_odd, hairs },
        "forested" => TableKind::Forested { n_odd, hairs },
        other => return Err(format!("unknown kind {other}")),
    })
}

fn parse_row(rest: &str, columns: &[usize]) -> Result<RefRow, String> {
    let mut toks = rest.split_whitespace();
    let loops = toks.next().ok_or("missing loop order")?.parse().map_err(|_| "bad loop order")?;
    let mut entries = Vec::new();
    let (mut chi, mut chi_ref) = (None, None);
    for tok in toks {
        if let Some(v) = tok.strip_prefix("chi=") {
            chi = v.parse().ok();
        } else if let Some(v) = tok.strip_prefix("chi_ref=") {
            chi_ref = v.parse().ok();
        } else {
            let column = *columns.get(entries.len()).ok_or("more cells than columns")?;
            entries.push((column, parse_cell(tok)?));
        }
    }
    if entries.len() != columns.len() {
        return Err(format!("{} cells for {} columns", entries.len(), columns.len()));
    }
    Ok(RefRow { loops, entries, chi, chi_ref })
}

fn parse_cell(tok: &str) -> Result<RefEntry, String> {
    let (body, shaded) = match tok.strip_suffix('*') {
        Some(b) => (b, true),
        None => (tok, false),
    };
    let cell = match body {
        "-" => RefCell::Empty,
        "?" => RefCell::Unknown,
        _ => {
            let (num, labels) = match body.split_once('(') {
                Some((n, l)) => (n, Some(l.strip_suffix(')').ok_or_else(|| format!("unclosed label in {tok}"))?)),
                None => (body, None),
            };
            let value = num.parse().map_err(|_| format!("bad cell {tok}"))?;
            let labels = match labels {
                Some(l) => parse_labels(l)?,
                None => BTreeMap::new(),
            };
            RefCell::Value { value, labels }
        }
    };
    Ok(RefEntry { cell, shaded })
}

/// `2s[2,1,1]+s[1,1,1,1]` into multiplicities.
fn parse_labels(text: &str) -> Result<BTreeMap<Partition, i64>, String> {
    let mut out = BTreeMap::new();
    for term in text.split('+') {
        let (coef, shape) = term.split_once("s[").ok_or_else(|| format!("bad label {term}"))?;
        let k: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| format!("bad coefficient {coef}"))? };
        let parts = shape
            .strip_suffix(']')
            .ok_or_else(|| format!("bad label {term}"))?
            .split(',')
            .map(|p| p.parse::<usize>().map_err(|_| format!("bad part {p}")))
            .collect::<Result<Vec<_>, _>>()?;
        let lambda = Partition::new(parts).map_err(|e| e.to_string())?;
        *out.entry(lambda).or_insert(0) += k;
    }
    Ok(out)
}

/// One disagreement between a computed and a reference cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub loops: usize,
    /// `None` for a row-level (Euler characteristic) mismatch.
    pub column: Option<usize>,
    pub ours: String,
    pub reference: String,
    pub reason: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Comparison {
    /// Cells where both sides have a value.
    pub compared: usize,
    /// Cells whose isotypic decomposition was also compared.
    pub labels_compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every computed cell that overlaps the reference.
///
/// * Values must agree, with `-` read as 0 on both sides.
/// * A reference `-` (no graphs at all) requires ours to be empty too. The
///   converse is not required: the published tables print 0 where graphs
///   exist but every one of them is killed by a symmetry, while an empty
///   basis is printed here as `-`. Forested tables print `-` for cells
///   outside the degree range regardless, so only their values are compared.
/// * Printed isotypic decompositions must match ours exactly.
/// * Where the reference prints an expected Euler characteristic for a row,
///   the alternating sum of our chain dimensions must equal it.
pub fn compare(ours: &HomologyTable, reference: &ReferenceTable) -> Comparison {
    let mut out = Comparison::default();
    let forested = matches!(ours.kind, TableKind::Forested { .. });
    for row in &ours.rows {
        let Some(rrow) = reference.rows.iter().find(|r| r.loops == row.loops) else { continue };
        for cell in &row.cells {
            let Some(r) = reference.entry(row.loops, cell.column) else { continue };
            let (Some(a), Some(b)) = (cell.entry.numeric(), r.cell.numeric()) else { continue };
            out.compared += 1;
            let mut miss = |reason| {
                out.mismatches.push(Mismatch {
                    loops: row.loops,
                    column: Some(cell.column),
                    ours: cell.display(),
                    reference: format!("{:?}", r.cell),
                    reason,
                })
            };
            if a != b {
                miss("value");
                continue;
            }
            if r.cell == RefCell::Empty && !forested && cell.entry.cell != Cell::Empty {
                miss("empty marker");
                continue;
            }
            if let RefCell::Value { labels, .. } = &r.cell {
                if labels.is_empty() || cell.isotypic.is_empty() {
                    continue;
                }
                let mut mine = BTreeMap::new();
                let mut known = true;
                for i in &cell.isotypic {
                    match i.multiplicity() {
                        Some(0) => {}
                        Some(k) => {
                            mine.insert(i.lambda.clone(), k);
                        }
                        None => known = false,
                    }
                }
                if !known {
                    continue;
                }
                out.labels_compared += 1;
                if &mine != labels {
                    miss("isotypic decomposition");
                }
            }
        }
        if let (Some(expected), Some(chi)) = (rrow.chi_ref, row.chi_chain) {
            if expected != chi {
                out.mismatches.push(Mismatch {
                    loops: row.loops,
                    column: None,
                    ours: chi.to_string(),
                    reference: expected.to_string(),
                    reason: "euler characteristic",
                });
            }
        }
    }
    out
}
