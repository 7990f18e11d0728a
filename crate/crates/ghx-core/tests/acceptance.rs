//! End-to-end acceptance: one PASS/FAIL line per criterion, then a single
//! assertion that all of them passed.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use ghx_core::engine::SliceSpec;
use ghx_core::graph::{is_zero_graph, Species};
use ghx_core::reference::{compare, find};
use ghx_core::zoo::{
    cycle_report, forested_checks, hairy_vanishing_range, is_closed, isotypic_entries, morita_cycle, odd_w_graph,
    w_cycle,
};
use ghx_core::{
    compute_table, Engine, HomologyTable, OpKind, Operator, OrientationConvention, OrientationKind, TableKind,
    TableRequest,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(engine: &Engine, kind: TableKind, min_loops: usize, max_loops: usize) -> Result<HomologyTable, String> {
    compute_table(engine, &TableRequest { kind, min_loops, max_loops }).map_err(|e| format!("{kind:?}: {e}"))
}

/// Zero mismatches against the bundled reference; returns the number of
/// cells compared.
fn matches_reference(t: &HomologyTable) -> Result<usize, String> {
    let r = find(t.kind).map_err(|e| e.to_string())?.ok_or_else(|| format!("no reference for {:?}", t.kind))?;
    let c = compare(t, &r);
    ensure(c.is_match(), || format!("{:?}: {:?}", t.kind, c.mismatches))?;
    ensure(c.compared > 0, || format!("{:?}: nothing compared", t.kind))?;
    Ok(c.compared)
}

fn value(t: &HomologyTable, g: usize, c: usize) -> Option<i64> {
    t.cell(g, c).and_then(|x| x.entry.numeric())
}

/// The nonzero cells of the table are exactly `expected`.
fn nonzero_cells_are(t: &HomologyTable, expected: &[(usize, usize, i64)]) -> Result<(), String> {
    let mut found: Vec<(usize, usize, i64)> = t
        .rows
        .iter()
        .flat_map(|r| r.cells.iter().map(move |c| (r.loops, c.column, c.entry.numeric())))
        .map(|(g, c, v)| v.map(|v| (g, c, v)).ok_or_else(|| format!("cell ({g},{c}) not computed")))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|x| x.2 != 0)
        .collect();
    found.sort();
    ensure(found == expected, || format!("{:?}: nonzero cells {found:?}, expected {expected:?}", t.kind))
}

fn criterion_1(e: &Engine) -> Outcome {
    let start = Instant::now();
    let t = table(e, TableKind::Ordinary { n_odd: true }, 3, 6)?;
    let elapsed = start.elapsed();
    nonzero_cells_are(&t, &[(3, 4, 1), (4, 6, 1), (5, 8, 2), (6, 7, 1), (6, 10, 2)])?;
    let n = matches_reference(&t)?;
    let uncertified: Vec<_> = t
        .rows
        .iter()
        .flat_map(|r| r.cells.iter().filter(|c| !c.entry.is_certified()).map(move |c| (r.loops, c.column)))
        .collect();
    ensure(uncertified.is_empty(), || format!("uncertified cells {uncertified:?}"))?;
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("{n} reference cells match, all certified, {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_2(e: &Engine) -> Outcome {
    let t = table(e, TableKind::Ordinary { n_odd: false }, 3, 6)?;
    nonzero_cells_are(&t, &[(3, 4, 1), (5, 6, 1), (6, 10, 1)])?;
    let n = matches_reference(&t)?;
    let chain: Vec<Option<i64>> = t.rows.iter().map(|r| r.chi_chain).collect();
    let homology: Vec<Option<i64>> = t.rows.iter().map(|r| r.chi_homology).collect();
    let expected = vec![Some(1), Some(0), Some(1), Some(1)];
    ensure(chain == expected && homology == expected, || format!("chi chain {chain:?}, homology {homology:?}"))?;
    Ok(format!("{n} reference cells match, chi = 1, 0, 1, 1"))
}

fn criterion_3(e: &Engine) -> Outcome {
    let mut n = 0;
    let mut overlap = 0;
    for n_odd in [true, false] {
        let m = table(e, TableKind::Merkulov { n_odd }, 3, 6)?;
        n += matches_reference(&m)?;
        let o = table(e, TableKind::Ordinary { n_odd }, 3, 6)?;
        for row in &m.rows {
            for c in &row.cells {
                if let (Some(a), Some(b)) = (c.entry.numeric(), value(&o, row.loops, c.column)) {
                    ensure(a == b, || format!("n_odd={n_odd} ({},{}): truncated {a}, full {b}", row.loops, c.column))?;
                    overlap += 1;
                }
            }
        }
    }
    Ok(format!("{n} reference cells match, {overlap} cells agree with the full complex"))
}

fn criterion_4(e: &Engine) -> Outcome {
    let mut n = 0;
    for n_odd in [true, false] {
        for m_odd in [false, true] {
            for hairs in [1, 2] {
                let t = table(e, TableKind::Hairy { n_odd, m_odd, hairs }, 0, 5)?;
                n += matches_reference(&t)?;
                for row in &t.rows {
                    let (lo, hi) = hairy_vanishing_range(row.loops, hairs);
                    for c in &row.cells {
                        let v = c.column as i64;
                        ensure(c.entry.numeric() == Some(0) || (lo <= v && v <= hi), || {
                            format!("{:?} ({},{}) = {} outside the window", t.kind, row.loops, c.column, c.entry)
                        })?;
                    }
                }
                let expect: &[(usize, usize, i64)] = match (n_odd, m_odd, hairs) {
                    (true, false, 1) => &[(3, 4, 1), (5, 8, 2)],
                    (false, false, 1) => &[(5, 6, 1)],
                    _ => &[],
                };
                for &(g, v, x) in expect {
                    ensure(value(&t, g, v) == Some(x), || format!("{:?} ({g},{v}) != {x}", t.kind))?;
                }
            }
        }
    }
    Ok(format!("{n} reference cells match in 8 tables, nonzero entries inside the window"))
}

fn criterion_5(e: &Engine) -> Outcome {
    let mut n = 0;
    let mut labels = 0;
    for n_odd in [true, false] {
        for hairs in 2..=4 {
            let t = table(e, TableKind::ColoredHairy { n_odd, hairs }, 0, 2)?;
            let r = find(t.kind).map_err(|e| e.to_string())?.ok_or("missing reference")?;
            let c = compare(&t, &r);
            ensure(c.is_match(), || format!("{:?}: {:?}", t.kind, c.mismatches))?;
            n += c.compared;
            labels += c.labels_compared;
        }
    }
    let t = |h| table(e, TableKind::ColoredHairy { n_odd: false, hairs: h }, 0, 2);
    let shown = |t: &HomologyTable, g, v| t.cell(g, v).map(|c| c.display()).unwrap_or_default();
    let (t2, t3, t4) = (t(2)?, t(3)?, t(4)?);
    for (got, want) in
        [(shown(&t3, 1, 3), "1 (s[3])"), (shown(&t2, 2, 4), "1 (s[1,1])"), (shown(&t4, 0, 2), "2 (s[2,2])")]
    {
        ensure(got == want, || format!("got {got}, expected {want}"))?;
    }
    let mut slices = 0;
    for n_odd in [true, false] {
        for hairs in 1..=4 {
            for g in 0..=2 {
                for v in 0..=2 * g + hairs {
                    let spec = SliceSpec::colored_hairy(n_odd, g, v, hairs);
                    if e.dimension(&spec).map_err(|x| x.to_string())? == 0 {
                        continue;
                    }
                    let whole = table(e, TableKind::ColoredHairy { n_odd, hairs }, g, g)?;
                    let total = value(&whole, g, v).ok_or("total not computed")?;
                    let parts = isotypic_entries(e, n_odd, g, v, hairs).map_err(|x| x.to_string())?;
                    let sum: Option<i64> = parts.iter().map(|p| p.entry.numeric()).sum();
                    ensure(sum == Some(total), || format!("n_odd={n_odd} r={hairs} ({g},{v}): {sum:?} != {total}"))?;
                    slices += 1;
                }
            }
        }
    }
    Ok(format!("{n} reference cells match, {labels} decompositions agree, isotypic sums exact on {slices} slices"))
}

fn criterion_6(e: &Engine) -> Outcome {
    let even = table(e, TableKind::Forested { n_odd: false, hairs: 0 }, 1, 4)?;
    nonzero_cells_are(&even, &[(2, 0, 1), (3, 0, 1), (4, 0, 1), (4, 4, 1)])?;
    let odd = table(e, TableKind::Forested { n_odd: true, hairs: 0 }, 1, 4)?;
    nonzero_cells_are(&odd, &[(4, 3, 1)])?;
    let mut n = matches_reference(&even)? + matches_reference(&odd)?;
    for n_odd in [true, false] {
        n += matches_reference(&table(e, TableKind::Forested { n_odd, hairs: 1 }, 1, 3)?)?;
    }
    let mut slices = 0;
    for n_odd in [false, true] {
        for r in 0..=2 {
            for g in 1..=3 {
                let c = forested_checks(e, n_odd, g, r).map_err(|x| x.to_string())?;
                ensure(c.contraction_rank_identity, || format!("rank identity fails at n_odd={n_odd} g={g} r={r}"))?;
                slices += 1;
            }
        }
    }
    Ok(format!("{n} reference cells match, contraction-rank identity holds for {slices} (n, g, r)"))
}

fn criterion_7(e: &Engine) -> Outcome {
    let mu = morita_cycle(1).map_err(|x| x.to_string())?;
    let r = cycle_report(e, false, 4, 4, &mu).map_err(|x| x.to_string())?;
    ensure(r.nonzero && r.closed && r.nontrivial, || format!("mu_1: {r:?}"))?;
    let w4 = w_cycle(2).map_err(|x| x.to_string())?;
    let r = cycle_report(e, true, 4, 3, &w4).map_err(|x| x.to_string())?;
    ensure(r.nonzero && r.closed && r.nontrivial, || format!("W_4: {r:?}"))?;
    let w6 = w_cycle(3).map_err(|x| x.to_string())?;
    ensure(!w6.is_zero() && is_closed(true, &w6), || "W_6 is zero or not closed".into())?;
    let conv = OrientationConvention::new(OrientationKind::ForestedOdd, Species::Forested);
    for k in 1..=3 {
        ensure(is_zero_graph(&odd_w_graph(k), &conv), || format!("odd analogue {k} is not a zero graph"))?;
    }
    Ok("mu_1 and W_4 closed and nontrivial, W_6 closed, odd analogues vanish".into())
}

fn no_violation(e: &Engine, pairs: &[(Operator, Operator)]) -> Result<bool, String> {
    Ok(e.composite_violation(pairs).map_err(|x| x.to_string())?.is_none())
}

fn criterion_8(e: &Engine) -> Outcome {
    let d = |s: SliceSpec| Operator::new(OpKind::Contract, s);
    let d2 = |s: SliceSpec| Operator::new(OpKind::ContractToHigh, s);
    let mut pairs = 0;
    for n_odd in [true, false] {
        for g in 3..=6 {
            for v in 2..=2 * g - 2 {
                let here = SliceSpec::ordinary(n_odd, g, v);
                ensure(no_violation(e, &[(d(here), d(SliceSpec::ordinary(n_odd, g, v - 1)))])?, || {
                    format!("d^2 != 0 on {here:?}")
                })?;
                let m = SliceSpec::merkulov34(n_odd, g, v);
                let ok = no_violation(e, &[(d(m), d(SliceSpec::merkulov34(n_odd, g, v - 1)))])?
                    && no_violation(
                        e,
                        &[
                            (d2(m), d(SliceSpec::merkulov56(n_odd, g, v - 1))),
                            (d(m), d2(SliceSpec::merkulov34(n_odd, g, v - 1))),
                        ],
                    )?;
                ensure(ok, || format!("truncated differentials fail on {m:?}"))?;
                pairs += 3;
            }
        }
        for m_odd in [false, true] {
            for h in 1..=2 {
                for g in 0..=5 {
                    for v in 1..=2 * g + h {
                        let here = SliceSpec::hairy(n_odd, m_odd, g, v, h);
                        ensure(no_violation(e, &[(d(here), d(SliceSpec::hairy(n_odd, m_odd, g, v - 1, h)))])?, || {
                            format!("d^2 != 0 on {here:?}")
                        })?;
                        pairs += 1;
                    }
                }
            }
        }
        for h in 1..=4 {
            for g in 0..=2 {
                for v in 1..=2 * g + h {
                    let here = SliceSpec::colored_hairy(n_odd, g, v, h);
                    ensure(no_violation(e, &[(d(here), d(SliceSpec::colored_hairy(n_odd, g, v - 1, h)))])?, || {
                        format!("d^2 != 0 on {here:?}")
                    })?;
                    pairs += 1;
                }
            }
        }
        for r in 0..=2 {
            for g in 1..=3 {
                let c = forested_checks(e, n_odd, g, r).map_err(|x| x.to_string())?;
                ensure(c.squares_vanish, || format!("forested d_c/d_u relations fail at n_odd={n_odd} g={g} r={r}"))?;
                ensure(c.concentrated_in_excess_zero, || {
                    format!("excess concentration fails at n_odd={n_odd} g={g} r={r}")
                })?;
                ensure(c.euler_characteristic, || format!("forested Euler check fails at n_odd={n_odd} g={g} r={r}"))?;
            }
        }
    }
    let graphs = common::canonical_soundness(6, 5)?;
    for r in 1..=5 {
        common::projector_identities(r)?;
    }
    let drops = common::modp_rank_bounds(200, &[3, 7, 32189], 0x5eed)?;
    Ok(format!(
        "{pairs} operator pairs square to zero, forested relations hold, {graphs} labeled graphs canonicalized soundly, \
         projectors exact for r <= 5, mod-p ranks bounded ({drops} strict drops)"
    ))
}

#[test]
fn acceptance_criteria() {
    let engine = Engine::in_memory();
    type Criterion = fn(&Engine) -> Outcome;
    let criteria: [(usize, Criterion); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    // Written to the raw stderr handle so the report survives output capture.
    let mut report = std::io::stderr();
    let mut failed = Vec::new();
    for (k, run) in criteria {
        let line = match run(&engine) {
            Ok(detail) => format!("criterion {k}: PASS ({detail})\n"),
            Err(why) => {
                failed.push(k);
                format!("criterion {k}: FAIL ({why})\n")
            }
        };
        report.write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
