//! JSON, TSV and human-readable renderings of the reports.

use std::fmt::Write;

use koszulkit_core::sl2::{BlockKind, Sl2Report};
use koszulkit_core::suites::{SuiteReport, SCHEMA};
use koszulkit_core::{AlgebraSpec, BigradedDims, SemifreeDgModule, Window, SHIFT_CONVENTION};
use serde::Serialize;

use crate::Format;

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn new(suites: Vec<SuiteReport>) -> Self {
        VerifyReport {
            schema: SCHEMA,
            pass: suites.iter().all(SuiteReport::pass),
            suites,
        }
    }
}

#[derive(Serialize)]
pub struct TableReport {
    pub schema: u32,
    pub convention: &'static str,
    pub algebra: AlgebraSpec,
    pub generators: usize,
    pub window: Window,
    pub cohomology: BigradedDims,
}

impl TableReport {
    pub fn new(m: &SemifreeDgModule, window: Window, cohomology: BigradedDims) -> Self {
        TableReport {
            schema: SCHEMA,
            convention: SHIFT_CONVENTION,
            algebra: m.spec(),
            generators: m.rank(),
            window,
            cohomology,
        }
    }
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn header(out: &mut String) {
    writeln!(out, "# shift convention: {SHIFT_CONVENTION}").unwrap();
}

/// One line per cohomological degree, internal degree as the power of `q`.
pub fn laurent(d: &BigradedDims) -> Vec<String> {
    if d.is_empty() {
        return vec!["0".into()];
    }
    let mut rows: Vec<(i32, Vec<String>)> = Vec::new();
    for (b, n) in d.iter() {
        let term = match (n, b.j) {
            (n, 0) => format!("{n}"),
            (1, j) => format!("q^{j}"),
            (n, j) => format!("{n}q^{j}"),
        };
        match rows.last_mut() {
            Some((i, terms)) if *i == b.i => terms.push(term),
            _ => rows.push((b.i, vec![term])),
        }
    }
    rows.into_iter()
        .map(|(i, terms)| format!("H^{i}: {}", terms.join(" + ")))
        .collect()
}

pub fn verify(r: &VerifyReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return json(r),
        Format::Tsv => {
            writeln!(out, "suite\te\tf\tp\ttrial\tcheck\tpass\tdetail").unwrap();
            for s in &r.suites {
                for t in &s.records {
                    for c in &t.checks {
                        writeln!(
                            out,
                            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                            s.suite,
                            s.e,
                            s.f,
                            s.p,
                            t.trial,
                            c.name,
                            c.pass,
                            c.detail.as_deref().unwrap_or("")
                        )
                        .unwrap();
                    }
                }
            }
        }
        Format::Human => {
            header(&mut out);
            writeln!(
                out,
                "{:<16}{:>3}{:>3}{:>4}{:>8}{:>8}",
                "suite", "e", "f", "p", "passed", "failed"
            )
            .unwrap();
            for s in &r.suites {
                writeln!(
                    out,
                    "{:<16}{:>3}{:>3}{:>4}{:>8}{:>8}",
                    s.suite.name(),
                    s.e,
                    s.f,
                    s.p,
                    s.passed,
                    s.failed
                )
                .unwrap();
            }
            for s in &r.suites {
                for t in s.records.iter().filter(|t| !t.pass) {
                    for c in t.checks.iter().filter(|c| !c.pass) {
                        writeln!(out, "\n{} trial {}: {} failed", s.suite, t.trial, c.name)
                            .unwrap();
                        if let Some(d) = &c.detail {
                            writeln!(out, "  {d}").unwrap();
                        }
                        if let Some(rep) = &c.report {
                            writeln!(out, "  lhs:").unwrap();
                            for line in laurent(&rep.lhs) {
                                writeln!(out, "    {line}").unwrap();
                            }
                            writeln!(out, "  rhs:").unwrap();
                            for line in laurent(&rep.rhs) {
                                writeln!(out, "    {line}").unwrap();
                            }
                        }
                    }
                }
            }
            writeln!(
                out,
                "\n{}",
                if r.pass {
                    "all checks passed"
                } else {
                    "FAILED"
                }
            )
            .unwrap();
        }
    }
    out
}

fn block_name(r: &Sl2Report) -> String {
    match r.block {
        BlockKind::Regular { lambda } => format!("regular block, lambda = {lambda}"),
        BlockKind::Singular => "singular block".into(),
    }
}

fn poincare(c: &[usize]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(d, n)| match d {
            0 => format!("{n}"),
            1 => format!("{n}t"),
            d => format!("{n}t^{d}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn sl2(r: &Sl2Report, format: Format) -> String {
    let mut out = String::new();
    let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    match format {
        Format::Json => return json(r),
        Format::Tsv => {
            writeln!(out, "p\t{}", r.p).unwrap();
            writeln!(out, "block\t{}", block_name(r)).unwrap();
            writeln!(out, "dimension\t{}", r.dimension).unwrap();
            writeln!(out, "degree_dims\t{}", list(&r.degree_dims)).unwrap();
            writeln!(out, "simple_dims\t{}", list(&r.simple_dims)).unwrap();
            for c in &r.checks {
                writeln!(
                    out,
                    "{}\t{}\t{}",
                    c.name,
                    c.pass,
                    c.detail.as_deref().unwrap_or("")
                )
                .unwrap();
            }
        }
        Format::Human => {
            header(&mut out);
            writeln!(out, "SL(2), p = {}, {}", r.p, block_name(r)).unwrap();
            writeln!(out, "simple modules of dimension {}", list(&r.simple_dims)).unwrap();
            writeln!(out, "dimension {}", r.dimension).unwrap();
            writeln!(out, "P(t) = {}", poincare(&r.poincare.coefficients)).unwrap();
            for t in &r.ext_tables {
                let dims: Vec<String> = t
                    .dims
                    .iter()
                    .map(|(i, n)| format!("{n} in degree {i}"))
                    .collect();
                writeln!(out, "Ext(O({}), O({})): {}", t.a, t.b, dims.join(", ")).unwrap();
            }
            for (s, b) in r.koszulity.betti.iter().enumerate() {
                writeln!(out, "resolution of simple {}: ranks {}", s + 1, list(b)).unwrap();
            }
            for c in &r.checks {
                let mark = if c.pass { "pass" } else { "FAIL" };
                match &c.detail {
                    Some(d) => writeln!(out, "  {mark}  {} ({d})", c.name).unwrap(),
                    None => writeln!(out, "  {mark}  {}", c.name).unwrap(),
                }
            }
        }
    }
    out
}

pub fn table(r: &TableReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return json(r),
        Format::Tsv => {
            writeln!(out, "i\tj\tdim").unwrap();
            for (b, n) in r.cohomology.iter() {
                writeln!(out, "{}\t{}\t{n}", b.i, b.j).unwrap();
            }
        }
        Format::Human => {
            header(&mut out);
            let a = r.algebra;
            writeln!(
                out,
                "module over {} (e = {}, f = {}, p = {}), {} generators",
                a.kind, a.e, a.f, a.p, r.generators
            )
            .unwrap();
            writeln!(out, "internal degrees {}..={}", r.window.j0, r.window.j1).unwrap();
            for line in laurent(&r.cohomology) {
                writeln!(out, "{line}").unwrap();
            }
        }
    }
    out
}
