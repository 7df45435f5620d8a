//! Human-readable output.

use cyclicity::certify::{CertificationRun, NordhausGaddumRecord};
use cyclicity::cyclicity::{BoundCheck, BoundKind, CyclicityReport, DeltaReport};
use std::fmt::Write as _;

/// Largest denominator tried when printing a value as a fraction.
pub const MAX_DENOMINATOR: i64 = 1000;
/// How close a value must be to a fraction to be printed as one.
pub const RATIONAL_TOLERANCE: f64 = 1e-9;

fn decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = if x.abs() >= 1e-4 && x.abs() < 1e12 {
        format!("{x:.10}")
    } else {
        return format!("{x:.6e}");
    };
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Slack with rounding noise below `1e-12` shown as `0`.
pub fn slack(x: f64) -> String {
    if x.abs() < 1e-12 {
        "0".into()
    } else {
        decimal(x)
    }
}

/// `6`, `5/4 (1.25)`, or a plain decimal when no small fraction matches.
pub fn value(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    for q in 1..=MAX_DENOMINATOR {
        let p = (x * q as f64).round();
        if (x - p / q as f64).abs() <= RATIONAL_TOLERANCE {
            let p = p as i64;
            return if q == 1 {
                p.to_string()
            } else {
                format!("{p}/{q} ({})", decimal(p as f64 / q as f64))
            };
        }
    }
    decimal(x)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn compute(r: &CyclicityReport, foster_residual: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}", r.n);
    let _ = writeln!(s, "m: {}", r.m);
    let _ = writeln!(s, "μ: {}", r.mu);
    let _ = writeln!(s, "cyclicity: {}", value(r.cyclicity));
    let _ = writeln!(s, "foster residual: {foster_residual:.3e}");
    let _ = writeln!(s, "tree: {}", yes(r.flags.is_tree));
    let _ = writeln!(s, "complete: {}", yes(r.flags.is_complete));
    let _ = writeln!(
        s,
        "electrically edge-equivalent: {}",
        yes(r.flags.is_electrically_edge_equivalent)
    );
    s
}

fn kind(k: BoundKind) -> &'static str {
    match k {
        BoundKind::Lower => "lower",
        BoundKind::Upper => "upper",
    }
}

pub fn bound_table(rows: &[BoundCheck]) -> String {
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|b| {
            [
                b.name.clone(),
                kind(b.kind).into(),
                value(b.bound),
                value(b.actual),
                slack(b.slack),
                if b.strict { "strict".into() } else { yes(b.tight).into() },
            ]
        })
        .collect();
    let header = ["bound", "kind", "value", "actual", "slack", "tight"].map(String::from);
    let mut widths = header.clone().map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut s = String::new();
    for row in std::iter::once(&header).chain(&cells) {
        let line: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
    s
}

pub fn bounds(r: &CyclicityReport, foster_residual: f64) -> String {
    format!("{}\n{}", compute(r, foster_residual), bound_table(&r.bounds))
}

pub fn delta(d: &DeltaReport, checks: &(BoundCheck, BoundCheck)) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "edge: {} {}", d.i, d.j);
    let _ = writeln!(s, "resistance: {}", value(d.omega_ij));
    let _ = writeln!(s, "delta: {}", value(d.delta));
    let _ = writeln!(s, "new edge term: {}", value(d.term_new_edge));
    let corrections: f64 = d.term_existing_edges.iter().map(|c| c.value).sum();
    let _ = writeln!(s, "existing edge terms: {}", value(corrections));
    let _ = writeln!(s, "lower: {} (strict, slack {})", value(d.lower), slack(checks.0.slack));
    let _ = writeln!(
        s,
        "upper: {} ({}, slack {})",
        value(d.upper),
        if checks.1.tight { "tight" } else { "not tight" },
        slack(checks.1.slack)
    );
    s
}

pub fn ng(r: &NordhausGaddumRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}", r.n);
    let _ = writeln!(s, "m: {}", r.m);
    let _ = writeln!(s, "cyclicity: {}", value(r.c_g));
    let _ = writeln!(s, "complement cyclicity: {}", value(r.c_gbar));
    let _ = writeln!(
        s,
        "sum: {} in [{}, {}){}",
        value(r.sum),
        value(r.sum_lower),
        value(r.sum_upper),
        if r.sum_lower_tight { ", lower tight" } else { "" }
    );
    let _ = writeln!(
        s,
        "product: {} in [0, {}){}",
        value(r.product),
        value(r.product_upper),
        if r.product_lower_tight { ", lower tight" } else { "" }
    );
    s
}

pub fn run_summary(run: &CertificationRun, path: &str) -> String {
    let mut s = String::new();
    let graphs: u64 = run.graphs_checked.values().sum();
    let _ = writeln!(s, "run: {path}");
    for (n, count) in &run.graphs_checked {
        let _ = writeln!(s, "n = {n}: {count} graphs");
    }
    let _ = writeln!(s, "graphs checked: {graphs}");
    let _ = writeln!(s, "checks performed: {}", run.checks_performed);
    let _ = writeln!(s, "violations: {}", run.violations.len());
    for v in &run.violations {
        let _ = writeln!(s, "  {} slack {} on {:?}", v.check, decimal(v.slack), v.graph.edges);
    }
    for (name, set) in &run.equality_mismatches {
        let _ = writeln!(s, "equality mismatches ({name}): {}", set.count);
    }
    for (name, set) in &run.flags {
        let _ = writeln!(s, "flagged ({name}): {}", set.count);
    }
    let _ = writeln!(s, "result: {}", if run.passed() { "pass" } else { "FAIL" });
    s
}
