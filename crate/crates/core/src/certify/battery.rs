//! The per-graph check battery shared by exhaustive, sampled and replay
//! runs.

use super::ng::{self, NordhausGaddumRecord};
use super::CertifyConfig;
use crate::cyclicity::{names, Analysis, BoundCheck};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resistance::{foster_sum, perturb_edge, resistance_matrix};

pub const FOSTER: &str = "foster";
pub const METRIC: &str = "metric";
pub const SHORTEST_PATH: &str = "shortest_path";
pub const CUT_EDGE_LEMMA: &str = "cut_edge_lemma";
pub const PAIR_COUNT_LEMMA: &str = "pair_count_lemma";
pub const EDGE_ADDITION_DELTA: &str = "edge_addition_delta";
pub const DELTA_LITERAL_FORM: &str = "delta_literal_form";
pub const PERTURB_ORACLE: &str = "perturb_oracle";
pub const RAYLEIGH: &str = "rayleigh_monotone";
pub const SMI: &str = "smi";

/// Graph exceeds `(n² - 5n + 6)/2` resistance-`2/n` pairs.
pub const FLAG_PAIR_COUNT_ABOVE_CORRECTED: &str = "pair_count_above_corrected";

/// Foster's sum must match `n - 1` to this absolute tolerance.
pub const FOSTER_TOLERANCE: f64 = 1e-8;
/// Rank-one update and edge-addition increment versus a fresh solve.
pub const ORACLE_TOLERANCE: f64 = 1e-9;
/// Stable versus literal form of the increment corrections.
pub const LITERAL_FORM_TOLERANCE: f64 = 1e-8;

/// Aggregated result of one named check on one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub holds: bool,
    /// At least one instance attained equality.
    pub tight: bool,
    /// Some instance's tightness disagrees with its characterization.
    pub mismatch: bool,
    /// Worst (smallest) slack across instances.
    pub slack: f64,
}

impl Outcome {
    fn from_checks<'a>(name: &'static str, checks: impl IntoIterator<Item = &'a BoundCheck>) -> Option<Self> {
        let mut out: Option<Outcome> = None;
        for c in checks {
            let o = out.get_or_insert(Outcome {
                name,
                holds: true,
                tight: false,
                mismatch: false,
                slack: f64::INFINITY,
            });
            o.holds &= c.holds();
            o.tight |= c.tight;
            o.mismatch |= c.equality_mismatch();
            o.slack = o.slack.min(c.slack);
        }
        out
    }

    fn plain(name: &'static str, holds: bool, slack: f64) -> Self {
        Outcome {
            name,
            holds,
            tight: false,
            mismatch: false,
            slack,
        }
    }
}

fn bound_name(check: &BoundCheck) -> &'static str {
    const ALL: [&str; 17] = [
        names::ORDER_LOWER,
        names::ORDER_UPPER,
        names::BIPARTITE_UPPER,
        names::CIRCULANT_LOWER,
        names::CIRCULANT_UPPER,
        names::DEGREE_BOUND,
        names::REGULAR_BOUND,
        names::MAX_DEGREE_BOUND,
        names::MAJORIZATION_LOWER,
        names::MAJORIZATION_UPPER,
        names::SIMPLE_UPPER,
        names::MU_SANDWICH_LOWER,
        names::MU_SANDWICH_UPPER,
        ng::NG_SUM_LOWER,
        ng::NG_SUM_UPPER,
        ng::NG_PRODUCT_LOWER,
        ng::NG_PRODUCT_UPPER,
    ];
    ALL.iter().copied().find(|n| *n == check.name).unwrap_or("unnamed")
}

#[derive(Debug, Clone)]
pub struct GraphResult {
    pub outcomes: Vec<Outcome>,
    pub flags: Vec<&'static str>,
    pub ng: Option<NordhausGaddumRecord>,
}

impl GraphResult {
    pub fn outcome(&self, name: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

/// Runs every applicable check on a connected unit-weight graph.
pub fn evaluate(g: &Graph, cfg: &CertifyConfig) -> Result<GraphResult> {
    let a = Analysis::new(g, &cfg.solver, cfg.tolerance)?;
    let om = a.omega();
    let n = g.n();
    let rtol = cfg.solver.tolerance;
    let mut outcomes = Vec::new();
    let mut flags = Vec::new();

    let dev = (foster_sum(g, om) - (n as f64 - 1.0)).abs();
    outcomes.push(Outcome::plain(FOSTER, dev <= FOSTER_TOLERANCE, -dev));
    outcomes.push(metric_outcome(a.omega(), rtol));
    outcomes.push(shortest_path_outcome(g, &a, rtol));

    for b in a.all_bounds() {
        outcomes.extend(Outcome::from_checks(bound_name(&b), [&b]));
    }
    let edge_checks = a.adjacent_resistance_checks();
    outcomes.extend(Outcome::from_checks(
        names::ADJACENT_RESISTANCE_LOWER,
        edge_checks.iter().map(|(_, c)| c),
    ));

    if n >= 3 {
        let two_over_n = 2.0 / n as f64;
        if !g.cut_edges().is_empty() {
            let slack = om.min_pair().unwrap_or(f64::INFINITY) - two_over_n;
            outcomes.push(Outcome::plain(CUT_EDGE_LEMMA, slack > -rtol, slack));
        }
        if !g.is_complete() {
            let count = om.count_pairs_near(two_over_n, rtol);
            let stated = (n * n + 8 - 5 * n) / 2;
            let corrected = (n * n + 6 - 5 * n) / 2;
            let mut o = Outcome::plain(PAIR_COUNT_LEMMA, count <= stated, stated as f64 - count as f64);
            o.tight = count == stated;
            outcomes.push(o);
            if count > corrected {
                flags.push(FLAG_PAIR_COUNT_ABOVE_CORRECTED);
            }
        }
    }

    if n <= cfg.delta_max_n && !g.is_complete() {
        outcomes.extend(delta_sweep(g, &a, cfg)?);
    }

    let mut ng_record = None;
    if n >= 5 {
        match ng::evaluate(&a) {
            Ok((record, checks)) => {
                for c in &checks {
                    outcomes.extend(Outcome::from_checks(bound_name(c), [c]));
                }
                ng_record = Some(record);
            }
            Err(Error::ComplementDisconnected) => {}
            Err(e) => return Err(e),
        }
    }

    Ok(GraphResult {
        outcomes,
        flags,
        ng: ng_record,
    })
}

fn metric_outcome(om: &crate::resistance::ResistanceMatrix, rtol: f64) -> Outcome {
    let n = om.n();
    let mut slack = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                slack = slack.min(om.get(i, j) + om.get(j, k) - om.get(i, k));
            }
        }
    }
    Outcome::plain(METRIC, slack >= -rtol, slack)
}

/// `Ω(i,j) <= d(i,j)`, with equality exactly when the `i`–`j` path is
/// unique, i.e. some (hence every) `i`–`j` path consists of bridges.
fn shortest_path_outcome(g: &Graph, a: &Analysis<'_>, rtol: f64) -> Outcome {
    let n = g.n();
    let bridges = g.cut_edges();
    let mut out = Outcome::plain(SHORTEST_PATH, true, f64::INFINITY);
    for i in 0..n {
        let parent = bfs_parents(g, i);
        for j in i + 1..n {
            let mut hops = 0usize;
            let mut unique = true;
            let mut v = j;
            while v != i {
                let p = parent[v];
                unique &= bridges.binary_search(&(p.min(v), p.max(v))).is_ok();
                hops += 1;
                v = p;
            }
            let slack = hops as f64 - a.omega().get(i, j);
            let tight = slack.abs() <= rtol;
            out.holds &= slack >= -rtol;
            out.tight |= tight;
            out.mismatch |= tight != unique;
            out.slack = out.slack.min(slack);
        }
    }
    out
}

fn bfs_parents(g: &Graph, source: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[source] = source;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    parent
}

/// Increment identity, its bounds, the rank-one update and monotonicity
/// for every non-edge.
fn delta_sweep(g: &Graph, a: &Analysis<'_>, cfg: &CertifyConfig) -> Result<Vec<Outcome>> {
    let mut identity = Outcome::plain(EDGE_ADDITION_DELTA, true, f64::INFINITY);
    let mut literal = Outcome::plain(DELTA_LITERAL_FORM, true, f64::INFINITY);
    let mut oracle = Outcome::plain(PERTURB_ORACLE, true, f64::INFINITY);
    let mut rayleigh = Outcome::plain(RAYLEIGH, true, f64::INFINITY);
    let mut smi = Outcome::plain(SMI, true, f64::INFINITY);
    let mut lower_checks = Vec::new();
    let mut upper_checks = Vec::new();
    let rtol = cfg.solver.tolerance;

    for (i, j) in g.non_edges() {
        let report = a.edge_addition_delta(i, j)?;
        let augmented = g.with_edge(i, j, 1.0)?;
        let fresh_omega = resistance_matrix(&augmented, &cfg.solver)?;
        let fresh = Analysis::with_omega(&augmented, fresh_omega, &cfg.solver, cfg.tolerance)?;
        let recomputed = fresh.cyclicity() - a.cyclicity();

        let err = (report.delta - recomputed).abs();
        identity.holds &= err <= ORACLE_TOLERANCE;
        identity.slack = identity.slack.min(-err);

        literal.holds &= report.literal_discrepancy <= LITERAL_FORM_TOLERANCE;
        literal.slack = literal.slack.min(-report.literal_discrepancy);

        let updated = perturb_edge(a.omega(), i, j, 1.0, &cfg.solver)?;
        let gap = updated.max_abs_diff(fresh.omega());
        oracle.holds &= gap <= ORACLE_TOLERANCE;
        oracle.slack = oracle.slack.min(-gap);

        let drop = a
            .omega()
            .pairs()
            .map(|(p, q, before)| before - updated.get(p, q))
            .fold(f64::INFINITY, f64::min);
        rayleigh.holds &= drop >= -rtol;
        rayleigh.slack = rayleigh.slack.min(drop);

        smi.holds &= recomputed > rtol;
        smi.slack = smi.slack.min(recomputed);

        let (lo, hi) = report.checks(cfg.tolerance);
        lower_checks.push(lo);
        upper_checks.push(hi);
    }
    let mut out = vec![identity, literal, oracle, rayleigh, smi];
    out.extend(Outcome::from_checks(names::DELTA_LOWER, &lower_checks));
    out.extend(Outcome::from_checks(names::DELTA_UPPER, &upper_checks));
    Ok(out)
}
