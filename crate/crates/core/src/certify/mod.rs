//! Exhaustive and sampled certification of every inequality, with
//! replayable witnesses.
//!
//! A [`CertificationRun`] records the configuration it ran under, per-check
//! statistics, every violation with its full graph, capped lists of
//! tight witnesses and equality-characterization mismatches, and the
//! complement-sum records. Runs serialize to a single JSON document
//! (`.certrun`). Aggregation happens in ascending mask order, so partitioned
//! and serial runs serialize identically.

pub mod battery;
mod ng;

pub use battery::{evaluate, GraphResult, Outcome};
pub use ng::{
    ng_sum_lower_value, nordhaus_gaddum, NordhausGaddumRecord, NG_PRODUCT_LOWER, NG_PRODUCT_UPPER,
    NG_SUM_LOWER, NG_SUM_UPPER,
};

use crate::cyclicity::DEFAULT_BOUND_TOLERANCE;
use crate::error::{Error, Result};
use crate::graph::{random_connected, ConnectedGraphs, EdgeList, Graph, MAX_EXHAUSTIVE_N};
use crate::resistance::SolverConfig;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

pub const FORMAT: &str = "cyclicity-certrun/1";
pub const DEFAULT_WITNESS_CAP: usize = 256;
pub const DEFAULT_DELTA_MAX_N: usize = 6;
/// Largest order accepted in sampled mode.
pub const MAX_SAMPLED_N: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyConfig {
    /// Bound tightness tolerance.
    pub tolerance: f64,
    pub solver: SolverConfig,
    /// Largest order that gets the per-non-edge increment sweep.
    pub delta_max_n: usize,
    /// Witnesses kept per check and per order.
    pub witness_cap: usize,
    /// Worker threads; does not affect the output.
    pub jobs: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_BOUND_TOLERANCE,
            solver: SolverConfig::default(),
            delta_max_n: DEFAULT_DELTA_MAX_N,
            witness_cap: DEFAULT_WITNESS_CAP,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckStats {
    pub evaluated: u64,
    pub failed: u64,
    pub tight: u64,
    pub mismatched: u64,
    pub min_slack: Option<f64>,
}

impl CheckStats {
    fn absorb(&mut self, o: &Outcome) {
        self.evaluated += 1;
        self.failed += u64::from(!o.holds);
        self.tight += u64::from(o.tight);
        self.mismatched += u64::from(o.mismatch);
        if o.slack.is_finite() {
            self.min_slack = Some(self.min_slack.map_or(o.slack, |s| s.min(o.slack)));
        }
    }

    fn merge(&mut self, other: &CheckStats) {
        self.evaluated += other.evaluated;
        self.failed += other.failed;
        self.tight += other.tight;
        self.mismatched += other.mismatched;
        self.min_slack = match (self.min_slack, other.min_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub graph: EdgeList,
    pub check: String,
    pub slack: f64,
}

/// Total count plus the first `witness_cap` graphs per order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub count: u64,
    pub graphs: Vec<EdgeList>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NgSummary {
    pub pairs: u64,
    pub sum_lower_tight: u64,
    pub min_sum_lower_slack: Option<f64>,
    /// Largest `sum / sum_upper`; must stay below 1.
    pub max_sum_ratio: Option<f64>,
    /// Largest `product / product_upper`; must stay below 1.
    pub max_product_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationRun {
    pub format: String,
    pub mode: Mode,
    pub n_range: Vec<usize>,
    pub sample_count: Option<usize>,
    pub seed: Option<u64>,
    pub edge_probability: Option<f64>,
    pub tolerance: f64,
    pub resistance_tolerance: f64,
    pub delta_max_n: usize,
    pub witness_cap: usize,
    pub graphs_checked: BTreeMap<usize, u64>,
    pub checks_performed: u64,
    pub check_stats: BTreeMap<String, CheckStats>,
    pub violations: Vec<Violation>,
    pub tight_witnesses: BTreeMap<String, Vec<EdgeList>>,
    pub equality_mismatches: BTreeMap<String, WitnessSet>,
    pub flags: BTreeMap<String, WitnessSet>,
    pub ng_records: Vec<NordhausGaddumRecord>,
    pub ng_summary: BTreeMap<usize, NgSummary>,
}

impl CertificationRun {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Configuration the run was produced under (single-threaded).
    pub fn config(&self) -> Result<CertifyConfig> {
        Ok(CertifyConfig {
            tolerance: self.tolerance,
            solver: SolverConfig::new(self.resistance_tolerance, Default::default())
                .map_err(|e| Error::CorruptRun(e.to_string()))?,
            delta_max_n: self.delta_max_n,
            witness_cap: self.witness_cap,
            jobs: 1,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("run serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let run: Self = serde_json::from_str(text).map_err(|e| Error::CorruptRun(e.to_string()))?;
        if run.format != FORMAT {
            return Err(Error::CorruptRun(format!("unknown format `{}`", run.format)));
        }
        Ok(run)
    }

    fn empty(mode: Mode, n_range: Vec<usize>, cfg: &CertifyConfig) -> Self {
        Self {
            format: FORMAT.to_owned(),
            mode,
            n_range,
            sample_count: None,
            seed: None,
            edge_probability: None,
            tolerance: cfg.tolerance,
            resistance_tolerance: cfg.solver.tolerance,
            delta_max_n: cfg.delta_max_n,
            witness_cap: cfg.witness_cap,
            graphs_checked: BTreeMap::new(),
            checks_performed: 0,
            check_stats: BTreeMap::new(),
            violations: Vec::new(),
            tight_witnesses: BTreeMap::new(),
            equality_mismatches: BTreeMap::new(),
            flags: BTreeMap::new(),
            ng_records: Vec::new(),
            ng_summary: BTreeMap::new(),
        }
    }

    fn absorb_slice(&mut self, n: usize, acc: SliceAcc) {
        *self.graphs_checked.entry(n).or_default() += acc.graphs;
        self.checks_performed += acc.checks;
        for (name, s) in acc.stats {
            self.check_stats.entry(name.to_owned()).or_default().merge(&s);
        }
        self.violations.extend(acc.violations);
        for (name, list) in acc.witnesses {
            self.tight_witnesses.entry(name.to_owned()).or_default().extend(list);
        }
        for (target, source) in [
            (&mut self.equality_mismatches, acc.mismatches),
            (&mut self.flags, acc.flags),
        ] {
            for (name, set) in source {
                let entry = target.entry(name.to_owned()).or_default();
                entry.count += set.count;
                entry.graphs.extend(set.graphs);
            }
        }
        if acc.ng.summary.pairs > 0 {
            let NgAcc {
                summary,
                tight,
                best_sum,
                best_product,
            } = acc.ng;
            self.ng_records.extend(tight);
            for rec in [best_sum, best_product].into_iter().flatten() {
                if !self.ng_records.iter().any(|r| r.graph == rec.graph) {
                    self.ng_records.push(rec);
                }
            }
            self.ng_summary.insert(n, summary);
        }
    }
}

fn push_capped<T>(list: &mut Vec<T>, item: T, cap: usize) {
    if list.len() < cap {
        list.push(item);
    }
}

fn max_opt(a: Option<f64>, b: f64) -> Option<f64> {
    Some(a.map_or(b, |a| a.max(b)))
}

#[derive(Debug, Default)]
struct NgAcc {
    summary: NgSummary,
    tight: Vec<NordhausGaddumRecord>,
    best_sum: Option<NordhausGaddumRecord>,
    best_product: Option<NordhausGaddumRecord>,
}

impl NgAcc {
    fn absorb(&mut self, rec: NordhausGaddumRecord, cap: usize) {
        let s = &mut self.summary;
        s.pairs += 1;
        let slack = rec.sum - rec.sum_lower;
        s.min_sum_lower_slack = Some(s.min_sum_lower_slack.map_or(slack, |x| x.min(slack)));
        s.max_sum_ratio = max_opt(s.max_sum_ratio, rec.sum / rec.sum_upper);
        s.max_product_ratio = max_opt(s.max_product_ratio, rec.product / rec.product_upper);
        if rec.sum_lower_tight {
            s.sum_lower_tight += 1;
            push_capped(&mut self.tight, rec.clone(), cap);
        }
        if self.best_sum.as_ref().is_none_or(|b| rec.sum > b.sum) {
            self.best_sum = Some(rec.clone());
        }
        if self.best_product.as_ref().is_none_or(|b| rec.product > b.product) {
            self.best_product = Some(rec);
        }
    }

    fn merge(&mut self, other: NgAcc, cap: usize) {
        let (s, o) = (&mut self.summary, &other.summary);
        s.pairs += o.pairs;
        s.sum_lower_tight += o.sum_lower_tight;
        s.min_sum_lower_slack = match (s.min_sum_lower_slack, o.min_sum_lower_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(r) = o.max_sum_ratio {
            s.max_sum_ratio = max_opt(s.max_sum_ratio, r);
        }
        if let Some(r) = o.max_product_ratio {
            s.max_product_ratio = max_opt(s.max_product_ratio, r);
        }
        for rec in other.tight {
            push_capped(&mut self.tight, rec, cap);
        }
        if let Some(rec) = other.best_sum {
            if self.best_sum.as_ref().is_none_or(|b| rec.sum > b.sum) {
                self.best_sum = Some(rec);
            }
        }
        if let Some(rec) = other.best_product {
            if self.best_product.as_ref().is_none_or(|b| rec.product > b.product) {
                self.best_product = Some(rec);
            }
        }
    }
}

/// Results for graphs of a single order, in enumeration order.
#[derive(Debug, Default)]
struct SliceAcc {
    graphs: u64,
    checks: u64,
    stats: BTreeMap<&'static str, CheckStats>,
    violations: Vec<Violation>,
    witnesses: BTreeMap<&'static str, Vec<EdgeList>>,
    mismatches: BTreeMap<&'static str, WitnessSet>,
    flags: BTreeMap<&'static str, WitnessSet>,
    ng: NgAcc,
}

impl SliceAcc {
    fn absorb(&mut self, g: &Graph, result: GraphResult, cap: usize) {
        self.graphs += 1;
        let mut edge_list = None;
        let mut el = || edge_list.get_or_insert_with(|| EdgeList::from(g)).clone();
        for o in &result.outcomes {
            self.checks += 1;
            self.stats.entry(o.name).or_default().absorb(o);
            if !o.holds {
                self.violations.push(Violation {
                    graph: el(),
                    check: o.name.to_owned(),
                    slack: if o.slack.is_finite() { o.slack } else { f64::MIN },
                });
            }
            if o.tight {
                let list = self.witnesses.entry(o.name).or_default();
                if list.len() < cap {
                    list.push(el());
                }
            }
            if o.mismatch {
                let set = self.mismatches.entry(o.name).or_default();
                set.count += 1;
                if set.graphs.len() < cap {
                    set.graphs.push(el());
                }
            }
        }
        for &flag in &result.flags {
            let set = self.flags.entry(flag).or_default();
            set.count += 1;
            if set.graphs.len() < cap {
                set.graphs.push(el());
            }
        }
        if let Some(rec) = result.ng {
            self.ng.absorb(rec, cap);
        }
    }

    fn merge(&mut self, other: SliceAcc, cap: usize) {
        self.graphs += other.graphs;
        self.checks += other.checks;
        for (k, s) in other.stats {
            self.stats.entry(k).or_default().merge(&s);
        }
        self.violations.extend(other.violations);
        for (k, list) in other.witnesses {
            let mine = self.witnesses.entry(k).or_default();
            for g in list {
                push_capped(mine, g, cap);
            }
        }
        for (mine, theirs) in [
            (&mut self.mismatches, other.mismatches),
            (&mut self.flags, other.flags),
        ] {
            for (k, set) in theirs {
                let entry = mine.entry(k).or_default();
                entry.count += set.count;
                for g in set.graphs {
                    push_capped(&mut entry.graphs, g, cap);
                }
            }
        }
        self.ng.merge(other.ng, cap);
    }
}

fn check_graphs(graphs: impl Iterator<Item = Graph>, cfg: &CertifyConfig) -> Result<SliceAcc> {
    let mut acc = SliceAcc::default();
    for g in graphs {
        let result = evaluate(&g, cfg)?;
        acc.absorb(&g, result, cfg.witness_cap);
    }
    Ok(acc)
}

/// Ordered reduction of per-chunk accumulators, computed on up to `jobs`
/// threads.
fn run_chunks<T: Send>(
    chunks: Vec<T>,
    jobs: usize,
    cfg: &CertifyConfig,
    work: impl Fn(T) -> Result<SliceAcc> + Sync,
) -> Result<SliceAcc> {
    let results: Vec<Result<SliceAcc>> = if jobs <= 1 || chunks.len() <= 1 {
        chunks.into_iter().map(&work).collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|c| scope.spawn(|| work(c)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("certification worker panicked"))
                .collect()
        })
    };
    let mut total = SliceAcc::default();
    for r in results {
        total.merge(r?, cfg.witness_cap);
    }
    Ok(total)
}

/// Every labeled connected graph with `3 <= n <= n_max`.
pub fn certify_exhaustive(n_max: usize, cfg: &CertifyConfig) -> Result<CertificationRun> {
    if n_max < 3 {
        return Err(Error::SizeTooSmall { got: n_max, min: 3 });
    }
    if n_max > MAX_EXHAUSTIVE_N {
        return Err(Error::SizeTooLarge {
            got: n_max,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    let mut run = CertificationRun::empty(Mode::Exhaustive, (3..=n_max).collect(), cfg);
    for n in 3..=n_max {
        let total = ConnectedGraphs::mask_count(n);
        let parts = cfg.jobs.max(1) as u64;
        let chunks: Vec<_> = (0..parts)
            .map(|k| total * k / parts..total * (k + 1) / parts)
            .collect();
        let acc = run_chunks(chunks, cfg.jobs, cfg, |range| {
            check_graphs(ConnectedGraphs::with_range(n, range)?, cfg)
        })?;
        run.absorb_slice(n, acc);
    }
    Ok(run)
}

/// `samples_per_n` random connected graphs for each order in `n_list`.
///
/// Sample seeds are drawn in order from a ChaCha stream keyed by `seed`.
pub fn certify_sampled(
    n_list: &[usize],
    samples_per_n: usize,
    edge_probability: f64,
    seed: u64,
    cfg: &CertifyConfig,
) -> Result<CertificationRun> {
    for &n in n_list {
        if n < 3 {
            return Err(Error::SizeTooSmall { got: n, min: 3 });
        }
        if n > MAX_SAMPLED_N {
            return Err(Error::SizeTooLarge {
                got: n,
                max: MAX_SAMPLED_N,
            });
        }
    }
    let mut run = CertificationRun::empty(Mode::Sampled, n_list.to_vec(), cfg);
    run.sample_count = Some(samples_per_n);
    run.seed = Some(seed);
    run.edge_probability = Some(edge_probability);
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    for &n in n_list {
        let graphs = (0..samples_per_n)
            .map(|_| random_connected(n, edge_probability, seeds.next_u64()))
            .collect::<Result<Vec<_>>>()?;
        let parts = cfg.jobs.max(1).min(graphs.len().max(1));
        let chunk_len = graphs.len().div_ceil(parts).max(1);
        let chunks: Vec<Vec<Graph>> = graphs.chunks(chunk_len).map(<[Graph]>::to_vec).collect();
        let acc = run_chunks(chunks, cfg.jobs, cfg, |c| check_graphs(c.into_iter(), cfg))?;
        run.absorb_slice(n, acc);
    }
    Ok(run)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * 1f64.max(a.abs()).max(b.abs())
}

fn records_match(a: &NordhausGaddumRecord, b: &NordhausGaddumRecord) -> bool {
    a.graph == b.graph
        && (a.n, a.m) == (b.n, b.m)
        && [
            (a.c_g, b.c_g),
            (a.c_gbar, b.c_gbar),
            (a.sum, b.sum),
            (a.product, b.product),
            (a.sum_lower, b.sum_lower),
            (a.sum_upper, b.sum_upper),
            (a.product_upper, b.product_upper),
        ]
        .iter()
        .all(|&(x, y)| close(x, y))
        && a.sum_lower_tight == b.sum_lower_tight
        && a.product_lower_tight == b.product_lower_tight
}

/// Re-executes every recorded witness, mismatch, flag, violation and
/// complement record under the run's own configuration. `Ok(false)` means
/// something did not reproduce.
pub fn replay(run: &CertificationRun) -> Result<bool> {
    if run.format != FORMAT {
        return Err(Error::CorruptRun(format!("unknown format `{}`", run.format)));
    }
    let cfg = run.config()?;
    let mut cache: HashMap<(usize, Vec<[usize; 2]>), GraphResult> = HashMap::new();
    let mut eval = |el: &EdgeList| -> Result<GraphResult> {
        let key = (el.n, el.edges.clone());
        if let Some(r) = cache.get(&key) {
            return Ok(r.clone());
        }
        let g = el.to_graph().map_err(|e| Error::CorruptRun(e.to_string()))?;
        let r = evaluate(&g, &cfg).map_err(|e| Error::CorruptRun(e.to_string()))?;
        cache.insert(key, r.clone());
        Ok(r)
    };

    for v in &run.violations {
        let r = eval(&v.graph)?;
        match r.outcome(&v.check) {
            Some(o) if !o.holds && close(o.slack, v.slack) => {}
            _ => return Ok(false),
        }
    }
    for (name, list) in &run.tight_witnesses {
        let recorded = run.check_stats.get(name).map_or(0, |s| s.tight);
        if list.len() as u64 > recorded {
            return Ok(false);
        }
        for el in list {
            if !eval(el)?.outcome(name).is_some_and(|o| o.tight) {
                return Ok(false);
            }
        }
    }
    for (name, set) in &run.equality_mismatches {
        if set.graphs.len() as u64 > set.count {
            return Ok(false);
        }
        for el in &set.graphs {
            if !eval(el)?.outcome(name).is_some_and(|o| o.mismatch) {
                return Ok(false);
            }
        }
    }
    for (name, set) in &run.flags {
        for el in &set.graphs {
            if !eval(el)?.flags.iter().any(|f| f == name) {
                return Ok(false);
            }
        }
    }
    for rec in &run.ng_records {
        match eval(&rec.graph)?.ng {
            Some(fresh) if records_match(&fresh, rec) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}
