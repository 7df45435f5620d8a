//! The global cyclicity index `C(G) = Σ_{uv ∈ E} (1/Ω(u,v) - 1)` and the
//! inequalities relating it to order, size, degrees and the cyclomatic
//! number.
//!
//! [`Analysis`] holds one resistance solve per graph and evaluates every
//! bound against it; the free functions are conveniences that solve with
//! default settings.

pub mod bounds;

pub use bounds::{BoundCheck, BoundKind, DEFAULT_BOUND_TOLERANCE};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resistance::{perturb_edge, resistance_matrix, ResistanceMatrix, SolverConfig};
use bounds as bv;
use serde::{Deserialize, Serialize};

/// Stable bound names used in reports and certification runs.
pub mod names {
    pub const ORDER_LOWER: &str = "order_lower";
    pub const ORDER_UPPER: &str = "order_upper";
    pub const BIPARTITE_UPPER: &str = "bipartite_upper";
    pub const CIRCULANT_LOWER: &str = "circulant_lower";
    pub const CIRCULANT_UPPER: &str = "circulant_upper";
    pub const DEGREE_BOUND: &str = "degree_bound";
    pub const REGULAR_BOUND: &str = "regular_bound";
    pub const MAX_DEGREE_BOUND: &str = "max_degree_bound";
    pub const MAJORIZATION_LOWER: &str = "majorization_lower";
    pub const MAJORIZATION_UPPER: &str = "majorization_upper";
    pub const SIMPLE_UPPER: &str = "simple_upper";
    pub const MU_SANDWICH_LOWER: &str = "mu_sandwich_lower";
    pub const MU_SANDWICH_UPPER: &str = "mu_sandwich_upper";
    pub const ADJACENT_RESISTANCE_LOWER: &str = "adjacent_resistance_lower";
    pub const DELTA_LOWER: &str = "delta_lower";
    pub const DELTA_UPPER: &str = "delta_upper";
}

fn require_unit_connected(g: &Graph) -> Result<()> {
    if !g.is_unit_weighted() {
        return Err(Error::WeightedInput);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `Σ_{uv ∈ E} 1/Ω(u,v) - m` for a connected unit-weight graph.
pub fn global_cyclicity(g: &Graph, omega: &ResistanceMatrix) -> Result<f64> {
    require_unit_connected(g)?;
    Ok(cyclicity_unchecked(g, omega))
}

fn cyclicity_unchecked(g: &Graph, omega: &ResistanceMatrix) -> f64 {
    g.edges()
        .iter()
        .map(|&(u, v)| 1.0 / omega.get(u, v) - 1.0)
        .sum()
}

/// Adjacent-pair resistances all agree within `tolerance`.
pub fn is_electrically_edge_equivalent(g: &Graph, omega: &ResistanceMatrix, tolerance: f64) -> bool {
    let mut it = g.edges().iter().map(|&(u, v)| omega.get(u, v));
    let Some(first) = it.next() else {
        return true;
    };
    let (lo, hi) = it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x)));
    hi - lo <= tolerance
}

/// Families with a closed-form cyclicity index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Tree { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { n1: usize, n2: usize },
}

pub fn closed_form(family: Family) -> Result<f64> {
    let invalid = |s: &str| Err(Error::InvalidParams(s.to_owned()));
    match family {
        Family::Tree { n } if n >= 1 => Ok(0.0),
        Family::Tree { .. } => invalid("a tree needs at least one vertex"),
        Family::Cycle { n } if n >= 3 => Ok(bv::cycle_cyclicity(n)),
        Family::Cycle { .. } => invalid("a cycle needs at least three vertices"),
        Family::Complete { n } if n >= 1 => Ok(bv::complete_cyclicity(n)),
        Family::Complete { .. } => invalid("a complete graph needs at least one vertex"),
        Family::CompleteBipartite { n1, n2 } if n1 >= 1 && n2 >= 1 => {
            Ok(bv::complete_bipartite_cyclicity(n1, n2))
        }
        Family::CompleteBipartite { .. } => invalid("both parts must be nonempty"),
    }
}

/// Resistance solve plus cyclicity index for one graph, with every bound
/// evaluated against it.
#[derive(Debug, Clone)]
pub struct Analysis<'g> {
    graph: &'g Graph,
    omega: ResistanceMatrix,
    cyclicity: f64,
    solver: SolverConfig,
    tolerance: f64,
}

impl<'g> Analysis<'g> {
    /// `tolerance` is the bound tightness tolerance; resistance equality
    /// uses `solver.tolerance`.
    pub fn new(graph: &'g Graph, solver: &SolverConfig, tolerance: f64) -> Result<Self> {
        require_unit_connected(graph)?;
        let omega = resistance_matrix(graph, solver)?;
        Ok(Self::from_parts(graph, omega, solver, tolerance))
    }

    pub fn with_omega(
        graph: &'g Graph,
        omega: ResistanceMatrix,
        solver: &SolverConfig,
        tolerance: f64,
    ) -> Result<Self> {
        require_unit_connected(graph)?;
        if omega.n() != graph.n() {
            return Err(Error::InvalidParams("resistance matrix has wrong order".into()));
        }
        Ok(Self::from_parts(graph, omega, solver, tolerance))
    }

    fn from_parts(graph: &'g Graph, omega: ResistanceMatrix, solver: &SolverConfig, tolerance: f64) -> Self {
        let cyclicity = cyclicity_unchecked(graph, &omega);
        Self {
            graph,
            omega,
            cyclicity,
            solver: *solver,
            tolerance,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn omega(&self) -> &ResistanceMatrix {
        &self.omega
    }

    pub fn cyclicity(&self) -> f64 {
        self.cyclicity
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn solver(&self) -> &SolverConfig {
        &self.solver
    }

    pub fn mu(&self) -> usize {
        (self.graph.m() + 1).saturating_sub(self.graph.n())
    }

    pub fn is_electrically_edge_equivalent(&self) -> bool {
        is_electrically_edge_equivalent(self.graph, &self.omega, self.solver.tolerance)
    }

    fn check(&self, name: &str, kind: BoundKind, bound: f64, expected: bool) -> BoundCheck {
        BoundCheck::new(name, kind, bound, self.cyclicity, self.tolerance, expected)
    }

    fn require_order(&self, min: usize) -> Result<()> {
        let got = self.graph.n();
        if got < min {
            Err(Error::SizeTooSmall { got, min })
        } else {
            Ok(())
        }
    }

    /// `0 <= C(G) <= n(n-1)(n-2)/4`: tight below for trees, above for `K_n`.
    pub fn order_bounds(&self) -> (BoundCheck, BoundCheck) {
        let g = self.graph;
        (
            self.check(names::ORDER_LOWER, BoundKind::Lower, 0.0, g.is_tree()),
            self.check(
                names::ORDER_UPPER,
                BoundKind::Upper,
                bv::complete_cyclicity(g.n()),
                g.is_complete(),
            ),
        )
    }

    /// Upper bound by `C(K_{n1,n2})` for connected bipartite graphs.
    pub fn bipartite_bound(&self) -> Option<BoundCheck> {
        let (a, b) = self.graph.bipartition_sizes()?;
        Some(self.check(
            names::BIPARTITE_UPPER,
            BoundKind::Upper,
            bv::complete_bipartite_cyclicity(a, b),
            self.graph.m() == a * b,
        ))
    }

    /// `n/(n-1) <= C(G) <= n(n-1)(n-2)/4` for graphs whose labeling is
    /// circulant.
    pub fn circulant_bounds(&self) -> Result<(BoundCheck, BoundCheck)> {
        let g = self.graph;
        g.circulant_jumps().ok_or(Error::NotCirculant)?;
        Ok((
            self.check(
                names::CIRCULANT_LOWER,
                BoundKind::Lower,
                bv::cycle_cyclicity(g.n()),
                g.m() == g.n(),
            ),
            self.check(
                names::CIRCULANT_UPPER,
                BoundKind::Upper,
                bv::complete_cyclicity(g.n()),
                g.is_complete(),
            ),
        ))
    }

    /// `C(G) <= Σ_{uv} (1/(d_u - 1) + 1/(d_v - 1))^{-1}`, leaf terms 0.
    pub fn degree_bound(&self) -> BoundCheck {
        let g = self.graph;
        let bound = g
            .edges()
            .iter()
            .map(|&(u, v)| bv::degree_term(g.degree(u), g.degree(v)))
            .sum();
        self.check(names::DEGREE_BOUND, BoundKind::Upper, bound, g.is_complete())
    }

    /// `C(G) <= n r (r-1) / 4` for `r`-regular graphs.
    pub fn regular_bound(&self) -> Result<BoundCheck> {
        let g = self.graph;
        let r = g.regular_degree().ok_or(Error::NotRegular)? as f64;
        let bound = g.n() as f64 * r * (r - 1.0) / 4.0;
        Ok(self.check(names::REGULAR_BOUND, BoundKind::Upper, bound, g.is_complete()))
    }

    /// `C(G) <= m (Δ - 1) / 2`.
    pub fn max_degree_bound(&self) -> BoundCheck {
        let g = self.graph;
        let bound = g.m() as f64 * (g.max_degree() as f64 - 1.0) / 2.0;
        self.check(names::MAX_DEGREE_BOUND, BoundKind::Upper, bound, g.is_complete())
    }

    /// Extremes of `Σ 1/Ω_e` over edge-resistance vectors with sum `n - 1`
    /// and entries in `[2/n, 1]`. Requires `n >= 3`.
    pub fn majorization_bounds(&self) -> Result<(BoundCheck, BoundCheck)> {
        self.require_order(3)?;
        let g = self.graph;
        let (n, m) = (g.n(), g.m());
        Ok((
            self.check(
                names::MAJORIZATION_LOWER,
                BoundKind::Lower,
                bv::majorization_lower_value(n, m),
                self.is_electrically_edge_equivalent(),
            ),
            self.check(
                names::MAJORIZATION_UPPER,
                BoundKind::Upper,
                bv::majorization_upper_value(n, m),
                g.is_tree() || g.is_complete(),
            ),
        ))
    }

    /// `C(G) <= n μ(G) / 2`.
    pub fn simple_upper_bound(&self) -> Result<BoundCheck> {
        self.require_order(2)?;
        let g = self.graph;
        Ok(self.check(
            names::SIMPLE_UPPER,
            BoundKind::Upper,
            bv::simple_upper_value(g.n(), g.m()),
            g.is_tree() || g.is_complete(),
        ))
    }

    /// `m μ / (n-1) <= C(G) <= n μ / 2`.
    pub fn mu_sandwich(&self) -> Result<(BoundCheck, BoundCheck)> {
        self.require_order(2)?;
        let g = self.graph;
        let (n, m, mu) = (g.n() as f64, g.m() as f64, self.mu() as f64);
        Ok((
            self.check(
                names::MU_SANDWICH_LOWER,
                BoundKind::Lower,
                m / (n - 1.0) * mu,
                self.is_electrically_edge_equivalent(),
            ),
            self.check(
                names::MU_SANDWICH_UPPER,
                BoundKind::Upper,
                n / 2.0 * mu,
                g.is_tree() || g.is_complete(),
            ),
        ))
    }

    /// Per-edge `Ω(u,v) >= (d_u + d_v - 2)/(d_u d_v - 1)` for every edge with
    /// `d_u d_v > 1`. Equality is expected when `d_u = d_v` and the ends share
    /// `d_u - 1` neighbors. Checks carry the solver tolerance.
    pub fn adjacent_resistance_checks(&self) -> Vec<((usize, usize), BoundCheck)> {
        let g = self.graph;
        g.edges()
            .iter()
            .filter_map(|&(u, v)| {
                let (du, dv) = (g.degree(u), g.degree(v));
                let bound = bv::adjacent_resistance_lower(du, dv)?;
                let expected = du == dv && g.common_neighbor_count(u, v) + 1 == du;
                let check = BoundCheck::new(
                    names::ADJACENT_RESISTANCE_LOWER,
                    BoundKind::Lower,
                    bound,
                    self.omega.get(u, v),
                    self.solver.tolerance,
                    expected,
                );
                Some(((u, v), check))
            })
            .collect()
    }

    /// Every graph-level cyclicity bound that applies to this graph.
    pub fn all_bounds(&self) -> Vec<BoundCheck> {
        let mut out = Vec::new();
        let (lo, hi) = self.order_bounds();
        out.extend([lo, hi]);
        out.extend(self.bipartite_bound());
        if let Ok((lo, hi)) = self.circulant_bounds() {
            out.extend([lo, hi]);
        }
        out.push(self.degree_bound());
        out.extend(self.regular_bound().ok());
        out.push(self.max_degree_bound());
        if let Ok((lo, hi)) = self.majorization_bounds() {
            out.extend([lo, hi]);
        }
        out.extend(self.simple_upper_bound().ok());
        if let Ok((lo, hi)) = self.mu_sandwich() {
            out.extend([lo, hi]);
        }
        out
    }

    pub fn report(&self) -> CyclicityReport {
        let g = self.graph;
        CyclicityReport {
            n: g.n(),
            m: g.m(),
            mu: self.mu(),
            cyclicity: self.cyclicity,
            flags: Flags {
                is_tree: g.is_tree(),
                is_complete: g.is_complete(),
                is_electrically_edge_equivalent: self.is_electrically_edge_equivalent(),
            },
            bounds: self.all_bounds(),
        }
    }

    /// Change in `C` from adding the non-edge `{i, j}`, from `Ω` alone.
    pub fn edge_addition_delta(&self, i: usize, j: usize) -> Result<DeltaReport> {
        let g = self.graph;
        for vertex in [i, j] {
            if vertex >= g.n() {
                return Err(Error::VertexOutOfRange { vertex, n: g.n() });
            }
        }
        if i == j {
            return Err(Error::SameVertex(i));
        }
        if g.has_edge(i, j) {
            return Err(Error::AlreadyAdjacent(i.min(j), i.max(j)));
        }
        let om = &self.omega;
        let rij = om.get(i, j);
        let updated = perturb_edge(om, i, j, 1.0, &self.solver)?;
        let mut corrections = Vec::with_capacity(g.m());
        let mut literal_discrepancy: f64 = 0.0;
        for &(p, q) in g.edges() {
            let before = om.get(p, q);
            let after = updated.get(p, q);
            let value = (before - after) / (before * after);
            let x = om.get(p, i) + om.get(q, j) - om.get(p, j) - om.get(q, i);
            let x2 = x * x;
            let literal = x2 / (4.0 * before * before * (1.0 + rij) - before * x2);
            literal_discrepancy = literal_discrepancy.max((value - literal).abs());
            corrections.push(EdgeCorrection { u: p, v: q, value });
        }
        debug_assert!(literal_discrepancy <= 1e-8, "{literal_discrepancy}");
        let term_new_edge = 1.0 / rij;
        let delta = term_new_edge + corrections.iter().map(|c| c.value).sum::<f64>();
        let (a, b) = (i.min(j), i.max(j));
        let upper_equality_expected = g.path_ends() == Some((a, b));
        Ok(DeltaReport {
            i: a,
            j: b,
            omega_ij: rij,
            delta,
            lower: term_new_edge,
            upper: (g.m() as f64 + 1.0) / rij,
            term_new_edge,
            term_existing_edges: corrections,
            literal_discrepancy,
            upper_equality_expected,
        })
    }
}

/// Summary flags attached to a [`CyclicityReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flags {
    pub is_tree: bool,
    pub is_complete: bool,
    pub is_electrically_edge_equivalent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicityReport {
    pub n: usize,
    pub m: usize,
    pub mu: usize,
    pub cyclicity: f64,
    pub flags: Flags,
    pub bounds: Vec<BoundCheck>,
}

impl CyclicityReport {
    pub fn all_hold(&self) -> bool {
        self.bounds.iter().all(BoundCheck::holds)
    }

    pub fn bound(&self, name: &str) -> Option<&BoundCheck> {
        self.bounds.iter().find(|b| b.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeCorrection {
    pub u: usize,
    pub v: usize,
    pub value: f64,
}

/// `C(G + ij) - C(G)` split into the new-edge term and per-edge corrections,
/// with the bounds `1/Ω(i,j) < delta <= (m+1)/Ω(i,j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaReport {
    pub i: usize,
    pub j: usize,
    pub omega_ij: f64,
    pub delta: f64,
    pub lower: f64,
    pub upper: f64,
    pub term_new_edge: f64,
    pub term_existing_edges: Vec<EdgeCorrection>,
    /// Largest gap between the stable and the literal correction formula.
    pub literal_discrepancy: f64,
    /// Path graph with `i`, `j` its ends: the only upper-bound equality case.
    pub upper_equality_expected: bool,
}

impl DeltaReport {
    /// Strict lower and inclusive upper bound checks.
    pub fn checks(&self, tolerance: f64) -> (BoundCheck, BoundCheck) {
        (
            BoundCheck::strict(names::DELTA_LOWER, BoundKind::Lower, self.lower, self.delta, tolerance),
            BoundCheck::new(
                names::DELTA_UPPER,
                BoundKind::Upper,
                self.upper,
                self.delta,
                tolerance,
                self.upper_equality_expected,
            ),
        )
    }
}

/// Report for `g` with default solver settings.
pub fn cyclicity_report(g: &Graph, solver: &SolverConfig, tolerance: f64) -> Result<CyclicityReport> {
    Ok(Analysis::new(g, solver, tolerance)?.report())
}

pub fn edge_addition_delta(g: &Graph, omega: &ResistanceMatrix, i: usize, j: usize) -> Result<DeltaReport> {
    let solver = SolverConfig::default();
    Analysis::with_omega(g, omega.clone(), &solver, DEFAULT_BOUND_TOLERANCE)?.edge_addition_delta(i, j)
}

pub fn degree_bound(g: &Graph, omega: &ResistanceMatrix) -> Result<BoundCheck> {
    let solver = SolverConfig::default();
    Ok(Analysis::with_omega(g, omega.clone(), &solver, DEFAULT_BOUND_TOLERANCE)?.degree_bound())
}

fn default_analysis(g: &Graph) -> Result<Analysis<'_>> {
    Analysis::new(g, &SolverConfig::default(), DEFAULT_BOUND_TOLERANCE)
}

pub fn regular_bound(g: &Graph) -> Result<BoundCheck> {
    default_analysis(g)?.regular_bound()
}

pub fn max_degree_bound(g: &Graph) -> Result<BoundCheck> {
    Ok(default_analysis(g)?.max_degree_bound())
}

pub fn majorization_bounds(g: &Graph) -> Result<(BoundCheck, BoundCheck)> {
    default_analysis(g)?.majorization_bounds()
}

pub fn simple_upper_bound(g: &Graph) -> Result<BoundCheck> {
    default_analysis(g)?.simple_upper_bound()
}

pub fn mu_sandwich(g: &Graph) -> Result<(BoundCheck, BoundCheck)> {
    default_analysis(g)?.mu_sandwich()
}

/// Whether `C(H) < C(G) - tolerance` for a proper connected spanning
/// subgraph `H` of `G`.
pub fn smi_check(g: &Graph, h: &Graph, solver: &SolverConfig) -> Result<bool> {
    if h.n() != g.n() || !g.contains_spanning(h) {
        return Err(Error::NotSpanningSubgraph("edges of H must be edges of G".into()));
    }
    if h.m() == g.m() {
        return Err(Error::NotSpanningSubgraph("H equals G".into()));
    }
    if !h.is_connected() {
        return Err(Error::NotSpanningSubgraph("H is disconnected".into()));
    }
    let cg = global_cyclicity(g, &resistance_matrix(g, solver)?)?;
    let ch = global_cyclicity(h, &resistance_matrix(h, solver)?)?;
    Ok(ch < cg - solver.tolerance)
}
