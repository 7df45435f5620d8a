//! Effective resistances from the weighted graph Laplacian.
//!
//! The default route grounds vertex 0, Cholesky-factors the reduced
//! Laplacian and inverts it; `Ω(i,j) = M(i,i) + M(j,j) - 2 M(i,j)` where
//! `M` is that inverse padded with zeros at the grounded index. A second
//! route through the Moore–Penrose pseudoinverse `(L + J/n)^{-1} - J/n` is
//! kept as an independent cross-check.

use crate::error::{Error, Result};
use crate::graph::Graph;
use nalgebra::{Cholesky, DMatrix};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    GroundedSolve,
    FullPseudoinverse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Absolute tolerance for resistance equality and degeneracy tests.
    pub tolerance: f64,
    pub method: Method,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            method: Method::GroundedSolve,
        }
    }
}

impl SolverConfig {
    pub fn new(tolerance: f64, method: Method) -> Result<Self> {
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(Error::InvalidParams(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(Self { tolerance, method })
    }
}

/// Weighted Laplacian `D - W`.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(g.n(), g.n());
    for (u, v, w) in g.weighted_edges() {
        l[(u, v)] -= w;
        l[(v, u)] -= w;
        l[(u, u)] += w;
        l[(v, v)] += w;
    }
    l
}

/// Symmetric matrix of pairwise effective resistances.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl ResistanceMatrix {
    /// Wraps a row-major `n × n` matrix, checking symmetry, a zero diagonal
    /// and nonnegative entries.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidParams(format!(
                "expected {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidParams(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let x = data[i * n + j];
                if !(x >= 0.0) || x != data[j * n + i] {
                    return Err(Error::InvalidParams(format!(
                        "entry ({i}, {j}) breaks symmetry or sign"
                    )));
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// `(i, j, Ω(i,j))` for every unordered pair `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    /// Smallest resistance over distinct pairs.
    pub fn min_pair(&self) -> Option<f64> {
        self.pairs().map(|(_, _, x)| x).reduce(f64::min)
    }

    /// Number of distinct pairs whose resistance is within `tol` of `value`.
    pub fn count_pairs_near(&self, value: f64, tol: f64) -> usize {
        self.pairs().filter(|p| (p.2 - value).abs() <= tol).count()
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &ResistanceMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Lower triangle (diagonal included) as `i j omega` lines with 17
    /// significant digits.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..=i {
                let _ = writeln!(out, "{i} {j} {:.16e}", self.get(i, j));
            }
        }
        out
    }

    fn from_gram(n: usize, gram: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let x = (gram(i, i) + gram(j, j) - 2.0 * gram(i, j)).max(0.0);
                data[i * n + j] = x;
                data[j * n + i] = x;
            }
        }
        Self { n, data }
    }
}

/// All pairwise effective resistances of a connected graph.
pub fn resistance_matrix(g: &Graph, config: &SolverConfig) -> Result<ResistanceMatrix> {
    let n = g.n();
    if n == 0 {
        return Err(Error::SizeTooSmall { got: 0, min: 1 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(ResistanceMatrix {
            n,
            data: vec![0.0],
        });
    }
    let l = laplacian(g);
    match config.method {
        Method::GroundedSolve => {
            let reduced = l.view((1, 1), (n - 1, n - 1)).into_owned();
            let inv = Cholesky::new(reduced)
                .ok_or(Error::SingularSystem)?
                .inverse();
            let m = |i: usize, j: usize| {
                if i == 0 || j == 0 {
                    0.0
                } else {
                    inv[(i - 1, j - 1)]
                }
            };
            Ok(ResistanceMatrix::from_gram(n, m))
        }
        Method::FullPseudoinverse => {
            let shift = 1.0 / n as f64;
            let shifted = l.map(|x| x + shift);
            let inv = Cholesky::new(shifted)
                .ok_or(Error::SingularSystem)?
                .inverse();
            Ok(ResistanceMatrix::from_gram(n, |i, j| inv[(i, j)] - shift))
        }
    }
}

/// Single-pair convenience over [`resistance_matrix`].
pub fn resistance(g: &Graph, i: usize, j: usize, config: &SolverConfig) -> Result<f64> {
    for vertex in [i, j] {
        if vertex >= g.n() {
            return Err(Error::VertexOutOfRange { vertex, n: g.n() });
        }
    }
    Ok(resistance_matrix(g, config)?.get(i, j))
}

/// Resistances after raising the conductance between `i` and `j` by
/// `delta`, computed from `omega` alone by the rank-one update
///
/// `Ω'(p,q) = Ω(p,q) - δ [Ω(p,i) + Ω(q,j) - Ω(p,j) - Ω(q,i)]² / (4 [1 + δ Ω(i,j)])`.
///
/// An absent edge has conductance 0, so adding a unit edge is `delta = 1`
/// and deleting one is `delta = -w`.
pub fn perturb_edge(
    omega: &ResistanceMatrix,
    i: usize,
    j: usize,
    delta: f64,
    config: &SolverConfig,
) -> Result<ResistanceMatrix> {
    let n = omega.n;
    for vertex in [i, j] {
        if vertex >= n {
            return Err(Error::VertexOutOfRange { vertex, n });
        }
    }
    if i == j {
        return Err(Error::SameVertex(i));
    }
    let denominator = 1.0 + delta * omega.get(i, j);
    if denominator <= config.tolerance {
        return Err(Error::DegeneratePerturbation { i, j, denominator });
    }
    let scale = delta / (4.0 * denominator);
    let (ri, rj) = (omega.row(i), omega.row(j));
    let mut data = omega.data.clone();
    for p in 0..n {
        for q in p + 1..n {
            let x = ri[p] + rj[q] - rj[p] - ri[q];
            let updated = (omega.get(p, q) - scale * x * x).max(0.0);
            data[p * n + q] = updated;
            data[q * n + p] = updated;
        }
    }
    Ok(ResistanceMatrix { n, data })
}

/// `Σ_{uv ∈ E} w(u,v) Ω(u,v)`, which equals `n - 1` for connected graphs.
pub fn foster_sum(g: &Graph, omega: &ResistanceMatrix) -> f64 {
    g.weighted_edges().map(|(u, v, w)| w * omega.get(u, v)).sum()
}
