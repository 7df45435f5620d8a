//! Simple undirected graphs with optional positive edge weights.
//!
//! Vertices are the dense indices `0..n`. Edges are stored canonically as
//! `(u, v)` with `u < v`, sorted lexicographically, so two graphs with the
//! same edge set compare equal regardless of construction order. Weights are
//! conductances and default to 1.

mod edgelist;
mod enumerate;
mod generators;

pub use edgelist::{parse_edge_list, write_edge_list, EdgeList};
pub use enumerate::{
    connected_masks, enumerate_connected, pair_count, ConnectedGraphs, MAX_EXHAUSTIVE_N,
};
pub use generators::{
    circulant, complete, complete_bipartite, cycle, paley, path, petersen, random_connected,
    random_spanning_subgraph, random_tree, star, RANDOM_CONNECTED_ATTEMPTS,
};

use crate::error::{Error, Result};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<f64>,
    adj: Vec<Vec<usize>>,
}

/// Builds a graph from a vertex count, an edge list and optional weights.
///
/// Pairs may be given in either orientation. Missing weights default to 1.
pub fn make_graph(n: usize, edges: &[(usize, usize)], weights: Option<&[f64]>) -> Result<Graph> {
    Graph::new(n, edges, weights)
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)], weights: Option<&[f64]>) -> Result<Self> {
        if let Some(w) = weights {
            if w.len() != edges.len() {
                return Err(Error::WeightCountMismatch {
                    edges: edges.len(),
                    weights: w.len(),
                });
            }
        }
        let mut tagged = Vec::with_capacity(edges.len());
        for (k, &(a, b)) in edges.iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let w = weights.map_or(1.0, |w| w[k]);
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::NonpositiveWeight(w));
            }
            tagged.push(((a.min(b), a.max(b)), w));
        }
        tagged.sort_by_key(|x| x.0);
        for pair in tagged.windows(2) {
            if pair[0].0 == pair[1].0 {
                let (u, v) = pair[0].0;
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        let (edges, weights): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
        Ok(Self::from_canonical(n, edges, weights))
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new(), Vec::new())
    }

    /// Caller guarantees sorted, distinct, in-range `u < v` pairs.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(usize, usize)>, weights: Vec<f64>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            weights,
            adj,
        }
    }

    pub(crate) fn unit(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let weights = vec![1.0; edges.len()];
        Self::from_canonical(n, edges, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `(u, v, w)` triples in canonical order.
    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges
            .iter()
            .zip(&self.weights)
            .map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edge_index(u, v).map(|k| self.weights[k])
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Connected in the usual sense; graphs with `n <= 1` count as connected,
    /// larger edgeless graphs do not.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let dist = self.bfs_distances(0);
        dist.iter().all(Option::is_some)
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All bridges, as canonical pairs in lexicographic order.
    pub fn cut_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = Vec::new();
        let mut timer = 0;
        // Frames hold (vertex, parent, next neighbor position).
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(frame) = stack.last_mut() {
                let (v, parent, pos) = *frame;
                if pos < self.adj[v].len() {
                    frame.2 += 1;
                    let w = self.adj[v][pos];
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.push((parent.min(v), parent.max(v)));
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// Complement of a unit-weight graph.
    pub fn complement(&self) -> Result<Graph> {
        if !self.is_unit_weighted() {
            return Err(Error::WeightedInput);
        }
        let mut edges = Vec::with_capacity(pair_count(self.n) - self.m());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let weights = vec![1.0; edges.len()];
        Ok(Graph::from_canonical(self.n, edges, weights))
    }

    /// `m - n + 1` for a connected graph.
    pub fn cyclomatic_number(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok((self.m() + 1).saturating_sub(self.n))
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == pair_count(self.n)
    }

    /// A tree with a vertex adjacent to all others (includes `K_1`, `K_2`).
    pub fn is_star(&self) -> bool {
        self.is_tree() && (self.n <= 2 || self.max_degree() == self.n - 1)
    }

    /// A path graph, returning its two end vertices.
    pub fn path_ends(&self) -> Option<(usize, usize)> {
        if self.n < 2 || !self.is_tree() || self.max_degree() > 2 {
            return None;
        }
        let mut ends = (0..self.n).filter(|&v| self.degree(v) == 1);
        Some((ends.next()?, ends.next()?))
    }

    /// Side sizes `(a, b)` with `a <= b` of the bipartition of a connected
    /// bipartite graph.
    pub fn bipartition_sizes(&self) -> Option<(usize, usize)> {
        if self.n < 2 || !self.is_connected() {
            return None;
        }
        let mut side = vec![None; self.n];
        side[0] = Some(false);
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let su = side[u]?;
            for &w in &self.adj[u] {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
        let a = side.iter().filter(|s| **s == Some(true)).count();
        let b = self.n - a;
        Some((a.min(b), a.max(b)))
    }

    /// Jump set if vertex `i` is adjacent to `i ± j (mod n)` exactly for the
    /// returned jumps, i.e. the labeling itself is circulant.
    pub fn circulant_jumps(&self) -> Option<Vec<usize>> {
        let n = self.n;
        if n < 3 {
            return None;
        }
        let jumps: Vec<usize> = (1..=n / 2).filter(|&j| self.has_edge(0, j)).collect();
        for u in 0..n {
            for v in u + 1..n {
                let d = v - u;
                let j = d.min(n - d);
                if self.has_edge(u, v) != jumps.contains(&j) {
                    return None;
                }
            }
        }
        Some(jumps)
    }

    /// Copy with edge `{u, v}` added at weight `w`.
    pub fn with_edge(&self, u: usize, v: usize, w: f64) -> Result<Graph> {
        if self.has_edge(u, v) {
            return Err(Error::AlreadyAdjacent(u.min(v), u.max(v)));
        }
        let mut edges = self.edges.clone();
        edges.push((u, v));
        let mut weights = self.weights.clone();
        weights.push(w);
        Graph::new(self.n, &edges, Some(&weights))
    }

    /// Copy with edge `{u, v}` removed; `None` if it is not present.
    pub fn without_edge(&self, u: usize, v: usize) -> Option<Graph> {
        let k = self.edge_index(u, v)?;
        let mut edges = self.edges.clone();
        let mut weights = self.weights.clone();
        edges.remove(k);
        weights.remove(k);
        Some(Graph::from_canonical(self.n, edges, weights))
    }

    /// Non-adjacent vertex pairs `(i, j)`, `i < j`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `H` shares the vertex set and its edges are a subset of `self`'s.
    pub fn contains_spanning(&self, h: &Graph) -> bool {
        h.n == self.n && h.edges.iter().all(|&(u, v)| self.has_edge(u, v))
    }
}
