//! Named graph families and seeded random samplers.

use super::Graph;
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Retry budget for [`random_connected`] before it gives up.
pub const RANDOM_CONNECTED_ATTEMPTS: usize = 1000;

fn at_least(got: usize, min: usize) -> Result<()> {
    if got < min {
        Err(Error::SizeTooSmall { got, min })
    } else {
        Ok(())
    }
}

pub fn path(n: usize) -> Result<Graph> {
    at_least(n, 1)?;
    Ok(Graph::unit(n, (1..n).map(|v| (v - 1, v)).collect()))
}

pub fn cycle(n: usize) -> Result<Graph> {
    at_least(n, 3)?;
    Ok(Graph::unit(n, (0..n).map(|v| (v, (v + 1) % n)).collect()))
}

pub fn complete(n: usize) -> Result<Graph> {
    at_least(n, 1)?;
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(Graph::unit(n, edges))
}

/// `K_{n1,n2}` with parts `0..n1` and `n1..n1+n2`.
pub fn complete_bipartite(n1: usize, n2: usize) -> Result<Graph> {
    at_least(n1, 1)?;
    at_least(n2, 1)?;
    let edges = (0..n1)
        .flat_map(|u| (n1..n1 + n2).map(move |v| (u, v)))
        .collect();
    Ok(Graph::unit(n1 + n2, edges))
}

/// Star `K_{1,n-1}` centred at vertex 0.
pub fn star(n: usize) -> Result<Graph> {
    at_least(n, 1)?;
    Ok(Graph::unit(n, (1..n).map(|v| (0, v)).collect()))
}

/// Vertex `i` adjacent to `i ± j (mod n)` for every jump `j`.
///
/// Jumps must lie in `1..=n/2`; duplicates are ignored. For even `n` the
/// jump `n/2` pairs opposite vertices with a single edge.
pub fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
    at_least(n, 3)?;
    for &jump in jumps {
        if jump == 0 || jump > n / 2 {
            return Err(Error::InvalidJump { jump, n });
        }
    }
    let mut edges = Vec::new();
    for &j in jumps {
        for i in 0..n {
            edges.push((i, (i + j) % n));
        }
    }
    Ok(Graph::unit(n, edges))
}

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Paley graph on the prime field `Z_q`, `q ≡ 1 (mod 4)`.
pub fn paley(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q % 4 != 1 {
        return Err(Error::NotCongruentOneModFour(q));
    }
    let q = q as usize;
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    let mut edges = Vec::new();
    for x in 0..q {
        for y in x + 1..q {
            if square[y - x] {
                edges.push((x, y));
            }
        }
    }
    Ok(Graph::unit(q, edges))
}

/// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes
/// `i ~ i + 5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::unit(10, edges)
}

/// Erdős–Rényi `G(n, p)` conditioned on connectivity by rejection.
pub fn random_connected(n: usize, edge_probability: f64, seed: u64) -> Result<Graph> {
    at_least(n, 2)?;
    if !(edge_probability > 0.0 && edge_probability <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "edge probability {edge_probability} not in (0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_CONNECTED_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < edge_probability {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::unit(n, edges);
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GiveUp {
        attempts: RANDOM_CONNECTED_ATTEMPTS,
    })
}

/// Uniform labeled tree via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    at_least(n, 1)?;
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut remaining = vec![1usize; n];
    for &c in &code {
        remaining[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| remaining[v] == 1).unwrap_or(0);
        edges.push((leaf, c));
        remaining[leaf] = 0;
        remaining[c] -= 1;
    }
    let mut last = (0..n).filter(|&v| remaining[v] == 1);
    if let (Some(a), Some(b)) = (last.next(), last.next()) {
        edges.push((a, b));
    }
    Ok(Graph::unit(n, edges))
}

/// Random proper connected spanning subgraph of a connected unit-weight
/// graph: deletes between 1 and `μ(G)` non-bridge edges one at a time.
pub fn random_spanning_subgraph(g: &Graph, seed: u64) -> Result<Graph> {
    let mu = g.cyclomatic_number()?;
    if mu == 0 {
        return Err(Error::NotSpanningSubgraph(
            "a tree has no proper connected spanning subgraph".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let removals = rng.gen_range(1..=mu);
    let mut h = g.clone();
    for _ in 0..removals {
        let bridges = h.cut_edges();
        let mut candidates: Vec<(usize, usize)> = h
            .edges()
            .iter()
            .copied()
            .filter(|e| bridges.binary_search(e).is_err())
            .collect();
        candidates.shuffle(&mut rng);
        match candidates.first() {
            Some(&(u, v)) => h = h.without_edge(u, v).unwrap_or(h),
            None => break,
        }
    }
    Ok(h)
}
