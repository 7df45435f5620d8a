//! Exhaustive enumeration of labeled connected graphs by edge mask.
//!
//! Bit `k` of a mask selects the `k`-th vertex pair in lexicographic order
//! `(0,1), (0,2), …, (0,n-1), (1,2), …`.

use super::Graph;
use crate::error::{Error, Result};
use std::ops::Range;

/// Largest order handled exhaustively (2^21 masks).
pub const MAX_EXHAUSTIVE_N: usize = 7;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

fn mask_is_connected(n: usize, mask: u64) -> bool {
    if n <= 1 {
        return true;
    }
    let mut adj = [0u32; MAX_EXHAUSTIVE_N];
    for (k, (u, v)) in pairs(n).enumerate() {
        if mask >> k & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let full = (1u32 << n) - 1;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

impl Graph {
    /// Unit-weight graph selected by `mask` (see module docs for bit order).
    pub fn from_mask(n: usize, mask: u64) -> Graph {
        let edges = pairs(n)
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        Graph::unit(n, edges)
    }

    /// Inverse of [`Graph::from_mask`]; `None` when `C(n,2) > 64`.
    pub fn edge_mask(&self) -> Option<u64> {
        if pair_count(self.n()) > 64 {
            return None;
        }
        let mut mask = 0u64;
        for (k, (u, v)) in pairs(self.n()).enumerate() {
            if self.has_edge(u, v) {
                mask |= 1 << k;
            }
        }
        Some(mask)
    }
}

/// Masks of connected graphs on `n` vertices within `range`, ascending.
pub fn connected_masks(n: usize, range: Range<u64>) -> impl Iterator<Item = u64> {
    range.filter(move |&mask| mask_is_connected(n, mask))
}

/// Iterator over every labeled connected graph on `n` vertices.
#[derive(Debug, Clone)]
pub struct ConnectedGraphs {
    n: usize,
    masks: Range<u64>,
}

impl ConnectedGraphs {
    /// Restricts enumeration to a sub-range of masks, for partitioned runs.
    pub fn with_range(n: usize, masks: Range<u64>) -> Result<Self> {
        check_size(n)?;
        let total = 1u64 << pair_count(n);
        Ok(Self {
            n,
            masks: masks.start.min(total)..masks.end.min(total),
        })
    }

    pub fn mask_count(n: usize) -> u64 {
        1u64 << pair_count(n)
    }
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        for mask in self.masks.by_ref() {
            if mask_is_connected(self.n, mask) {
                return Some(Graph::from_mask(self.n, mask));
            }
        }
        None
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::SizeTooSmall { got: 0, min: 1 });
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::SizeTooLarge {
            got: n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    Ok(())
}

/// All labeled connected graphs on `1 <= n <= 7` vertices in ascending mask
/// order.
pub fn enumerate_connected(n: usize) -> Result<ConnectedGraphs> {
    ConnectedGraphs::with_range(n, 0..ConnectedGraphs::mask_count(n))
}
