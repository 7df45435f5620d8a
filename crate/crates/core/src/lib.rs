//! Resistance distances and the global cyclicity index of graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: simple undirected graphs, generators, bridges, complements
//!   and exhaustive enumeration of small labeled graphs;
//! - [`resistance`]: effective resistances from the Laplacian, the rank-one
//!   edge update and Foster's sum;
//! - [`cyclicity`]: the index itself, its edge-addition increment and every
//!   bound relating it to order, size, degrees and the cyclomatic number;
//! - [`certify`]: exhaustive and sampled verification runs with replayable
//!   witnesses, including the complement (Nordhaus–Gaddum) inequalities.
//!
//! ```
//! use cyclicity::cyclicity::Analysis;
//! use cyclicity::graph::cycle;
//! use cyclicity::resistance::SolverConfig;
//!
//! let c5 = cycle(5).unwrap();
//! let a = Analysis::new(&c5, &SolverConfig::default(), 1e-7).unwrap();
//! assert!((a.cyclicity() - 1.25).abs() < 1e-12);
//! ```

pub mod certify;
pub mod cyclicity;
mod error;
pub mod graph;
pub mod resistance;

pub use error::{Error, ErrorClass, Result};
