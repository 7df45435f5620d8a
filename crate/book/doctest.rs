// mdbook cannot run snippets that depend on a workspace crate, so each
// chapter becomes a module doc here and `cargo test -p cyclicity-book` runs
// them as rustdoc doctests.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("src/resistance.md")]
pub mod resistance {}
#[doc = include_str!("src/cyclicity.md")]
pub mod cyclicity_index {}
#[doc = include_str!("src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("src/complements.md")]
pub mod complements {}
#[doc = include_str!("src/certification.md")]
pub mod certification {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
#[doc = include_str!("../README.md")]
pub mod readme {}
