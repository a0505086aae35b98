//! Compiles the guide's Rust snippets as doc-tests, one module per chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/cyclotomic.md")]
pub mod cyclotomic {}
#[doc = include_str!("../../../book/src/eta-invariants.md")]
pub mod eta_invariants {}
#[doc = include_str!("../../../book/src/distinguishing.md")]
pub mod distinguishing {}
#[doc = include_str!("../../../book/src/lattices.md")]
pub mod lattices {}
#[doc = include_str!("../../../book/src/wall-crossing.md")]
pub mod wall_crossing {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
