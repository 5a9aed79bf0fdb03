//! The guide's chapters, one module each, so that `cargo test --doc` runs
//! every listing in the book.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/polygons.md")]
pub mod polygons {}
#[doc = include_str!("src/types.md")]
pub mod types {}
#[doc = include_str!("src/montes.md")]
pub mod montes {}
#[doc = include_str!("src/frames.md")]
pub mod frames {}
#[doc = include_str!("src/precision.md")]
pub mod precision {}
#[doc = include_str!("src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
