//! The guide's chapters, attached as rustdoc so that `cargo test --doc`
//! compiles and runs every code snippet in the book. mdBook renders the same
//! files from `book/`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/set-systems.md")]
pub mod set_systems {}

#[doc = include_str!("../../../book/src/graph-families.md")]
pub mod graph_families {}

#[doc = include_str!("../../../book/src/neighborhood-oracles.md")]
pub mod neighborhood_oracles {}

#[doc = include_str!("../../../book/src/search.md")]
pub mod search_guide {}

#[doc = include_str!("../../../book/src/witnesses.md")]
pub mod witnesses_guide {}

#[doc = include_str!("../../../book/src/density.md")]
pub mod density_guide {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_guide {}
