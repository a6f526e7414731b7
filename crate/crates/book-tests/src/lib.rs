//! Compiles and runs every code block in the guide (`book/`) as doctests.
//!
//! mdbook cannot test snippets that use external crates, so each chapter is
//! attached here as the documentation of an empty module; `cargo test`
//! then picks the blocks up as ordinary doctests against the real `pursuit`
//! crate. If a chapter example rots, the build breaks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/game.md")]
pub mod game {}

#[doc = include_str!("../../../book/src/exact.md")]
pub mod exact {}

#[doc = include_str!("../../../book/src/trim.md")]
pub mod trim {}

#[doc = include_str!("../../../book/src/staged.md")]
pub mod staged {}

#[doc = include_str!("../../../book/src/reduction.md")]
pub mod reduction {}

#[doc = include_str!("../../../book/src/lab.md")]
pub mod lab {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
