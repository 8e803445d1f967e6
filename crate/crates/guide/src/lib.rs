//! Doc-test shim: each chapter of the book is included as module
//! documentation so `cargo test` compiles and runs every code snippet the
//! book shows. The book itself renders from `book/` with mdbook.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/hypergraphs.md")]
pub mod hypergraphs {}

#[doc = include_str!("../../../book/src/tight-trees.md")]
pub mod tight_trees {}

#[doc = include_str!("../../../book/src/embeddings.md")]
pub mod embeddings {}

#[doc = include_str!("../../../book/src/bounded-trunk.md")]
pub mod bounded_trunk {}

#[doc = include_str!("../../../book/src/extremal-search.md")]
pub mod extremal_search {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
