//! The book chapters, embedded as documentation modules.
//!
//! Each module's docs are the verbatim markdown of one chapter from
//! `book/`, so `cargo test --doc` compiles and runs every code snippet the
//! guide shows. A chapter cannot drift from the library: if an API or a
//! numeric claim changes, the corresponding snippet fails here.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/fusion-by-selection.md")]
mod fusion_by_selection {}

#[doc = include_str!("../../../book/src/images-on-disk.md")]
mod images_on_disk {}

#[doc = include_str!("../../../book/src/baseline-fusers.md")]
mod baseline_fusers {}

#[doc = include_str!("../../../book/src/quality-metrics.md")]
mod quality_metrics {}

#[doc = include_str!("../../../book/src/synthetic-pairs.md")]
mod synthetic_pairs {}

#[doc = include_str!("../../../book/src/command-line.md")]
mod command_line {}
