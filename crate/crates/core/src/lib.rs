//! Deterministic generator of synthetic scientific-figure corpora.
//!
//! The pipeline is `sample -> render -> question generation -> balance`:
//!
//! * [`synth`] samples per-figure source data for five figure types from a
//!   per-figure seed.
//! * [`render`] rasterizes a [`synth::FigureSpec`] into an RGB PNG without
//!   anti-aliasing and reports a tight bounding box for every element.
//! * [`qa`] instantiates the fifteen yes/no question templates from the
//!   source data and balances answers per template.
//! * [`corpus`] orchestrates splits, writes the on-disk corpus and validates
//!   existing corpora.
//!
//! Every stage is a pure function of its inputs, so a corpus is fully
//! reproducible from its manifest.

// `!(a > b)` is used on purpose to reject NaN along with out-of-order values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod color;
pub mod corpus;
mod error;
pub mod qa;
pub mod render;
pub mod seed;
pub mod synth;

pub use error::{Error, Result};

/// Version string recorded in every manifest.
pub const GENERATOR_VERSION: &str = concat!("figsynth/", env!("CARGO_PKG_VERSION"));
