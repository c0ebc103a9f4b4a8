//! Verse-aligned annotation projection.
//!
//! Sentence-level annotations from an OntoNotes-style treebank of a Bible
//! translation (constituency trees, coreference, PropBank) are projected onto
//! any other translation of the same text by treating shared
//! book/chapter/verse identity as an alignment. The crate builds five
//! sequence-classification datasets from the projection:
//!
//! | task | input | label |
//! |------|-------|-------|
//! | NMC  | one verse | number of non-pronominal coreference mentions |
//! | PNS  | one verse | does the main-clause subject contain a proper noun |
//! | SM   | one verse | declarative / interrogative / imperative |
//! | SS   | verse pair + sense | does the second verse use the sense too |
//! | SAC  | verse pair + sense | do both usages take the same number of arguments |
//!
//! The [`udcheck`] module rebuilds the NMC and PNS labels from dependency
//! parses and measures agreement between the two annotation sets.
//!
//! Batch work (document parsing, per-verse labelling, alignment) runs on
//! rayon when the `parallel` feature is enabled; see [`par`].

pub mod align;
pub mod config;
pub mod error;
pub mod onf;
pub mod par;
pub mod pipeline;
pub mod rng;
pub mod scripture;
pub mod synth;
pub mod tasks;
pub mod udcheck;

pub use error::{Error, Result};
