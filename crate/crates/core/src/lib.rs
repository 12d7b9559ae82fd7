//! Finite-domain reasoning over the topics of genus, property and definition.
//!
//! A [`KnowledgeBase`] holds interned expressions and signed ground facts.
//! [`engine::saturate`] closes it under the axioms and the built-in rule
//! [`Catalog`]; [`engine::refute`] looks for a contradiction after adding a
//! hypothesis; [`dialectic`] runs scripted question-and-answer debates.

pub mod axioms;
pub mod catalog;
pub mod dialectic;
pub mod document;
pub mod engine;
pub mod error;
pub mod kb;
pub mod lexicon;
pub mod mereology;
pub mod rule;
pub mod signature;

pub use catalog::Catalog;
pub use engine::{Derivation, Refutation, Saturation, SaturationOptions, Violation};
pub use error::{Error, Result};
pub use kb::{Fact, KnowledgeBase, Pattern, Provenance};
pub use lexicon::{ExprId, Kind, Lexicon};
pub use rule::Rule;
pub use signature::{Category, GroundLit, Polarity, Pred, Value};
