//! Intermediate representation for Tumbug diagrams.

pub mod dsl;
pub mod grammar;
pub mod heuristics;
pub mod lexicon;
pub mod model;

pub use model::*;
pub mod random;
pub mod render;
pub mod templates;
