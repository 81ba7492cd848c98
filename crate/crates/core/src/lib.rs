//! Exact k-deck computation, deck-based reconstruction and same-deck search
//! for graphs on at most 64 vertices.

pub mod constructions;
pub mod deck;
pub mod degree;
pub mod error;
pub mod family;
pub mod graph;
pub mod pattern;
pub mod search;
pub mod subsets;
pub mod suite;

pub use error::{Error, Result};
