//! ω-regular word and tree languages, the separating-automaton metric on
//! infinite words, and executable strong Choquet strategies.

mod error;
mod graph;

pub mod automata;
pub mod choquet;
pub mod enumeration;
pub mod lifting;
pub mod metric;
pub mod trees;
pub mod words;

pub use error::{Error, Result};
