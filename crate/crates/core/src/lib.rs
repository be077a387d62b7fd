//! Knot diagrams, Khovanov-Lee concordance invariants and the satellite
//! constructions built on them.

pub mod arith;
pub mod diagram;
pub mod error;
pub mod harness;
pub mod lee;
pub mod satellite;
pub mod seifert;
pub mod tb;

pub use error::{Error, Result};
