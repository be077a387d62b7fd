//! Khovanov and Lee homology, and the s invariant.

pub mod cobordism;
pub mod cube;
pub mod engine;
pub mod filtration;
pub mod scanner;

pub use engine::{
    graded_euler_characteristic, jones_in_q, Backend, Engine, EngineConfig, InvariantReport, LOG_HEADER,
};
pub use filtration::{FilteredComplex, FiltrationLevels};
