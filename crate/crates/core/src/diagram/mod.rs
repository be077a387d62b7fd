pub mod alexander;
pub mod builder;
pub mod gauss;
pub mod jones;
pub mod library;
pub mod pd;
pub mod poly;
pub mod reidemeister;

pub use alexander::alexander_polynomial;
pub use builder::{braid_closure, DiagramBuilder, Slot};
pub use gauss::{canonical_hash, gauss_code};
pub use jones::jones_polynomial;
pub use library::{knot_by_name, torus_knot};
pub use pd::{Crossing, Passage, PlanarDiagram};
pub use poly::LaurentPolynomial;
pub use reidemeister::{apply_move, random_walk, Move};
