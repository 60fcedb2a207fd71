//! Cops and robbers on finite graphs: an exact retrograde solver, the
//! geodesic guard, the expansion-based cop team with its level
//! decomposition, the recursive guard-and-delete strategy, and rigorous
//! log-space checks of the accompanying bound arithmetic.

pub mod bounds;
pub mod engine;
pub mod error;
pub mod expander;
pub mod generators;
pub mod graph;
pub mod guard;
pub mod interval;
pub mod matching;
pub mod meyniel;
pub mod rng;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Distances, Graph, VertexSet};
