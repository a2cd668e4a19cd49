//! Construction and exact verification of a family of 4-regular graphs on the
//! integers indexed by infinite binary sequences, together with the
//! self-similar group acting on the rooted binary tree whose Schreier graphs
//! they are.
//!
//! The crate builds the infinite graphs through adjacency oracles, their
//! finite models and quotients, the level and orbital Schreier graphs, and
//! runs exact desk-scale checks of the structural results: explicit
//! isomorphisms, canonical pointed-ball types, dense holonomy, diameters and
//! growth bounds.

pub mod analysis;
pub mod canon;
pub mod export;
pub mod graph;
pub mod group;
pub mod portrait;
pub mod schreier;
pub mod verify;
pub mod words;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value out of exact machine-integer range: {0}")]
    Overflow(String),

    #[error("no edge level found for vertex {z} within the iteration cap")]
    IterationCapExceeded { z: i64 },

    #[error("enumeration budget exceeded: {0}")]
    ExplosionGuard(String),

    #[error("the {r}-ball at {center} is truncated by the window")]
    IncompleteBall { center: i64, r: u32 },

    #[error("eventually constant sequences do not have dense holonomy")]
    NotDenseHolonomy,

    #[error("ball vertex is not a power of the adding machine applied to the center")]
    NotInAOrbit,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
