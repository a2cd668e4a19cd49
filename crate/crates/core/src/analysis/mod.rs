//! Metric and local-structure analytics: exact distances and diameters,
//! growth tables and the Theorem 13 bounds, r-type censuses, genericity,
//! dense holonomy, local isomorphism, and the contraction experiment.

pub mod contraction;
pub mod distance;
pub mod growth;
pub mod local;

pub use contraction::{contraction_experiment, ContractionReport};
pub use distance::{
    bfs, bh05_distance, diameter_interval, exact_diameter, level_bfs, DistanceTable,
};
pub use growth::{
    eq7_check, growth_bounds_check, growth_orbital, growth_x_omega, GrowthBoundsReport, GrowthTable,
};
pub use local::{
    affine_preserves_adjacency, dense_holonomy_radius, genericity_radius, local_iso_check,
    type_census, LocalIsoVerdict, TypeCensus,
};
