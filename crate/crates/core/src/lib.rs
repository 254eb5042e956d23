//! Exact Ollivier–Ricci curvature on finite simple graphs.
//!
//! - [`graph`]: immutable graphs with an all-pairs hop metric.
//! - [`transport`]: exact 1-Wasserstein distance by min-cost flow, an LP
//!   oracle, and Kantorovich dual certificates.
//! - [`curvature`]: curvature of vertex pairs and the Jost–Liu estimates.
//! - [`gluing`]: the m-gluing `K_n +_m K'_n` of two complete graphs, its edge
//!   classes, closed-form curvature values and the positivity window.
//! - [`spectral`]: normalized Laplacian gap, exhaustive Cheeger constant and
//!   the curvature sandwich bounds.
//! - [`verify`]: the end-to-end check suite run by the `ricci verify` command.
//!
//! All curvature and transport values are exact rationals; floating point
//! appears only in [`spectral`].

pub mod curvature;
pub mod gluing;
pub mod graph;
pub mod spectral;
pub mod transport;
pub mod verify;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::Ratio<i64>;

pub use curvature::{min_edge_curvature, ricci_curvature, CurvatureReport};
pub use gluing::{build_gluing, EdgeClass, GluingSpec};
pub use graph::{Graph, Vertex, VertexMeasure};
pub use transport::{wasserstein, LipschitzWitness, TransportPlan};
