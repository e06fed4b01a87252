//! Exact computation of moduli dimensions of tropical plane curves.
//!
//! The crate works with convex lattice polygons, their fine unimodular
//! triangulations and the skeletons of dual tropical curves. Two independent
//! routes produce the dimension of the space of realizable skeleton edge
//! lengths for a triangulation: a combinatorial count over radial edges, and
//! the rank of the composed linear length map on the secondary cone.

pub mod catalog;
pub mod error;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod moduli;
pub mod scalar;
pub mod triangulation;
pub mod tropical;

pub use error::{Error, Result};
pub use geometry::Point;
pub use lattice::{InteriorHull, LatticePoint, LatticePolygon, RationalPoint, RationalPolygon, Segment, UnimodularMap};
pub use scalar::Field;
pub use triangulation::{HeightFunction, SecondaryCone, Triangulation};

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;
/// Exact rational with machine-word parts, for small LP and rank problems.
pub type SmallRational = num_rational::Ratio<i64>;
/// Lattice coordinate type.
pub type Int = i64;
