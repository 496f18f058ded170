//! Finite convex geometries and their geometric representations.
//!
//! * [`geometry`]: set systems, closure operators, generation from orders, isomorphism.
//! * [`dimension`]: copoints, poset width and convex dimension; geometries of rational point sets.
//! * [`bodies`]: planar convex bodies through their support functions.
//! * [`planar`]: representation of a geometry by convex bodies pinched between two polygons.
//! * [`ellipsoid`]: representation of a geometry by axis-aligned ellipsoids close to a ball.
//! * [`io`]: JSON documents for all of the above.

pub mod bodies;
pub mod dimension;
pub mod ellipsoid;
pub mod exact;
pub mod geometry;
pub mod io;
pub mod planar;
pub mod subset;

pub use geometry::{ConvexGeometry, GroundSet, OrderingFamily, SetFamily};
pub use subset::Subset;
