//! Planar convex-hull geometry, intrinsic volumes, and 3-d hull volume.
//!
//! Polygons are kept in a canonical form: counterclockwise, strictly convex,
//! starting at the lexicographically smallest vertex. Degenerate hulls (a point
//! or a segment) are polygons with one or two vertices, and every routine here
//! accepts them.

mod hull3;
mod point;
mod polygon;
mod symdiff;
mod volumes;

pub use hull3::{convex_hull_volume_3d, Hull3};
pub use point::Point2;
pub use polygon::{convex_hull_2d, convex_hull_indices, ConvexPolygon};
pub(crate) use polygon::hull_cycle_with_collinear;
pub use symdiff::symmetric_difference_radius;
pub use volumes::{
    ball_intrinsic_volumes_2d, binomial, intrinsic_volumes_2d, parallel_body_area_2d,
    parallel_body_area_by_boundary, rectangle_intrinsic_volumes, IntrinsicVolumes,
};
