//! Convex hulls of random walks with and without drift.
//!
//! The crate is organised by task:
//!
//! * [`geom`]: planar hulls, intrinsic volumes, parallel bodies, symmetric
//!   differences and 3-d hull volume.
//! * [`walk`]: seeded random walks, the centre-of-mass process and the
//!   anisotropic drift-frame scaling.
//! * [`func`]: closed-form functionals of piecewise-linear functions (hull
//!   area, energy, arc length), concave majorants and the surgeries built on them.
//! * [`varopt`]: ascent solvers for the planar hull-area variational problems.
//! * [`lil`]: Monte Carlo running-maximum estimators under iterated-logarithm
//!   normalisations.
//! * [`checks`]: named invariant suites shared by the CLI and the tests.
//!
//! Geometry and the piecewise-linear calculus are generic over [`Scalar`]
//! (`f32` or `f64`); the aliases below fix `f64`, which the simulation and
//! optimisation code uses throughout.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod error;
pub mod func;
pub mod geom;
pub mod io;
pub mod lil;
pub mod num;
pub mod varopt;
pub mod walk;

pub use error::{Error, Result};
pub use num::Scalar;

pub type Point = geom::Point2<f64>;
pub type ConvexPolygon = geom::ConvexPolygon<f64>;
pub type IntrinsicVolumes = geom::IntrinsicVolumes<f64>;
pub type PLFunction = func::PLFunction<f64>;
pub type FaceDecomposition = func::FaceDecomposition;
