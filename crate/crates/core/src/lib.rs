//! Geometry of convex curves as constant-width curves of a Minkowski plane.
//!
//! Given a smooth strictly convex curve `γ`, [`symmetry::decompose`] builds the
//! symmetric unit ball `u(γ)` in which `γ` has constant width, together with the
//! area evolute `M`. From there the crate computes the center symmetry set,
//! the dual-norm involute `N`, signed areas, cusp counts and area splits, and
//! [`iteration`] iterates involutes to find the central point of `γ`.
//!
//! Functions of the angle θ live on a uniform grid ([`periodic`]) and all
//! calculus is spectral, so identities hold to near machine precision for
//! analytic curves. [`oracle`] holds slow independent checkers used by tests.

pub mod audit;
pub mod curve;
pub mod curves;
pub mod error;
pub mod iteration;
pub mod minkowski;
pub mod oracle;
pub mod periodic;
pub mod symmetry;
pub mod vec2;

pub use curve::ParametricCurve;
pub use error::{Error, Result};
pub use iteration::{central_point, iterate_involutes, CentralPointResult, IterationTrace};
pub use minkowski::{ConvexCurve, SymmetricBall};
pub use periodic::{ParamGrid, PeriodicFn};
pub use symmetry::{decompose, decompose_normalized, WidthDecomposition};
pub use vec2::Vec2;
