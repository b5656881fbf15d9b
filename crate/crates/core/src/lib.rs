//! Convex geometry kernel for asking which shapes fit inside a container in
//! every orientation.
//!
//! The building blocks are support functions, Minkowski sums, a small dense
//! simplex solver, the Chebyshev center (largest inscribed ball) and an
//! erosion-based translation fit test. On top of those sit orientation
//! sweeps with a Lipschitz certificate in the plane, μ-polygon algebra, and
//! seeded experiment suites in [`verify`].
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! experiment suites and the JSON encoding use.
//!
//! ```
//! use kakeya_core::{chebyshev_center, Halfspaces, Polygon};
//!
//! let q = Halfspaces::from_polygon(&Polygon::unit_square());
//! let d = chebyshev_center(&q).unwrap();
//! assert!((d.radius - 0.5).abs() < 1e-12);
//! ```

pub mod ball;
pub mod error;
pub mod fit;
pub mod hpolytope;
pub mod inball;
pub mod io;
pub mod lp;
pub mod minkowski;
pub mod mu;
pub mod polygon;
pub mod polytope3;
pub mod rotation;
pub mod scalar;
pub mod shape;
pub mod tol;
pub mod vector;
pub mod verify;

pub use error::{GeomError, Result};
pub use fit::{fits_translated, max_scale, sweep_fit};
pub use inball::{chebyshev_center, erosion, inball, min_width};
pub use minkowski::{interpolate, minkowski_sum2, minkowski_sum3, quermass, steiner_coeffs3};
pub use mu::{mu_average_poly, mu_average_vec, mu_rotate, phi, polygon_from_phi};
pub use polytope3::hull3;
pub use scalar::Scalar;
pub use shape::contains;

pub type Vec2 = vector::Vec2<f64>;
pub type Vec3 = vector::Vec3<f64>;
pub type Polygon = polygon::ConvexPolygon<f64>;
pub type Halfspaces = hpolytope::HPolytope<f64>;
pub type Polytope3 = polytope3::VPolytope3<f64>;
pub type Ball = ball::Ball<f64>;
pub type Shape = shape::Shape<f64>;
pub type Rotation = rotation::Rotation<f64>;
pub type Quaternion = rotation::UnitQuaternion<f64>;
pub type MuVector = mu::MuVector<f64>;
pub type FitReport = fit::FitReport<f64>;
pub type SweepReport = fit::SweepReport<f64>;
pub type Tolerances = tol::Tolerances<f64>;
