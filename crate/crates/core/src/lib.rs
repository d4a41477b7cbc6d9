//! Geometric optimization catalog.
//!
//! Every problem here reduces to a one-dimensional search once the
//! constraint is used to eliminate a variable:
//!
//! - [`geometry`]: regular polygons and the circle parameterized by inradius,
//!   with area `c·r²` and perimeter `2c·r`.
//! - [`optimize`]: golden-section search, boundary bisection, central
//!   differences and the quadratic-vertex rule.
//! - [`problems`]: the catalog (rectangle, box, partitioned fence, cans with
//!   any regular base, rectangle and ellipse inscribed in a semicircle).
//! - [`oracle`]: brute-force grid search used as independent ground truth.
//! - [`verify`]: invariant suites that tie the above together.

pub mod error;
pub mod geometry;
pub mod optimize;
pub mod oracle;
pub mod problems;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{Point2, Shape};
pub use optimize::{Method, Solution1D};
