//! Smooth sphere-to-hull maps `f_ε` and the polytope machinery around them.
//!
//! For a finite point configuration `x_1..x_n ⊂ R^d`, `f_ε` sends a unit
//! direction to a convex combination of the points whose weights
//! concentrate, as `ε → 0`, on the hull vertex exposed by that direction.
//! The images are strictly interior to the hull and converge to its
//! boundary as sets.

pub mod boundary_map;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod geom;
pub mod hull;
pub mod io;
pub mod lab;
pub mod linalg;
pub mod metrics;
pub mod sampling;

pub use boundary_map::{evaluate, evaluate_batch, weights, MapImage, WeightVector};
pub use error::{Error, Result};
pub use geom::{build_configuration, is_nondegenerate, AffineHyperplane, PointConfiguration, UnitDirection};
pub use hull::{boundary_distance, build_hull, classify_direction, FaceId, HullDescription, HullTolerances};
pub use sampling::{SamplePlan, Strategy};
