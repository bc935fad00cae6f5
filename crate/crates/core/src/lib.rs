//! Composite conformal maps from a concentric annulus onto an unbounded
//! plane containing a symmetric shaped hole and a nearly circular hole.
//!
//! The map is the composition `z = F(f(zeta))` of a real-parameter bilinear
//! involution `f` ([`bilinear`]), carrying the annulus `rho1 <= |zeta| <= 1`
//! onto the exterior of two circles, with a Laurent-series outer map `F`
//! ([`outer_map`]), carrying the circle exterior onto the exterior of the
//! shaped hole. The second circle images to a near circle; [`composite`]
//! solves the map parameters from a hole target and [`discrepancy`] measures
//! how near.
//!
//! ```
//! use annulus_map::{CompositeMap, HoleTarget, HypotrochoidSpec};
//!
//! // square-edged two-lobe hole of outer radius 1, circular hole of radius
//! // 0.25 one unit to its right
//! let outer = HypotrochoidSpec::straight_edged(2, 0.8).unwrap().to_map();
//! let map = CompositeMap::build(outer, HoleTarget::gap(1.0, 0.25)).unwrap();
//! assert!((map.hole().eccentric_ratio - 0.1151).abs() < 1e-4);
//!
//! let report = annulus_map::discrepancy::max_discrepancy(&map, 720);
//! assert!(report.delta_max < 0.002);
//! ```

pub mod bilinear;
pub mod composite;
pub mod discrepancy;
pub mod error;
pub mod outer_map;
pub mod search;

pub use bilinear::{BilinearParams, CirclePairGeometry};
pub use composite::{CompositeMap, GridPoint, HoleGeometry, HoleTarget};
pub use discrepancy::{DiscrepancyReport, ReferenceCell};
pub use error::MapError;
pub use outer_map::{HypotrochoidSpec, LaurentMap, MapFamily, PolygonSpec};

pub use num_complex::Complex64;
