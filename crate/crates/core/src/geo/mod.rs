//! Geographic primitives shared by every clustering algorithm.
//!
//! Distances are in kilometres for the geodesic metrics and in raw degree
//! units for [`DistanceMetric::Euclidean`]. The earth is a sphere of radius
//! [`EARTH_RADIUS_KM`].

mod distance;
mod index;
mod point;
mod projection;

pub use distance::{haversine_distance, DistanceMetric, MetricKind};
pub(crate) use distance::mean_latitude;
pub use index::{IndexStructure, SpatialIndex};
pub use point::{Dms, GeoPoint};
pub use projection::{project_equirectangular, Equirectangular, PlanarPoint};

/// Mean earth radius used by every geodesic computation, in km.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// Default scale for converting a distance measured on a printed map into
/// kilometres. Only used when translating figure-space radii such as "1 cm".
pub const DEFAULT_MAP_SCALE_KM_PER_CM: f64 = 5.0;

/// Converts a radius measured on a printed map to kilometres.
pub fn map_cm_to_km(cm: f64, map_scale_km_per_cm: f64) -> f64 {
    cm * map_scale_km_per_cm
}
