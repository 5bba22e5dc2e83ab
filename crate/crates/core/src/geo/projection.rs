use serde::{Deserialize, Serialize};

use super::{GeoPoint, EARTH_RADIUS_KM};
use crate::error::{Error, Result};

/// A point on the local projection plane, in km east (`x`) and north (`y`)
/// of the projection origin.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanarPoint { x, y }
    }

    #[inline]
    pub fn distance(&self, other: &PlanarPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    #[inline]
    pub fn distance_sq(&self, other: &PlanarPoint) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        dx * dx + dy * dy
    }
}

/// Equirectangular projection about an origin.
///
/// `x = R·Δlon·cos(ref_lat)`, `y = R·Δlat` with angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equirectangular {
    origin: GeoPoint,
    cos_ref: f64,
}

impl Equirectangular {
    pub fn new(origin: GeoPoint) -> Result<Self> {
        if origin.lat().abs() >= 90.0 {
            return Err(Error::DegenerateProjection(origin.lat()));
        }
        Ok(Equirectangular {
            origin,
            cos_ref: origin.lat().to_radians().cos(),
        })
    }

    /// Projection referenced at the centroid (mean lat, mean lon) of `points`.
    pub fn centered_on(points: &[GeoPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("cannot center a projection on no points".into()));
        }
        let n = points.len() as f64;
        let lat = points.iter().map(|p| p.lat()).sum::<f64>() / n;
        let lon = points.iter().map(|p| p.lon()).sum::<f64>() / n;
        Self::new(GeoPoint::new(lat, lon)?)
    }

    pub fn origin(&self) -> GeoPoint {
        self.origin
    }

    pub fn project(&self, p: GeoPoint) -> PlanarPoint {
        PlanarPoint {
            x: EARTH_RADIUS_KM * (p.lon() - self.origin.lon()).to_radians() * self.cos_ref,
            y: EARTH_RADIUS_KM * (p.lat() - self.origin.lat()).to_radians(),
        }
    }

    /// Inverse of [`Self::project`]. Fails if the planar point maps outside
    /// the valid coordinate range.
    pub fn unproject(&self, q: PlanarPoint) -> Result<GeoPoint> {
        let lat = self.origin.lat() + (q.y / EARTH_RADIUS_KM).to_degrees();
        let lon = self.origin.lon() + (q.x / (EARTH_RADIUS_KM * self.cos_ref)).to_degrees();
        GeoPoint::new(lat, lon)
    }
}

/// Projects `p` onto the plane referenced at `(ref_lat, ref_lon)`.
pub fn project_equirectangular(p: GeoPoint, ref_lat: f64, ref_lon: f64) -> Result<PlanarPoint> {
    if !ref_lat.is_finite() || ref_lat.abs() >= 90.0 {
        return Err(Error::DegenerateProjection(ref_lat));
    }
    let origin = GeoPoint::new(ref_lat, ref_lon)?;
    Ok(Equirectangular::new(origin)?.project(p))
}
