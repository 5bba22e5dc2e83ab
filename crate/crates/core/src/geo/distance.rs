use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GeoPoint, EARTH_RADIUS_KM};
use crate::error::{Error, Result};

/// Great-circle distance in km on a sphere of radius [`EARTH_RADIUS_KM`].
pub fn haversine_distance(a: GeoPoint, b: GeoPoint) -> f64 {
    let lat1 = a.lat().to_radians();
    let lat2 = b.lat().to_radians();
    let half_dlat = (lat2 - lat1) / 2.0;
    let half_dlon = (b.lon() - a.lon()).to_radians() / 2.0;
    let h = half_dlat.sin().powi(2) + lat1.cos() * lat2.cos() * half_dlon.sin().powi(2);
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}

/// Pairwise distance used by the index and every algorithm.
///
/// * `Haversine`: km on the sphere.
/// * `Equirectangular`: km on the plane tangent at `ref_lat`, i.e. the
///   Euclidean distance between [`super::project_equirectangular`] images.
///   Longitude differences are not wrapped across the antimeridian.
/// * `Euclidean`: unitless, on the raw `(lat, lon)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistanceMetric {
    Haversine,
    Equirectangular { ref_lat: f64 },
    Euclidean,
}

impl DistanceMetric {
    pub fn equirectangular(ref_lat: f64) -> Result<Self> {
        let metric = DistanceMetric::Equirectangular { ref_lat };
        metric.validate()?;
        Ok(metric)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DistanceMetric::Equirectangular { ref_lat }
                if !ref_lat.is_finite() || ref_lat.abs() >= 90.0 =>
            {
                Err(Error::DegenerateProjection(ref_lat))
            }
            _ => Ok(()),
        }
    }

    #[inline]
    pub fn distance(&self, a: GeoPoint, b: GeoPoint) -> f64 {
        match *self {
            DistanceMetric::Haversine => haversine_distance(a, b),
            DistanceMetric::Equirectangular { ref_lat } => {
                let dx = EARTH_RADIUS_KM * (b.lon() - a.lon()).to_radians() * ref_lat.to_radians().cos();
                let dy = EARTH_RADIUS_KM * (b.lat() - a.lat()).to_radians();
                dx.hypot(dy)
            }
            DistanceMetric::Euclidean => (b.lat() - a.lat()).hypot(b.lon() - a.lon()),
        }
    }

    /// Maps a point into a Cartesian space where Euclidean distance is a
    /// monotone function of this metric's distance.
    pub(crate) fn embed(&self, p: GeoPoint) -> [f64; 3] {
        match *self {
            DistanceMetric::Haversine => {
                let (lat, lon) = (p.lat().to_radians(), p.lon().to_radians());
                [
                    EARTH_RADIUS_KM * lat.cos() * lon.cos(),
                    EARTH_RADIUS_KM * lat.cos() * lon.sin(),
                    EARTH_RADIUS_KM * lat.sin(),
                ]
            }
            DistanceMetric::Equirectangular { ref_lat } => [
                EARTH_RADIUS_KM * p.lon().to_radians() * ref_lat.to_radians().cos(),
                EARTH_RADIUS_KM * p.lat().to_radians(),
                0.0,
            ],
            DistanceMetric::Euclidean => [p.lat(), p.lon(), 0.0],
        }
    }

    /// Upper bound on the embedded distance of any pair within `eps`,
    /// inflated so that rounding can only widen the candidate set.
    pub(crate) fn embedded_radius(&self, eps: f64) -> f64 {
        let raw = match *self {
            DistanceMetric::Haversine => {
                let half_angle = eps / (2.0 * EARTH_RADIUS_KM);
                if half_angle >= std::f64::consts::FRAC_PI_2 {
                    return f64::INFINITY;
                }
                2.0 * EARTH_RADIUS_KM * half_angle.sin()
            }
            _ => eps,
        };
        raw * (1.0 + 1e-9) + 1e-9
    }

    pub(crate) fn embedded_dims(&self) -> usize {
        match self {
            DistanceMetric::Haversine => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for DistanceMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceMetric::Haversine => f.write_str("haversine"),
            DistanceMetric::Equirectangular { ref_lat } => write!(f, "equirect(ref_lat={ref_lat})"),
            DistanceMetric::Euclidean => f.write_str("euclid"),
        }
    }
}

/// Metric family as selected on a command line; the equirectangular
/// reference latitude is resolved later against a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Haversine,
    Equirect,
    Euclid,
}

impl MetricKind {
    /// Resolves to a concrete metric; `Equirect` is referenced to the mean
    /// latitude of `points` (0 for an empty set).
    pub fn resolve(self, points: &[GeoPoint]) -> Result<DistanceMetric> {
        Ok(match self {
            MetricKind::Haversine => DistanceMetric::Haversine,
            MetricKind::Euclid => DistanceMetric::Euclidean,
            MetricKind::Equirect => DistanceMetric::equirectangular(mean_latitude(points))?,
        })
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haversine" => Ok(MetricKind::Haversine),
            "equirect" | "equirectangular" => Ok(MetricKind::Equirect),
            "euclid" | "euclidean" => Ok(MetricKind::Euclid),
            other => Err(Error::InvalidParameter(format!("unknown metric `{other}`"))),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricKind::Haversine => "haversine",
            MetricKind::Equirect => "equirect",
            MetricKind::Euclid => "euclid",
        })
    }
}

pub(crate) fn mean_latitude(points: &[GeoPoint]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    points.iter().map(|p| p.lat()).sum::<f64>() / points.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(lat: f64, lon: f64) -> GeoPoint {
        GeoPoint::new(lat, lon).unwrap()
    }

    #[test]
    fn identity_and_symmetry() {
        let a = p(32.9286, 73.7314);
        let b = p(33.0283, 73.6011);
        for m in [
            DistanceMetric::Haversine,
            DistanceMetric::Equirectangular { ref_lat: 33.0 },
            DistanceMetric::Euclidean,
        ] {
            assert_eq!(m.distance(a, a), 0.0);
            assert_eq!(m.distance(a, b), m.distance(b, a));
            assert!(m.distance(a, b) > 0.0);
        }
    }

    #[test]
    fn one_degree_of_latitude() {
        let d = haversine_distance(p(0.0, 10.0), p(1.0, 10.0));
        let expected = EARTH_RADIUS_KM * std::f64::consts::PI / 180.0;
        assert!((d - expected).abs() < 1e-9);
    }

    #[test]
    fn antipodes() {
        let d = haversine_distance(p(0.0, 0.0), p(0.0, 180.0));
        assert!((d - EARTH_RADIUS_KM * std::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn pole_reference_is_degenerate() {
        assert!(matches!(
            DistanceMetric::equirectangular(90.0),
            Err(Error::DegenerateProjection(_))
        ));
        assert!(DistanceMetric::equirectangular(-89.9).is_ok());
    }

    #[test]
    fn embedding_radius_covers_haversine() {
        let a = p(32.9, 73.7);
        let b = p(33.1, 73.9);
        let m = DistanceMetric::Haversine;
        let d = m.distance(a, b);
        let (ea, eb) = (m.embed(a), m.embed(b));
        let chord = ((ea[0] - eb[0]).powi(2) + (ea[1] - eb[1]).powi(2) + (ea[2] - eb[2]).powi(2)).sqrt();
        assert!(chord <= m.embedded_radius(d));
        assert_eq!(m.embedded_radius(1e6), f64::INFINITY);
    }

    #[test]
    fn metric_kind_parses() {
        assert_eq!("haversine".parse::<MetricKind>().unwrap(), MetricKind::Haversine);
        assert_eq!("equirect".parse::<MetricKind>().unwrap(), MetricKind::Equirect);
        assert_eq!("euclid".parse::<MetricKind>().unwrap(), MetricKind::Euclid);
        assert!("manhattan".parse::<MetricKind>().is_err());
    }
}
