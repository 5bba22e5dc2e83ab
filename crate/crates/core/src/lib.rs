//! Geospatial clustering of geocoded disease-case records.
//!
//! The crate is split into four layers:
//!
//! * [`geo`]: coordinates, distance metrics, the equirectangular projection
//!   and an exact radius-query spatial index.
//! * [`clustering`]: k-means, k-medoids (PAM), DBSCAN and OPTICS, plus
//!   DBSCAN-style extraction from an OPTICS reachability plot.
//! * [`evaluation`]: adjusted Rand index, silhouette, per-tehsil breakdown,
//!   DBSCAN parameter sweeps and a cross-algorithm comparison report.
//! * [`ingestion`]: CSV/GeoJSON case files and a seeded synthetic outbreak
//!   generator anchored on the Jhelum district.

pub mod clustering;
pub mod error;
pub mod evaluation;
pub mod geo;
pub mod ingestion;

pub use error::{Error, Result};
