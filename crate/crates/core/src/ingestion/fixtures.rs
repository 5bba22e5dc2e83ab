use crate::geo::{Equirectangular, GeoPoint, PlanarPoint};

use super::CaseRecord;

/// Centre of the plane the two-density layout is drawn on.
pub const TWO_DENSITY_ORIGIN: (f64, f64) = (33.0, 73.5);

/// Baseline DBSCAN parameters (eps in km, min_pts) for [`two_density_dataset`].
pub const TWO_DENSITY_BASELINE: (f64, usize) = (1.0, 3);

/// A deterministic layout with two tight groups and one loose one.
///
/// On a plane tangent at [`TWO_DENSITY_ORIGIN`] (all offsets in km):
///
/// * `dense-a`: 5×5 grid, spacing 0.25, x in [0, 1]
/// * `dense-b`: 5×5 grid, spacing 0.25, x in [2.15, 3.15], so 1.15 km from `dense-a`
/// * `sparse`: 4×4 grid, spacing 0.95, x in [9.15, 12.0]
///
/// With min_pts 3, eps 1.0 finds all three groups, eps 1.2 merges the two
/// dense grids and eps 0.8 leaves the sparse grid as noise.
pub fn two_density_dataset() -> Vec<CaseRecord> {
    let (lat, lon) = TWO_DENSITY_ORIGIN;
    let projection = Equirectangular::new(GeoPoint::new(lat, lon).expect("valid origin")).expect("valid origin");
    let groups: [(&str, f64, usize, f64); 3] = [("dense-a", 0.0, 5, 0.25), ("dense-b", 2.15, 5, 0.25), ("sparse", 9.15, 4, 0.95)];

    let mut records = Vec::new();
    for (name, x0, side, spacing) in groups {
        for row in 0..side {
            for col in 0..side {
                let offset = PlanarPoint::new(x0 + col as f64 * spacing, row as f64 * spacing);
                let location = projection.unproject(offset).expect("offsets stay near the origin");
                let id = format!("case-{:04}", records.len() + 1);
                records.push(CaseRecord::new(id, location, name));
            }
        }
    }
    records
}
