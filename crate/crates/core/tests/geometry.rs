mod common;

use epiclust::clustering::{dbscan, DbscanParams};
use epiclust::geo::{haversine_distance, project_equirectangular, DistanceMetric, GeoPoint, SpatialIndex};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = GeoPoint> {
    (-90.0..=90.0f64, -180.0..=180.0f64).prop_map(|(lat, lon)| GeoPoint::new(lat, lon).unwrap())
}

fn local_point() -> impl Strategy<Value = GeoPoint> {
    (32.5..33.5f64, 73.0..74.0f64).prop_map(|(lat, lon)| GeoPoint::new(lat, lon).unwrap())
}

fn metrics() -> [DistanceMetric; 3] {
    [
        DistanceMetric::Haversine,
        DistanceMetric::equirectangular(33.0).unwrap(),
        DistanceMetric::Euclidean,
    ]
}

#[test]
fn jhelum_to_dina_against_law_of_cosines() {
    let jhelum = GeoPoint::new(32.9286, 73.7314).unwrap();
    let dina = GeoPoint::new(33.0283, 73.6011).unwrap();
    let got = haversine_distance(jhelum, dina);
    let want = common::law_of_cosines_km(jhelum, dina);
    assert!((got - want).abs() / want < 1e-6, "{got} vs {want}");
    assert!((16.0..17.0).contains(&got), "{got}");
}

#[test]
fn quarter_meridian() {
    let a = GeoPoint::new(0.0, 0.0).unwrap();
    let b = GeoPoint::new(90.0, 0.0).unwrap();
    let want = std::f64::consts::FRAC_PI_2 * 6371.0;
    assert!((haversine_distance(a, b) - want).abs() < 1e-9);
}

#[test]
fn projection_tracks_haversine_near_the_district() {
    let origin = (32.9286, 73.7314);
    let anchors = [(33.0283, 73.6011), (32.825, 73.7653), (32.5833, 73.05)];
    for (lat, lon) in anchors {
        let p = GeoPoint::new(lat, lon).unwrap();
        let q = project_equirectangular(p, origin.0, origin.1).unwrap();
        let planar = (q.x * q.x + q.y * q.y).sqrt();
        let truth = haversine_distance(GeoPoint::new(origin.0, origin.1).unwrap(), p);
        assert!((planar - truth).abs() / truth < 0.005, "{planar} vs {truth}");
    }
}

#[test]
fn index_structures_agree_on_district_data() {
    let points = common::mixed_density(7, 400);
    for metric in metrics() {
        let eps = if metric == DistanceMetric::Euclidean { 0.02 } else { 2.0 };
        let tree = SpatialIndex::build(&points, metric).unwrap();
        let grid = SpatialIndex::build_for_radius(&points, metric, eps).unwrap();
        for i in 0..points.len() {
            assert_eq!(tree.neighbors(i, eps), grid.neighbors(i, eps));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn metric_axioms(a in point(), b in point(), c in point()) {
        for metric in [DistanceMetric::Haversine, DistanceMetric::Euclidean] {
            let ab = metric.distance(a, b);
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(metric.distance(a, a), 0.0);
            prop_assert_eq!(ab, metric.distance(b, a));
            prop_assert!(metric.distance(a, c) <= ab + metric.distance(b, c) + 1e-9);
        }
    }

    #[test]
    fn equirectangular_axioms(a in local_point(), b in local_point(), c in local_point()) {
        let metric = DistanceMetric::equirectangular(33.0).unwrap();
        let ab = metric.distance(a, b);
        prop_assert_eq!(ab, metric.distance(b, a));
        prop_assert!(metric.distance(a, c) <= ab + metric.distance(b, c) + 1e-9);
    }

    #[test]
    fn haversine_matches_vector_oracle(a in point(), b in point()) {
        let want = common::vector_angle_km(a, b);
        prop_assume!(want > 1e-3);
        prop_assert!((haversine_distance(a, b) - want).abs() / want < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn radius_query_equals_linear_scan(
        seed in 0u64..1_000_000,
        n in 1usize..=1000,
        eps_km in 0.05..8.0f64,
        which in 0usize..3,
        grid in any::<bool>(),
    ) {
        let points = common::mixed_density(seed, n);
        let (metric, eps) = common::metric_for(which as u64, eps_km);
        let index = if grid {
            SpatialIndex::build_for_radius(&points, metric, eps).unwrap()
        } else {
            SpatialIndex::build(&points, metric).unwrap()
        };
        let center = points[seed as usize % n];
        let got = index.radius_query(center, eps).unwrap();
        let want: Vec<usize> = (0..n).filter(|&j| metric.distance(center, points[j]) <= eps).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn dbscan_labels_survive_translation(
        seed in 0u64..1_000_000,
        dlat in -0.1..0.1f64,
        dlon in -0.1..0.1f64,
        min_pts in 2usize..6,
    ) {
        let points = common::mixed_density(seed, 150);
        let shifted: Vec<GeoPoint> = points
            .iter()
            .map(|p| GeoPoint::new(p.lat() + dlat, p.lon() + dlon).unwrap())
            .collect();
        // Re-referencing rescales east-west offsets by cos(33 + dlat)/cos(33),
        // so only datasets with no pairwise distance that close to eps are
        // guaranteed to keep their labels.
        let eps = 1.0 + (seed % 7) as f64 * 0.25;
        let before = DistanceMetric::equirectangular(33.0).unwrap();
        let after = DistanceMetric::equirectangular(33.0 + dlat).unwrap();
        let distortion = ((33.0 + dlat).to_radians().cos() / 33f64.to_radians().cos() - 1.0).abs();
        let margin = 2.0 * distortion * eps + 1e-6;
        let mut gap = f64::INFINITY;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                gap = gap.min((before.distance(points[i], points[j]) - eps).abs());
            }
        }
        prop_assume!(gap > margin);
        let a = dbscan(&SpatialIndex::build(&points, before).unwrap(), &DbscanParams::new(eps, min_pts)).unwrap();
        let b = dbscan(&SpatialIndex::build(&shifted, after).unwrap(), &DbscanParams::new(eps, min_pts)).unwrap();
        prop_assert_eq!(a.labels, b.labels);
    }
}
