mod common;

use epiclust::clustering::{dbscan, ClusterAssignment, DbscanParams, Label};
use epiclust::evaluation::{
    adjusted_rand_index, adjusted_rand_index_with, compare_algorithms, float_grid, sensitivity_sweep, silhouette,
    tehsil_breakdown, Algorithm, ComparisonParams, NoiseHandling,
};
use epiclust::geo::{DistanceMetric, GeoPoint, SpatialIndex};
use epiclust::ingestion::{generate_synthetic, locations, CaseRecord, SynthConfig};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn labels(v: &[i64]) -> Vec<Label> {
    v.iter()
        .map(|&x| if x < 0 { Label::Noise } else { Label::Cluster(x as usize) })
        .collect()
}

fn label_vec(max_label: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1..=max_label, 2..60)
}

fn assignment(labels: Vec<Label>) -> ClusterAssignment {
    ClusterAssignment::from_labels(epiclust::clustering::canonicalize(&labels), 0, true).unwrap()
}

#[test]
fn ari_hand_example_matches_pair_counting() {
    let a = labels(&[0, 0, 0, 1, 1, 1]);
    let b = labels(&[0, 0, 1, 1, 2, 2]);
    let oracle = common::pair_counting_ari(&a, &b);
    assert!((oracle - 8.0 / 33.0).abs() < 1e-15);
    assert!((adjusted_rand_index(&a, &b).unwrap() - oracle).abs() < 1e-12);
}

#[test]
fn ari_rejects_length_mismatch() {
    assert!(adjusted_rand_index(&labels(&[0, 1]), &labels(&[0])).is_err());
}

#[test]
fn noise_exclusion_drops_points() {
    let a = labels(&[0, 0, 1, 1, -1, -1]);
    let b = labels(&[0, 0, 1, 1, 0, 1]);
    assert_eq!(adjusted_rand_index_with(&a, &b, NoiseHandling::Exclude).unwrap(), 1.0);
    assert!(adjusted_rand_index(&a, &b).unwrap() < 1.0);
}

proptest! {
    #[test]
    fn ari_agrees_with_pair_counting(x in label_vec(4), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let y: Vec<i64> = x.iter().map(|_| rng.gen_range(-1..4)).collect();
        let (a, b) = (labels(&x), labels(&y));
        let got = adjusted_rand_index(&a, &b).unwrap();
        prop_assert!((got - common::pair_counting_ari(&a, &b)).abs() < 1e-9);
        prop_assert!(got <= 1.0 + 1e-12);
        prop_assert_eq!(got, adjusted_rand_index(&b, &a).unwrap());
    }

    #[test]
    fn ari_ignores_relabelling(x in label_vec(5), y in label_vec(5), shift in 1usize..7) {
        let n = x.len().min(y.len());
        let (a, b) = (labels(&x[..n]), labels(&y[..n]));
        let permuted: Vec<Label> = a
            .iter()
            .map(|l| match l {
                Label::Cluster(c) => Label::Cluster((c + shift) % 6 + 10),
                Label::Noise => Label::Noise,
            })
            .collect();
        prop_assert_eq!(adjusted_rand_index(&a, &b).unwrap(), adjusted_rand_index(&permuted, &b).unwrap());
        prop_assert_eq!(adjusted_rand_index(&a, &permuted).unwrap(), 1.0);
    }

    #[test]
    fn silhouette_matches_brute_force(seed in 0u64..100_000, n in 2usize..80, k in 1i64..5) {
        let points = common::mixed_density(seed, n);
        let mut rng = StdRng::seed_from_u64(seed);
        let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..k)).collect();
        let a = assignment(labels(&raw));
        let metric = DistanceMetric::Haversine;
        let got = silhouette(&points, &a, metric).unwrap();
        let want = common::brute_silhouette(&points, &a.labels, metric);
        prop_assert_eq!(got.is_some(), want.is_some());
        if let (Some(g), Some(w)) = (got, want) {
            prop_assert!((g - w).abs() < 1e-12, "{} vs {}", g, w);
            prop_assert!((-1.0..=1.0).contains(&g));
        }
    }

    #[test]
    fn breakdown_percentages_sum_to_about_100(groups in prop::collection::vec(1usize..40, 1..8)) {
        let p = GeoPoint::new(33.0, 73.5).unwrap();
        let cases: Vec<CaseRecord> = groups
            .iter()
            .enumerate()
            .flat_map(|(g, &count)| (0..count).map(move |i| CaseRecord::new(format!("{g}-{i}"), p, format!("t{g}"))))
            .collect();
        let b = tehsil_breakdown(&cases);
        let total: u32 = b.rows.iter().map(|r| r.percent.unwrap()).sum();
        prop_assert!((100 - groups.len() as i64..=100 + groups.len() as i64).contains(&(total as i64)));
        prop_assert_eq!(b.total, cases.len());
    }
}

#[test]
fn silhouette_of_separated_blobs_is_high() {
    let (points, truth) = common::blobs(5, &[(33.0, 73.0), (33.0, 74.0737)], 40, 0.5);
    let a = assignment(truth);
    let s = silhouette(&points, &a, DistanceMetric::Haversine).unwrap().unwrap();
    assert!(s > 0.9, "{s}");
    assert_eq!(Some(s), common::brute_silhouette(&points, &a.labels, DistanceMetric::Haversine));
}

#[test]
fn silhouette_of_random_labels_is_near_zero() {
    for seed in 0..20 {
        let mut rng = StdRng::seed_from_u64(seed);
        let points: Vec<GeoPoint> = (0..120)
            .map(|_| common::offset(33.0, 73.5, rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0)))
            .collect();
        let raw: Vec<i64> = (0..120).map(|_| rng.gen_range(0..3)).collect();
        let a = assignment(labels(&raw));
        let s = silhouette(&points, &a, DistanceMetric::Haversine).unwrap().unwrap();
        assert!(s.abs() < 0.2, "seed {seed}: {s}");
    }
}

#[test]
fn breakdown_of_single_and_empty_inputs() {
    let p = GeoPoint::new(33.0, 73.5).unwrap();
    let one = tehsil_breakdown(&[CaseRecord::new("a", p, "Dina")]);
    assert_eq!(one.percent_of("Dina"), Some(100));
    assert_eq!(one.percent_of("Jhelum"), Some(0));
    let none = tehsil_breakdown(&[]);
    assert_eq!(none.total, 0);
    assert_eq!(none.percent_of("Dina"), None);
}

#[test]
fn sweep_rows_cover_grid_and_record_bad_entries() {
    let points = common::mixed_density(4, 120);
    let index = SpatialIndex::build(&points, DistanceMetric::Haversine).unwrap();
    let eps = float_grid(0.5, 2.0, 0.5).unwrap();
    assert_eq!(eps, vec![0.5, 1.0, 1.5, 2.0]);
    let mut grid = eps.clone();
    grid.push(-1.0);
    let sweep = sensitivity_sweep(&index, DbscanParams::new(1.0, 3), &grid, &[3, 5]).unwrap();
    assert_eq!(sweep.rows.len(), 10);
    let baseline = sweep.rows.iter().find(|r| r.eps == 1.0 && r.min_pts == 3).unwrap();
    assert_eq!(baseline.outcome.as_ref().unwrap().ari_vs_baseline, 1.0);
    assert_eq!(sweep.rows.iter().filter(|r| r.outcome.is_err()).count(), 2);
    let csv = sweep.to_csv().unwrap();
    assert!(csv.starts_with("eps_km,min_pts,status,num_clusters,noise_fraction,ari_vs_baseline\n"));
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn degenerate_comparison() {
    let cases: Vec<CaseRecord> = [(33.0, 73.0), (33.5, 73.5), (32.5, 74.0)]
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| CaseRecord::new(format!("c{i}"), GeoPoint::new(a, b).unwrap(), "x"))
        .collect();
    let report = compare_algorithms(&cases, &ComparisonParams::new(3, 0.001, 2, 1), DistanceMetric::Haversine).unwrap();
    for algo in [Algorithm::KMeans, Algorithm::KMedoids] {
        assert_eq!(report.run(algo).assignment().unwrap().cluster_sizes(), vec![1, 1, 1]);
    }
    for algo in [Algorithm::Dbscan, Algorithm::Optics] {
        assert_eq!(report.run(algo).assignment().unwrap().noise_count(), 3);
    }
}

#[test]
fn comparison_records_failures_without_aborting() {
    let cases = generate_synthetic(&SynthConfig::district_default()).unwrap();
    let report = compare_algorithms(&cases, &ComparisonParams::new(500, 1.5, 3, 1), DistanceMetric::Haversine).unwrap();
    assert_eq!(report.failures(), 2);
    assert!(report.run(Algorithm::Dbscan).assignment().is_some());
    assert_eq!(report.ari_between(Algorithm::KMeans, Algorithm::Dbscan), None);
}

#[test]
fn comparison_report_invariants_and_determinism() {
    let config = SynthConfig::district_default();
    let cases = generate_synthetic(&config).unwrap();
    let params = ComparisonParams::new(3, 1.5, 3, config.seed);
    let a = compare_algorithms(&cases, &params, DistanceMetric::Haversine).unwrap();
    let b = compare_algorithms(&cases, &params, DistanceMetric::Haversine).unwrap();
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    for i in 0..4 {
        assert_eq!(a.ari[i][i], Some(1.0));
        for j in 0..4 {
            assert_eq!(a.ari[i][j], a.ari[j][i]);
        }
        let s = a.runs[i].summary().unwrap();
        assert!((0.0..=1.0).contains(&s.noise_fraction));
    }
    let db = a.run(Algorithm::Dbscan).summary().unwrap();
    assert!(db.num_clusters >= 4);
    assert_eq!(a.run(Algorithm::KMeans).summary().unwrap().num_clusters, 3);
    // The report runs the same DBSCAN as a direct call.
    let index = SpatialIndex::build(&locations(&cases), DistanceMetric::Haversine).unwrap();
    let direct = dbscan(&index, &DbscanParams::new(1.5, 3)).unwrap();
    assert_eq!(direct.labels, a.run(Algorithm::Dbscan).assignment().unwrap().labels);
}

#[test]
fn blob_planting_is_recovered_by_both_centroid_methods() {
    let (points, _) = common::blobs(9, &[(33.0, 73.0), (33.0, 73.5366), (33.45, 73.27)], 30, 1.0);
    let cases: Vec<CaseRecord> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| CaseRecord::new(format!("c{i}"), p, "x"))
        .collect();
    let report = compare_algorithms(&cases, &ComparisonParams::new(3, 3.0, 4, 9), DistanceMetric::Haversine).unwrap();
    assert_eq!(report.ari_between(Algorithm::KMeans, Algorithm::KMedoids), Some(1.0));
}
