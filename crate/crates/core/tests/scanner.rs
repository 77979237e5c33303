use proptest::prelude::*;
use sususy::beta_ode::InitialPoint;
use sususy::scanner::{classify_point, scan_region, threshold_bisect, Direction, RegionMap};
use sususy::ScanConfig;

fn small(n_beta: usize, n_dbeta: usize) -> ScanConfig {
    ScanConfig {
        beta_min: -0.9,
        beta_max: -0.3,
        dbeta_min: -4.0,
        dbeta_max: 1.0,
        n_beta,
        n_dbeta,
        ..ScanConfig::default()
    }
}

fn regular(beta0: f64, dbeta0: f64, cfg: &ScanConfig) -> bool {
    classify_point(InitialPoint::new(beta0, dbeta0), cfg).unwrap().is_regular()
}

fn assert_brackets_valid(map: &RegionMap) {
    let cfg = &map.config;
    let tol = cfg.bisect_tol;
    for col in &map.thresholds {
        let Some((lo, hi)) = col.bracket() else { continue };
        let b = col.beta0;
        assert!(regular(b, hi - tol, cfg) && !regular(b, hi + tol, cfg), "upper bracket at β(0) = {b}");
        assert!(regular(b, lo + tol, cfg) && !regular(b, lo - tol, cfg), "lower bracket at β(0) = {b}");
    }
}

#[test]
fn small_scan_brackets_are_valid() {
    let map = scan_region(&small(3, 10)).unwrap();
    assert!(map.thresholds.iter().all(|c| c.bracket().is_some()));
    assert_brackets_valid(&map);
}

#[test]
fn thresholds_contain_the_curve() {
    let map = scan_region(&small(3, 10)).unwrap();
    for col in &map.thresholds {
        let (lo, hi) = col.bracket().unwrap();
        let c = col.curve_dbeta0.unwrap();
        assert!(lo < c && c < hi, "{lo} < {c} < {hi}");
    }
}

#[test]
fn refinement_keeps_shared_cell_labels_and_thresholds() {
    let coarse = scan_region(&small(3, 10)).unwrap();
    let fine = scan_region(&small(3, 30)).unwrap();
    for i in 0..3 {
        for j in 0..10 {
            let a = coarse.cell(i, j).unwrap();
            let b = fine.cell(i, 3 * j + 1).unwrap();
            assert!((a.dbeta0 - b.dbeta0).abs() < 1e-12);
            assert_eq!(a.class.is_regular(), b.class.is_regular(), "cell ({i}, {j})");
        }
        let (l0, u0) = coarse.thresholds[i].bracket().unwrap();
        let (l1, u1) = fine.thresholds[i].bracket().unwrap();
        let tol = 2.0 * coarse.config.bisect_tol;
        assert!((l0 - l1).abs() <= tol && (u0 - u1).abs() <= tol);
    }
}

#[test]
fn scan_is_deterministic_across_worker_counts() {
    let one = scan_region(&ScanConfig { jobs: 1, ..small(3, 8) }).unwrap();
    let two = scan_region(&ScanConfig { jobs: 2, ..small(3, 8) }).unwrap();
    let again = scan_region(&ScanConfig { jobs: 2, ..small(3, 8) }).unwrap();
    assert_eq!(one.to_csv(), two.to_csv());
    assert_eq!(two.to_csv(), again.to_csv());
    assert_eq!(one.to_json(), two.to_json());
}

#[test]
fn zero_column_is_flagged_as_pinched() {
    let cfg = ScanConfig { beta_min: -0.1, beta_max: 0.1, n_beta: 1, n_dbeta: 4, ..ScanConfig::default() };
    let map = scan_region(&cfg).unwrap();
    assert!(map.thresholds[0].pinched);
    assert!(map.thresholds[0].bracket().is_none());
    assert!(!map.warnings.is_empty());
}

#[test]
fn bisection_lands_within_tolerance_of_the_boundary() {
    let cfg = ScanConfig::default();
    let t = threshold_bisect(-0.5, Direction::Up, &cfg).unwrap();
    assert!(t.width() <= cfg.bisect_tol);
    assert!(regular(-0.5, t.regular_side, &cfg));
    assert!(!regular(-0.5, t.singular_side, &cfg));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn curve_points_classify_regular(beta0 in -1.0f64..=1.0) {
        let p = InitialPoint::on_curve(beta0).unwrap();
        prop_assert!(classify_point(p, &ScanConfig::default()).unwrap().is_regular());
    }
}
