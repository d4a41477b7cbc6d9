use optishape_core::optimize::{bisect_boundary, central_diff, golden_section_min, GoldenSection};
use optishape_core::problems::{self, FenceLayout, NUMERIC_REL_TOL};
use optishape_core::verify::{self, Suite};
use optishape_core::{oracle, Shape};
use proptest::prelude::*;
use proptest::test_runner::FileFailurePersistence;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn golden_section_recovers_random_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let t: f64 = rng.gen_range(-10.0..10.0);
        let sol = golden_section_min(|x| (x - t).powi(2), -10.0, 10.0, 1e-10).unwrap();
        assert!(
            (sol.argmin - t).abs() <= 1e-10,
            "t = {t}, got {}",
            sol.argmin
        );
        assert!(sol.achieved_interval <= 1e-10);
        assert!(sol.evaluations >= 1);
    }
}

fn any_base() -> impl Strategy<Value = Shape> {
    prop_oneof![
        Just(Shape::Circle),
        (3u32..=128).prop_map(Shape::RegularPolygon)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: Some(Box::new(FileFailurePersistence::WithSource("regressions"))),
        ..ProptestConfig::default()
    })]

    #[test]
    fn golden_section_is_bit_deterministic(t in -5.0f64..5.0, w in 0.1f64..3.0) {
        let f = |x: f64| (x - t).powi(2) * w + (x * 0.1).cos();
        let a = GoldenSection::default().minimize(f, -6.0, 6.0).unwrap();
        let b = GoldenSection::default().minimize(f, -6.0, 6.0).unwrap();
        prop_assert_eq!(a.argmin.to_bits(), b.argmin.to_bits());
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn bisection_brackets_the_switch(x0 in -100.0f64..100.0, tol in 1e-12f64..1e-3) {
        let x = bisect_boundary(|x| x <= x0, -101.0, 101.0, tol).unwrap();
        prop_assert!(x - 2.0 * tol <= x0);
        prop_assert!(x + 2.0 * tol > x0);
    }

    #[test]
    fn central_diff_exact_on_quadratics(a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0, x in -50.0f64..50.0) {
        let h = 1e-6 * x.abs().max(1.0);
        let d = central_diff(|x| a * x * x + b * x + c, x, h);
        let exact = 2.0 * a * x + b;
        // relative error, plus the rounding noise of f divided by the step
        let fmax = a.abs() * (x.abs() + h).powi(2) + b.abs() * (x.abs() + h) + c.abs();
        let allowed = 1e-9 * exact.abs() + 4.0 * f64::EPSILON * fmax / h;
        prop_assert!((d - exact).abs() <= allowed, "{} vs {}", d, exact);
    }

    #[test]
    fn half_split_for_any_layout(total in 1.0f64..1e6, v in 2u32..=50, h in 2u32..=50) {
        let sol = problems::solve_fence(total, FenceLayout::new(v, h).unwrap()).unwrap();
        prop_assert!((sol.vertical_total - total / 2.0).abs() <= 1e-9 * total);
        prop_assert!((sol.horizontal_total - total / 2.0).abs() <= 1e-9 * total);
        prop_assert!((sol.vertical_total + sol.horizontal_total - total).abs() <= 1e-9 * total);
    }

    #[test]
    fn can_has_h_equal_2r(base in any_base(), log_v in -3.0f64..6.0) {
        let v = 10f64.powf(log_v);
        let sol = problems::solve_can(v, base).unwrap();
        prop_assert!((sol.h / sol.r - 2.0).abs() <= 1e-6);
        let c = optishape_core::geometry::area_coefficient(base).unwrap();
        prop_assert!((sol.volume - c * sol.r * sol.r * sol.h).abs() <= 1e-12 * sol.volume);
        let sa = 2.0 * c * sol.r * sol.r + 2.0 * c * sol.r * sol.h;
        prop_assert!((sol.surface_area - sa).abs() <= 1e-12 * sa);
        let dual = problems::solve_can_dual(sol.surface_area, base).unwrap();
        prop_assert!((dual.volume - v).abs() <= 1e-6 * v);
    }

    #[test]
    fn can_scaling(base in any_base(), log_v in -3.0f64..6.0, k in prop::sample::select(vec![0.5, 2.0, 10.0])) {
        let v = 10f64.powf(log_v);
        let small = problems::solve_can(v, base).unwrap();
        let big = problems::solve_can(k * k * k * v, base).unwrap();
        prop_assert!((big.r - k * small.r).abs() <= 1e-9 * k * small.r);
    }

    #[test]
    fn can_numeric_matches_closed_form(base in any_base(), log_v in -3.0f64..6.0) {
        let v = 10f64.powf(log_v);
        let closed = problems::solve_can(v, base).unwrap();
        let num = problems::solve_can_numeric(v, base, NUMERIC_REL_TOL).unwrap();
        prop_assert!((num.r - closed.r).abs() <= 1e-6 * closed.r.max(1.0));
    }
}

#[test]
fn oracle_agrees_on_random_cans() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let v = 10f64.powf(rng.gen_range(-2.0..4.0));
        let base = Shape::RegularPolygon(rng.gen_range(3..=40));
        let closed = problems::solve_can(v, base).unwrap();
        let brute = oracle::can(v, base).unwrap();
        assert!(
            (closed.r - brute.argmin).abs() <= 4.0 * brute.resolution,
            "{base} V = {v}: {brute:?}"
        );
    }
}

#[test]
fn oracle_agrees_on_random_fences() {
    for (total, layout) in verify::random_fences(20, 3) {
        let closed = problems::solve_fence(total, layout).unwrap();
        let brute = oracle::fence(total, layout.v_segments, layout.h_segments).unwrap();
        assert!(
            (closed.vertical_total - brute.argmin).abs() <= 4.0 * brute.resolution,
            "F = {total}: {brute:?}"
        );
    }
}

#[test]
fn box_oracle_thousand() {
    let closed = problems::solve_box(1000.0).unwrap();
    let brute = oracle::cuboid(1000.0, 2000).unwrap();
    assert!(
        (closed.x - brute.x).abs() <= 4.0 * brute.resolution_x,
        "{brute:?}"
    );
    assert!(
        (closed.y - brute.y).abs() <= 4.0 * brute.resolution_y,
        "{brute:?}"
    );
    assert!((brute.value - 600.0).abs() <= 1e-9);
}

#[test]
fn every_suite_passes() {
    for suite in Suite::ALL {
        let checks = suite.run().unwrap();
        assert!(!checks.is_empty());
        for check in checks {
            println!(
                "{:<12} {:<70} worst {:.3e} (tol {:.0e})",
                check.suite, check.name, check.worst, check.tolerance
            );
            assert!(check.passed(), "{check:?}");
            assert!(check.cases > 0);
        }
    }
}
