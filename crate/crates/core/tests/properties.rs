use hull_lil::func::{
    arc_length, area_a, bridge, convexify, gamma, majorant, random_bridge, random_nonneg_bridge, random_pl,
    symmetrize, Sign,
};
use hull_lil::geom::{
    ball_intrinsic_volumes_2d, convex_hull_2d, intrinsic_volumes_2d, parallel_body_area_2d,
    parallel_body_area_by_boundary, symmetric_difference_radius, Point2,
};
use hull_lil::lil::{estimate_limsup, Functional, LilSpec, Regime};
use hull_lil::walk::{
    centre_of_mass, generate_walk, interpolate, khinchin_ell, reduced_covariance, scale_psi, IncrementModel,
};
use hull_lil::{ConvexPolygon, PLFunction};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn point() -> impl Strategy<Value = Point2<f64>> {
    (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn cloud() -> impl Strategy<Value = Vec<Point2<f64>>> {
    prop::collection::vec(point(), 1..80)
}

/// A polygon that contains the origin in its interior.
fn around_origin() -> impl Strategy<Value = ConvexPolygon> {
    (prop::collection::vec(point(), 0..30), 1.0..20.0f64).prop_map(|(mut pts, r)| {
        pts.extend([Point2::new(r, 0.0), Point2::new(0.0, r), Point2::new(-r, 0.0), Point2::new(0.0, -r)]);
        convex_hull_2d(&pts).unwrap()
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_fn(seed: u64, cells: usize, g: f64) -> PLFunction {
    random_pl(&mut rng(seed), cells, g)
}

fn rand_bridge(seed: u64, cells: usize, g: f64) -> PLFunction {
    random_bridge(&mut rng(seed), cells, g)
}

fn planar_model(mu: [f64; 2]) -> IncrementModel {
    IncrementModel::gaussian(mu.to_vec(), DMatrix::identity(2, 2)).unwrap()
}

fn hull_area(points: &[Vec<f64>]) -> f64 {
    let pts: Vec<_> = points.iter().map(|p| Point2::new(p[0], p[1])).collect();
    convex_hull_2d(&pts).unwrap().area()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hull_contains_inputs_and_is_idempotent(pts in cloud()) {
        let hull = convex_hull_2d(&pts).unwrap();
        for p in &pts {
            prop_assert!(hull.contains(*p));
        }
        let again = convex_hull_2d(hull.vertices()).unwrap();
        prop_assert_eq!(again.vertices(), hull.vertices());
    }

    #[test]
    fn intrinsic_volumes_are_homogeneous(pts in cloud(), lambda in prop::sample::select(vec![0.5, 2.0, 7.0])) {
        let hull = convex_hull_2d(&pts).unwrap();
        let v = intrinsic_volumes_2d(&hull);
        let w = intrinsic_volumes_2d(&hull.scaled(lambda));
        for k in 0..=2 {
            prop_assert!(close(w.get(k), lambda.powi(k as i32) * v.get(k), 1e-12));
        }
    }

    #[test]
    fn steiner_formula_matches_boundary_construction(pts in cloud(), lambda in 0.0..50.0f64) {
        let hull = convex_hull_2d(&pts).unwrap();
        let steiner = parallel_body_area_2d(&hull, lambda).unwrap();
        let direct = parallel_body_area_by_boundary(&hull, lambda).unwrap();
        prop_assert!(close(steiner, direct, 1e-10), "{steiner} vs {direct}");
    }

    #[test]
    fn symmetric_difference_radius_controls_volumes(p in around_origin(), q in around_origin()) {
        let r = symmetric_difference_radius(&p, &q).unwrap();
        prop_assert!(r >= 0.0);
        prop_assert!(close(r, symmetric_difference_radius(&q, &p).unwrap(), 1e-12));
        prop_assert_eq!(symmetric_difference_radius(&p, &p).unwrap(), 0.0);
        let (vp, vq, ball) = (intrinsic_volumes_2d(&p), intrinsic_volumes_2d(&q), ball_intrinsic_volumes_2d(r));
        for k in 1..=2 {
            prop_assert!((vp.get(k) - vq.get(k)).abs() <= ball.get(k) * (1.0 + 1e-9) + 1e-9);
        }
    }

    #[test]
    fn bridge_removes_the_end_value_energy(seed: u64, cells in 2usize..200, g in 0.05..5.0f64) {
        let f = rand_fn(seed, cells, g);
        let b = bridge(&f).unwrap();
        prop_assert!(close(gamma(&b), gamma(&f) - f.end_value().powi(2), 1e-9));
        prop_assert_eq!(b.end_value(), 0.0);
    }

    #[test]
    fn symmetrization_keeps_energy_and_splits_area(seed: u64, cells in 2usize..200, g in 0.05..5.0f64) {
        let f = rand_bridge(seed, cells, g);
        let plus = symmetrize(&f, Sign::Plus).unwrap();
        let minus = symmetrize(&f, Sign::Minus).unwrap();
        let area = area_a(&f);
        prop_assert!(close(gamma(&plus), gamma(&f), 1e-9));
        prop_assert!(close(gamma(&minus), gamma(&f), 1e-9));
        prop_assert!(close(plus.integral() + minus.integral(), 2.0 * area, 1e-9));
        prop_assert!(area_a(&plus).max(area_a(&minus)) >= area - 1e-12);
    }

    #[test]
    fn convexify_keeps_area_and_lowers_energy(seed: u64, cells in 2usize..200, g in 0.05..5.0f64) {
        let f: PLFunction = random_nonneg_bridge(&mut rng(seed), cells, g);
        let c = convexify(&f).unwrap();
        prop_assert!(close(area_a(&c), area_a(&f), 1e-9));
        prop_assert!(gamma(&c) <= gamma(&f) * (1.0 + 1e-12));
    }

    #[test]
    fn isoperimetric_bounds(seed: u64, cells in 2usize..200, g in 0.05..5.0f64) {
        let b = rand_bridge(seed, cells, g);
        prop_assert!(b.integral() <= (gamma(&b) / 12.0).sqrt() + 1e-12);
        let f = rand_fn(seed, cells, g);
        prop_assert!(f.integral_between(0.0, 0.5) <= (f.gamma_between(0.0, 0.5) / 24.0).sqrt() + 1e-12);
    }

    #[test]
    fn arc_length_and_oscillation_bounds(seed: u64, cells in 2usize..200, g in 0.05..5.0f64, m in 0.0..10.0f64) {
        let f = rand_fn(seed, cells, g);
        let l = arc_length(&f);
        prop_assert!(l * l <= 1.0 + gamma(&f) + 1e-12);
        let (lo, hi) = f.values().iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        prop_assert!(m * (hi - lo) <= m * gamma(&f).sqrt() + 1e-12);
    }

    #[test]
    fn concave_nonnegative_bridges_have_area_equal_to_integral(seed: u64, cells in 2usize..200) {
        let f: PLFunction = random_nonneg_bridge(&mut rng(seed), cells, 1.0);
        let (m, _) = majorant(&f);
        prop_assert!(close(area_a(&m), m.integral(), 1e-12));
        prop_assert!(area_a(&f) <= m.integral() + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn centre_of_mass_stays_in_the_hull(seed: u64, n in 1usize..2000, mx in -2.0..2.0f64) {
        let path = generate_walk(&planar_model([mx, 0.5]), n, seed);
        let hull = convex_hull_2d(&path.points_2d().unwrap()).unwrap();
        for g in centre_of_mass(&path) {
            prop_assert!(hull.contains(Point2::new(g[0], g[1])));
        }
    }

    #[test]
    fn interpolation_does_not_change_the_hull(seed: u64, n in 1usize..300, refine in 1usize..4) {
        let path = generate_walk(&planar_model([0.3, 0.0]), n, seed);
        let m = n * refine;
        let pts: Vec<Vec<f64>> = (0..=m).map(|j| interpolate(&path, j as f64 / m as f64).unwrap()).collect();
        let direct = convex_hull_2d(&path.points_2d().unwrap()).unwrap().area();
        prop_assert!(close(hull_area(&pts), direct, 1e-9));
    }

    #[test]
    fn psi_scaling_divides_area_exactly(seed: u64, n in 3usize..5000, angle in 0.0..std::f64::consts::TAU) {
        let mu = [angle.cos(), angle.sin()];
        let path = generate_walk(&planar_model(mu), n, seed);
        let frame = reduced_covariance(&DMatrix::identity(2, 2), &mu).unwrap();
        let scaled = scale_psi(&path, &frame).unwrap();
        let original = convex_hull_2d(&path.points_2d().unwrap()).unwrap().area();
        let factor = n as f64 * khinchin_ell(n as u64);
        prop_assert!(close(hull_area(&scaled) * factor, original, 1e-9));
    }

    #[test]
    fn prefix_hulls_grow(seed: u64, n in 2usize..1500) {
        let path = generate_walk(&planar_model([0.0, 0.0]), n, seed);
        let pts = path.points_2d().unwrap();
        let mut last = (0.0, 0.0);
        for k in (1..=n).step_by(7) {
            let h = convex_hull_2d(&pts[..=k]).unwrap();
            let now = (h.area(), h.diameter());
            prop_assert!(now.0 >= last.0 - 1e-9 && now.1 >= last.1 - 1e-12);
            last = now;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn estimates_ignore_the_drift_direction(seed in 0u64..1000, angle in 0.0..std::f64::consts::TAU) {
        let checkpoints = [100, 400, 1000];
        let run = |mu: [f64; 2]| {
            let spec = LilSpec::new(Functional::Area, Regime::Drift, planar_model(mu)).unwrap();
            estimate_limsup(&spec, 1000, &checkpoints, 3, seed).unwrap()
        };
        let a = run([1.0, 0.0]);
        let b = run([angle.cos(), angle.sin()]);
        for (x, y) in a.merged_max().iter().zip(b.merged_max()) {
            prop_assert!(close(*x, *y, 1e-9));
        }
    }
}
