use std::f64::consts::{FRAC_PI_2, PI, TAU};

use ovalsweep::analysis::{
    check_sweep_reduction, lower_bound_half_perimeter, lower_bound_integral,
};
use ovalsweep::corpus::random_convex_polygon;
use ovalsweep::enclosure::{min_parallelogram, min_rectangle};
use ovalsweep::geom::{convex_hull, Angle, ConvexRegion, Point2};
use ovalsweep::sweep::{
    apply_sweep, displacement_hull, plan_best_fan, plan_parallelogram_2sweep,
    plan_rectangle_2sweep, simulate, Sweep, SweepError,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn polygon() -> impl Strategy<Value = ConvexRegion> {
    any::<u64>().prop_map(|seed| random_convex_polygon(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn point_cloud() -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 1..60)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point2::new(x, y)).collect())
}

fn angle() -> impl Strategy<Value = Angle> {
    (0.0..TAU).prop_map(Angle::from_radians)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hull_is_idempotent(points in point_cloud()) {
        let h = convex_hull(&points).unwrap();
        prop_assert_eq!(convex_hull(h.vertices()).unwrap(), h.clone());
        for p in &points {
            prop_assert!(h.contains(*p, 1e-9));
        }
    }

    #[test]
    fn support_shifts_under_translation(r in polygon(), t in angle(), dx in -5.0..5.0f64, dy in -5.0..5.0f64) {
        let d = Point2::new(dx, dy);
        let moved = r.translate(d);
        prop_assert!(close(moved.support(t), r.support(t) + d.dot(t.unit()), 1e-12));
        prop_assert!(close(moved.width(t), r.width(t), 1e-12));
    }

    #[test]
    fn width_has_period_pi(r in polygon(), t in angle()) {
        prop_assert!(close(r.width(t), r.width(t + PI), 1e-12));
        prop_assert!(close(r.width(t), r.support(t) + r.support(t + PI), 1e-12));
    }

    #[test]
    fn enclosures_are_rigid_motion_invariant(r in polygon(), psi in 0.0..TAU, k in 0.2..5.0f64) {
        let rect = min_rectangle(&r).semiperimeter();
        let para = min_parallelogram(&r).unwrap().semiperimeter();
        let turned = r.rotate(psi);
        prop_assert!(close(min_rectangle(&turned).semiperimeter(), rect, 1e-9));
        prop_assert!(close(min_parallelogram(&turned).unwrap().semiperimeter(), para, 1e-9));
        let scaled = r.scale(k);
        prop_assert!(close(min_rectangle(&scaled).semiperimeter(), k * rect, 1e-9));
        prop_assert!(close(min_parallelogram(&scaled).unwrap().semiperimeter(), k * para, 1e-9));
    }

    #[test]
    fn enclosures_contain_region_and_parallelogram_dominates(r in polygon()) {
        let rect = min_rectangle(&r);
        let para = min_parallelogram(&r).unwrap();
        prop_assert!(para.semiperimeter() <= rect.semiperimeter() + 1e-12);
        for shape in [rect.shape.as_parallelogram(), para.shape.as_parallelogram()] {
            for p in r.vertices() {
                prop_assert!(shape.contains(*p, 1e-9));
            }
        }
    }

    #[test]
    fn plans_respect_lower_bound_and_four_over_pi(r in polygon()) {
        let lb = lower_bound_half_perimeter(&r);
        let rect = plan_rectangle_2sweep(&r);
        prop_assert!(rect.planned_cost <= 2.0 / PI * r.perimeter() + 1e-6);
        for plan in [rect, plan_parallelogram_2sweep(&r).unwrap(), plan_best_fan(&r).unwrap()] {
            prop_assert!(plan.planned_cost >= lb - 1e-6);
            let sim = simulate(&r, &plan).unwrap();
            prop_assert!(sim.reached_point());
            prop_assert!(sim.final_point.unwrap().distance(plan.target.unwrap()) <= 1e-9);
            for w in sim.states.windows(2) {
                prop_assert!(w[1].area() <= w[0].area() + 1e-9);
            }
        }
    }

    #[test]
    fn quadrature_agrees_with_half_perimeter(r in polygon()) {
        let q = lower_bound_integral(&r, 3600).unwrap();
        prop_assert!((q - lower_bound_half_perimeter(&r)).abs() <= 1e-5 * r.perimeter());
    }

    /// A sweep starting on a supporting line, with an arbitrary vector.
    #[test]
    fn random_sweeps_stay_inside_and_obey_reduction_bound(
        r in polygon(),
        line in 0.0..PI,
        heading in 0.05..PI - 0.05,
        len in 0.01..3.0f64,
    ) {
        let line = Angle::from_radians(line);
        let n = (line + FRAC_PI_2).unit();
        // heading measured from the line, so the vector always moves forward
        let v = (line + heading).unit() * len;
        let (lo, _) = r.projection_range(n);
        let sweep = Sweep::through(n * lo, line, v);
        match apply_sweep(&r, &sweep) {
            Ok(next) => {
                let bound = displacement_hull(&r, v);
                for p in next.vertices() {
                    prop_assert!(bound.contains(*p, 1e-9));
                }
                prop_assert!(next.area() <= r.area() + 1e-9);
                prop_assert!(check_sweep_reduction(&r, &sweep, 360).unwrap() <= 1e-9);
            }
            Err(e) => prop_assert!(matches!(e, SweepError::NonConvex { .. }), "{e}"),
        }
    }

    #[test]
    fn polygon_json_round_trip(r in polygon()) {
        let text = serde_json::to_string(&r).unwrap();
        let back: ConvexRegion = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.vertices(), r.vertices());
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
