use essnorm::convex_bounds::{
    beta, convex_lower_bound, dbar_star_constant, neumann_constant, neumann_from_dbar_star, ConvexDomainSpec,
    Polydisc,
};
use essnorm::geometry::{shoelace, Point};
use essnorm::hankel_oracle::{bessel_j0_first_zero, hankel_disc_eigenvalue, hankel_disc_eigenvalue_exact};
use essnorm::torsion::{alpha_numeric, rayleigh_quotient, solve_torsion, GridField};
use essnorm::worm_bounds::{annulus_consistency, worm_lower_bound, worm_objective, WormParams};
use essnorm::PlanarDomain;
use num_rational::Ratio;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Convex polygon with vertices on an ellipse at sorted random angles.
fn convex_polygon() -> impl Strategy<Value = Vec<Point<f64>>> {
    (prop::collection::vec(0.0..1.0f64, 3..9), 0.5..2.0f64, 0.5..2.0f64).prop_filter_map(
        "degenerate polygon",
        |(mut ts, a, b)| {
            ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
            ts.dedup_by(|x, y| (*x - *y).abs() < 0.02);
            if ts.len() < 3 || (ts[0] + 1.0 - ts[ts.len() - 1]) < 0.02 {
                return None;
            }
            let pts: Vec<_> = ts.iter().map(|t| Point::new(a * (2.0 * PI * t).cos(), b * (2.0 * PI * t).sin())).collect();
            (shoelace(&pts) > 0.05).then_some(pts)
        },
    )
}

proptest! {
    #[test]
    fn signed_distance_sign_matches_containment(
        pts in convex_polygon(),
        x in -2.5..2.5f64,
        y in -2.5..2.5f64,
    ) {
        let d = PlanarDomain::polygon(pts).unwrap();
        let p = Point::new(x, y);
        let phi = d.signed_distance(p);
        prop_assume!(phi.abs() > 1e-9);
        prop_assert_eq!(phi < 0.0, d.contains(p));
    }

    #[test]
    fn shoelace_is_invariant_under_cyclic_shift(pts in convex_polygon(), shift in 0usize..8) {
        let mut rotated = pts.clone();
        let k = shift % pts.len();
        rotated.rotate_left(k);
        prop_assert!((shoelace(&pts) - shoelace(&rotated)).abs() <= 1e-12 * shoelace(&pts).abs());
        let d = PlanarDomain::polygon(pts.clone()).unwrap();
        prop_assert!((d.area() - shoelace(&pts)).abs() <= 1e-12 * d.area());
    }

    #[test]
    fn polygon_area_scales_quadratically(pts in convex_polygon(), lambda in 0.25..4.0f64) {
        let d = PlanarDomain::polygon(pts).unwrap();
        let s = d.scaled(lambda).unwrap();
        prop_assert!((s.area() - lambda * lambda * d.area()).abs() <= 1e-12 * s.area());
    }

    #[test]
    fn beta_scales_with_power_q_plus_one(radii in prop::collection::vec(0.1..5.0f64, 1..6), lambda in 0.1..10.0f64) {
        let q = radii.len() as i32;
        let scaled: Vec<_> = radii.iter().map(|r| lambda * r).collect();
        let lhs = beta(&scaled).unwrap();
        let rhs = lambda.powi(q + 1) * beta(&radii).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn beta_is_monotone_in_each_radius(
        radii in prop::collection::vec(0.0..5.0f64, 1..6),
        index in 0usize..6,
        bump in 0.0..2.0f64,
    ) {
        let mut bigger = radii.clone();
        let k = index % radii.len();
        bigger[k] += bump;
        prop_assert!(beta(&bigger).unwrap() >= beta(&radii).unwrap() * (1.0 - 1e-14));
    }

    #[test]
    fn constant_square_identity(n in 2u32..=10, q_off in 0u32..9) {
        let q = 1 + q_off % (n - 1);
        let c: f64 = dbar_star_constant(n, q).unwrap();
        let big: f64 = neumann_constant(n, q).unwrap();
        prop_assert!((c * c - big).abs() <= 1e-12 * big);
    }

    #[test]
    fn convex_bound_monotone_in_diameter_and_radius(
        tau in 0.5..5.0f64,
        tau_gain in 0.0..3.0f64,
        r in 0.1..2.0f64,
        r_gain in 0.0..1.0f64,
        alpha in 0.1..2.0f64,
        alpha_gain in 0.0..1.0f64,
    ) {
        let spec = |tau: f64, r: f64, a: f64| {
            let p = Polydisc::new(vec![[0.0, 0.0]], vec![r]).unwrap();
            ConvexDomainSpec::new(2, 1, tau, vec![p], vec![a], true).unwrap()
        };
        let base = convex_lower_bound(&spec(tau, r, alpha), 1).unwrap().value;
        let wider = convex_lower_bound(&spec(tau + tau_gain, r, alpha), 1).unwrap().value;
        let bigger = convex_lower_bound(&spec(tau, r + r_gain, alpha + alpha_gain), 1).unwrap().value;
        prop_assert!(base >= 0.0);
        prop_assert!(wider <= base * (1.0 + 1e-14));
        prop_assert!(bigger >= base * (1.0 - 1e-14));
    }

    #[test]
    fn range_formula_is_monotone(a in 0.0..2.0f64, b in 0.0..2.0f64, da in 0.0..1.0f64, db in 0.0..1.0f64) {
        let lo = neumann_from_dbar_star(a, b).unwrap();
        let hi = neumann_from_dbar_star(a + da, b + db).unwrap();
        prop_assert!(lo <= hi);
    }

    #[test]
    fn worm_objective_strictly_decreasing_in_beta(eta in 1.001..20.0f64, b1 in 0.01..2.0f64, gap in 0.01..1.0f64) {
        let b2 = b1 + gap;
        prop_assume!(2.0 * b2 * eta.ln() < PI);
        prop_assert!(worm_objective(eta, b2).unwrap() < worm_objective(eta, b1).unwrap());
    }

    #[test]
    fn worm_bound_monotone_in_beta_and_r(beta_lo in 0.1..3.0f64, gap in 0.0..1.0f64, r in 1.1..8.0f64, r_gain in 0.0..4.0f64) {
        let base = worm_lower_bound(&WormParams::new(beta_lo, r).unwrap()).value;
        let steeper = worm_lower_bound(&WormParams::new(beta_lo + gap, r).unwrap()).value;
        let longer = worm_lower_bound(&WormParams::new(beta_lo, r + r_gain).unwrap()).value;
        prop_assert!(base >= 0.0);
        prop_assert!(steeper <= base + 1e-12);
        prop_assert!(longer >= base - 1e-12);
    }

    #[test]
    fn annulus_identity_holds(eta in 1.0001..20.0f64) {
        prop_assert!(annulus_consistency(eta).unwrap() < 1e-10);
    }

    #[test]
    fn hankel_eigenvalue_closed_form(j in 0i64..100_000) {
        let exact = hankel_disc_eigenvalue_exact(j).unwrap();
        prop_assert_eq!(exact, Ratio::new(1, i128::from((j + 1) * (j + 2))));
        let f: f64 = hankel_disc_eigenvalue(j).unwrap();
        let closed = 1.0 / ((j + 1) as f64 * (j + 2) as f64);
        prop_assert!((f - closed).abs() <= 1e-14 * closed);
    }

    #[test]
    fn hankel_partial_sums_telescope(n in 0i64..400) {
        let exact = (0..=n).map(|j| hankel_disc_eigenvalue_exact(j).unwrap()).fold(Ratio::from_integer(0), |a, b| a + b);
        prop_assert_eq!(exact, Ratio::new(i128::from(n + 1), i128::from(n + 2)));
        let float: f64 = (0..=n).map(|j| hankel_disc_eigenvalue::<f64>(j).unwrap()).sum();
        prop_assert!((float - (1.0 - 1.0 / (n as f64 + 2.0))).abs() < 1e-12);
    }

    #[test]
    fn bessel_zero_monotone_in_tolerance(e1 in 3.0..11.0f64, e2 in 3.0..11.0f64) {
        let (t1, t2) = (10f64.powf(-e1), 10f64.powf(-e2));
        let (loose, tight) = if t1 >= t2 { (t1, t2) } else { (t2, t1) };
        let a: f64 = bessel_j0_first_zero(loose).unwrap();
        let b: f64 = bessel_j0_first_zero(tight).unwrap();
        prop_assert!((a - b).abs() <= loose);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn torsion_field_is_nonnegative(pts in convex_polygon()) {
        let d = PlanarDomain::polygon(pts).unwrap();
        let f = solve_torsion(&d, d.diameter() / 48.0).unwrap();
        prop_assert!(f.field.values.iter().all(|v| *v >= 0.0));
        prop_assert!(f.integral_u > 0.0);
    }

    #[test]
    fn rayleigh_quotient_never_exceeds_alpha(
        pts in convex_polygon(),
        power in 1.0..3.0f64,
        tilt_x in -0.4..0.4f64,
        tilt_y in -0.4..0.4f64,
    ) {
        let d = PlanarDomain::polygon(pts).unwrap();
        let h = d.diameter() / 48.0;
        let est = alpha_numeric(&d, h, true).unwrap();
        let grid = est.field.field.grid;
        let chi = GridField::from_fn(grid, |p| {
            let depth = (-d.signed_distance(p)).max(0.0);
            depth.powf(power) * (1.0 + tilt_x * p.x + tilt_y * p.y)
        });
        let rq = rayleigh_quotient(&d, &chi).unwrap();
        prop_assert!(rq <= est.alpha + est.error_estimate, "{} > {} + {}", rq, est.alpha, est.error_estimate);
    }
}
