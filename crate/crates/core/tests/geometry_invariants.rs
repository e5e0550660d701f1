use std::f64::consts::PI;

use proptest::prelude::*;
use teich_core::surface::*;
use teich_core::Complex64;

fn point() -> impl Strategy<Value = HalfPlanePoint> {
    (-3.0..3.0f64, -2.0..1.5f64).prop_map(|(a, lb)| HalfPlanePoint::new(a, 10f64.powf(lb)).unwrap())
}

fn lamination() -> impl Strategy<Value = Lamination> {
    (0.0..PI, 0.1..5.0f64).prop_map(|(t, r)| Lamination::new(r * t.cos(), r * t.sin()).unwrap())
}

/// `½ log sup_θ Ext_y(u_θ)/Ext_x(u_θ)`, by dense search plus golden-section refinement.
fn kerckhoff_distance(x: &HalfPlanePoint, y: &HalfPlanePoint) -> f64 {
    let ratio = |t: f64| {
        let u = Lamination::unit(t);
        extremal_length(y, &u) / extremal_length(x, &u)
    };
    let n = 4096;
    let h = PI / n as f64;
    let best = (0..n).max_by(|&i, &j| ratio(i as f64 * h).total_cmp(&ratio(j as f64 * h))).unwrap();
    let (mut lo, mut hi) = ((best as f64 - 1.0) * h, (best as f64 + 1.0) * h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if ratio(m1) < ratio(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    0.5 * ratio(0.5 * (lo + hi)).ln()
}

#[test]
fn distance_matches_kerckhoff_oracle() {
    let x = HalfPlanePoint::i();
    let y = HalfPlanePoint::new(0.0, 1f64.exp().powi(2)).unwrap();
    assert!((kerckhoff_distance(&x, &y) - 1.0).abs() < 1e-12);
    let pairs = [((0.0, 1.0), (1.0, 1.0)), ((-2.0, 0.3), (1.5, 2.0)), ((0.4, 0.05), (0.41, 0.06))];
    for ((a1, b1), (a2, b2)) in pairs {
        let x = HalfPlanePoint::new(a1, b1).unwrap();
        let y = HalfPlanePoint::new(a2, b2).unwrap();
        let d = teich_distance(&x, &y);
        assert!((d - kerckhoff_distance(&x, &y)).abs() < 1e-10, "{d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn extremal_length_is_positive_and_two_homogeneous(x in point(), l in lamination(), t in 0.01..50.0f64) {
        let e = extremal_length(&x, &l);
        prop_assert!(e > 0.0);
        let scaled = extremal_length(&x, &l.scale(t).unwrap());
        prop_assert!((scaled - t * t * e).abs() <= 1e-12 * scaled);
    }

    #[test]
    fn intersection_is_symmetric_and_bilinear(l1 in lamination(), l2 in lamination(), s in 0.1..10.0f64, t in 0.1..10.0f64) {
        let i = intersection_number(&l1, &l2);
        prop_assert_eq!(i, intersection_number(&l2, &l1));
        let scaled = intersection_number(&l1.scale(s).unwrap(), &l2.scale(t).unwrap());
        prop_assert!((scaled - s * t * i).abs() <= 1e-12 * (1.0 + scaled));
        prop_assert!(intersection_number(&l1, &l1.scale(s).unwrap()) <= 1e-14 * s * l1.weight().powi(2));
    }

    #[test]
    fn intersection_vanishes_only_for_equal_directions(t1 in 0.0..PI, t2 in 0.0..PI) {
        let i = intersection_number(&Lamination::unit(t1), &Lamination::unit(t2));
        // |sin(t1 − t2)| for unit laminations
        prop_assert!((i - (t1 - t2).sin().abs()).abs() < 1e-15);
    }

    #[test]
    fn hm_differential_norm_is_extremal_length(x in point(), l in lamination(), t in 0.1..10.0f64) {
        let q = hm_differential(&x, &l);
        let e = extremal_length(&x, &l);
        prop_assert!((q.norm() - e).abs() <= 1e-12 * e);
        let qt = hm_differential(&x, &l.scale(t).unwrap());
        prop_assert!((qt.w() - q.w() * (t * t)).norm() <= 1e-12 * qt.w().norm());
    }

    #[test]
    fn hm_differential_and_vertical_lamination_are_inverse(x in point(), l in lamination()) {
        let v = vertical_lamination(&hm_differential(&x, &l));
        prop_assert!(v.approx_eq_up_to_sign(&l, 1e-10));
        prop_assert!((v.weight() - l.weight()).abs() <= 1e-10 * l.weight());
    }

    #[test]
    fn vertical_lamination_measures_every_curve(x in point(), re in -3.0..3.0f64, im in -3.0..3.0f64,
                                                 p in -20i32..20, q in -20i32..20) {
        prop_assume!(re.abs() + im.abs() > 1e-3 && (p, q) != (0, 0));
        let qd = QuadDifferential::new(x, Complex64::new(re, im)).unwrap();
        let v = vertical_lamination(&qd);
        let curve = Lamination::new(p as f64, q as f64).unwrap();
        let expected = (qd.w().sqrt() * (x.tau() * q as f64 + p as f64)).re.abs();
        prop_assert!((intersection_number(&v, &curve) - expected).abs() <= 1e-10 * (1.0 + expected));
    }

    #[test]
    fn ray_contracts_vertical_and_expands_horizontal(x in point(), l in lamination(), t in 0.0..10.0f64) {
        let ray = geodesic_ray(&x, &l);
        let y = ray.evaluate(t);
        let e0 = extremal_length(&x, &l);
        prop_assert!((extremal_length(&y, &l) * (2.0 * t).exp() - e0).abs() <= 1e-9 * e0);
        prop_assert!((teich_distance(&x, &y) - t).abs() <= 1e-9);
        let h = horizontal_lamination(&hm_differential(&x, &l));
        let eh = extremal_length(&x, &h);
        prop_assert!((extremal_length(&y, &h) * (-2.0 * t).exp() - eh).abs() <= 1e-9 * eh);
    }

    #[test]
    fn endpoint_is_where_extremal_length_vanishes(l in lamination()) {
        let x = match ray_endpoint(&l) {
            ExtendedReal::Finite(s) => HalfPlanePoint::new(s, 1e-8).unwrap(),
            ExtendedReal::Infinity => HalfPlanePoint::new(0.0, 1e8).unwrap(),
        };
        prop_assert!(extremal_length(&x, &l) <= 1e-7 * l.weight().powi(2));
    }

    #[test]
    fn distance_is_symmetric_and_triangular(x in point(), y in point(), z in point()) {
        let dxy = teich_distance(&x, &y);
        prop_assert_eq!(dxy, teich_distance(&y, &x));
        prop_assert!(dxy <= teich_distance(&x, &z) + teich_distance(&z, &y) + 1e-12);
    }

    #[test]
    fn disk_is_an_isometry(x in point(), re in -2.0..2.0f64, im in -2.0..2.0f64,
                           r1 in 0.0..0.99f64, a1 in 0.0..6.3f64, r2 in 0.0..0.99f64, a2 in 0.0..6.3f64) {
        prop_assume!(re.abs() + im.abs() > 1e-3);
        let q = QuadDifferential::new(x, Complex64::new(re, im)).unwrap();
        let disk = teichmuller_disk(&q);
        let z1 = Complex64::from_polar(r1, a1);
        let z2 = Complex64::from_polar(r2, a2);
        let d = teich_distance(&disk.evaluate(z1).unwrap(), &disk.evaluate(z2).unwrap());
        prop_assert!((d - disk_distance(z1, z2)).abs() <= 1e-9 * (1.0 + d));
    }

    #[test]
    fn angle_formula_matches_transverse_measures(x in point(), re in -2.0..2.0f64, im in -2.0..2.0f64, theta in 0.0..(4.0 * PI)) {
        prop_assume!(re.abs() + im.abs() > 1e-3);
        let q = QuadDifferential::new(x, Complex64::new(re, im)).unwrap();
        let lam = lamination_of_angle(&q, theta).unit_lamination();
        let root = q.w().sqrt() * Complex64::from_polar(1.0, -theta / 2.0);
        let measure = |pp: f64, qq: f64| (root * (x.tau() * qq + pp)).re.abs();
        // a single common scale relates i(λ(θ), ·) to the flat transverse measure
        let curves = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, -1.0), (-3.0, 5.0)];
        let scale = curves.iter().map(|&(a, b)| measure(a, b)).fold(0.0, f64::max)
            / curves.iter().map(|&(a, b)| intersection_number(&lam, &Lamination::new(a, b).unwrap())).fold(0.0, f64::max);
        for (a, b) in curves {
            let i = intersection_number(&lam, &Lamination::new(a, b).unwrap()) * scale;
            prop_assert!((i - measure(a, b)).abs() <= 1e-9 * (1.0 + measure(a, b)));
        }
    }

    #[test]
    fn circle_action_shifts_angles(x in point(), re in -2.0..2.0f64, im in -2.0..2.0f64,
                                   theta in 0.0..(2.0 * PI), alpha in 0.0..(2.0 * PI)) {
        prop_assume!(re.abs() + im.abs() > 1e-3);
        let q = QuadDifferential::new(x, Complex64::new(re, im)).unwrap();
        // [v(e^{−i(θ+α)} q)] = [v(e^{−iθ} (e^{−iα} q))]
        let a = lamination_of_angle(&q, theta + alpha).theta();
        let b = lamination_of_angle(&q.rotate(-alpha), theta).theta();
        let d = (a - b).abs();
        prop_assert!(d.min(PI - d) < 1e-10);
    }
}

#[test]
fn disk_and_rays_agree_on_grid() {
    let bases = [(0.0, 1.0), (1.0, 2.0), (-0.7, 0.3)];
    let coefficients = [Complex64::new(1.0, 0.0), Complex64::new(-0.3, 0.8), Complex64::new(0.0, -2.0)];
    for (a, b) in bases {
        let x = HalfPlanePoint::new(a, b).unwrap();
        for w in coefficients {
            let q = QuadDifferential::new(x, w).unwrap();
            let disk = teichmuller_disk(&q);
            for k in 0..32 {
                let theta = k as f64 * PI / 16.0;
                let lam = lamination_of_angle(&q, theta).unit_lamination();
                for j in 1..=30 {
                    let t = 0.1 * j as f64;
                    let from_disk = disk.evaluate(Complex64::from_polar(t.tanh(), theta)).unwrap();
                    let from_ray = geodesic_ray(&x, &lam).evaluate(t);
                    let gap = (from_disk.tau() - from_ray.tau()).norm();
                    assert!(gap <= 1e-9, "x={x:?} w={w} θ={theta} t={t}: {gap} {from_disk:?} {from_ray:?} {lam:?}");
                    assert!(teich_distance(&from_disk, &from_ray) <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn square_torus_disk_direction_zero_goes_down() {
    let q = QuadDifferential::new(HalfPlanePoint::i(), Complex64::new(1.0, 0.0)).unwrap();
    let disk = teichmuller_disk(&q);
    for t in [0.1, 1.0, 2.5] {
        let p = disk.evaluate(Complex64::new(f64::tanh(t), 0.0)).unwrap();
        assert!((p.b() - (-2.0 * t).exp()).abs() < 1e-14 && p.a().abs() < 1e-15);
    }
}
