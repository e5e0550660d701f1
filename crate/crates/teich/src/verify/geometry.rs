//! Checks on the measure stack and on rays and disks.

use std::f64::consts::PI;

use serde_json::json;
use teich_core::measures::{binned_total_variation, change_of_basepoint_density, fiber_angle_measure, thurston_density};
use teich_core::quadrature::{integrate_interval, SplitMix64};
use teich_core::surface::{
    extremal_length, geodesic_ray, hm_differential, lamination_of_angle, teich_distance, teichmuller_disk,
    HalfPlanePoint, Lamination, QuadDifferential,
};
use teich_core::Complex64;

use super::report::{ReportBuilder, VerificationReport};
use super::tolerances::internal;
use super::{points_json, CheckId};

/// The classical harmonic-measure density of `ℍ` at `x`, seen from `s ∈ ℝ`.
pub fn cauchy_density(x: &HalfPlanePoint, s: f64) -> f64 {
    let d = s - x.a();
    x.b() / (PI * (d * d + x.b() * x.b()))
}

/// How `PML` angles are sent to `∂ℍ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointMap {
    /// `s = −cot θ`, the endpoint of the ray contracting `(cos θ, sin θ)`.
    RayEndpoint,
    /// `s = +cot θ`, the negative control.
    WrongSign,
}

/// `sup |pushforward density − Cauchy density|` over `points × s_grid`.
pub fn harmonic_measure_discrepancy(points: &[HalfPlanePoint], s_grid: &[f64], map: EndpointMap) -> teich_core::Result<f64> {
    let mut worst: f64 = 0.0;
    for x in points {
        let m = thurston_density(x)?;
        for &s in s_grid {
            let pushed = match map {
                EndpointMap::RayEndpoint => m.line_density(s),
                EndpointMap::WrongSign => m.density(PI / 2.0 - s.atan()) / (1.0 + s * s),
            };
            worst = worst.max((pushed - cauchy_density(x, s)).abs());
        }
    }
    Ok(worst)
}

/// Pushforward of `μ̂^x` to `∂ℍ` against the Cauchy density, plus the wrong-sign control.
pub fn check_harmonic_measure_identity(
    points: &[HalfPlanePoint],
    s_grid: &[f64],
    tol: f64,
    control_gap: f64,
) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::HarmonicMeasure.as_str(),
        "points": points_json(points),
        "s_grid": s_grid,
        "tolerance": tol,
        "control_gap": control_gap,
    });
    let mut r = ReportBuilder::new(CheckId::HarmonicMeasure.as_str(), tol, inputs);
    r.meta("points", points.len()).meta("s_grid", s_grid.len());
    match harmonic_measure_discrepancy(points, s_grid, EndpointMap::RayEndpoint) {
        Ok(d) => r.discrepancy("sup_density_error", d),
        Err(e) => r.error("sup_density_error", e),
    };
    match harmonic_measure_discrepancy(points, s_grid, EndpointMap::WrongSign) {
        Ok(d) => r.bounded("negated_control_error", -d, -control_gap),
        Err(e) => r.error("negated_control_error", e),
    };
    r.finish()
}

/// One random arc with its two basepoints.
#[derive(Debug, Clone, Copy)]
pub struct ArcSample {
    pub x: HalfPlanePoint,
    pub y: HalfPlanePoint,
    pub lo: f64,
    pub hi: f64,
}

pub fn random_arcs(rng: &mut SplitMix64, n: usize) -> Vec<ArcSample> {
    (0..n)
        .map(|_| {
            let x = super::grids::random_point(rng);
            let y = super::grids::random_point(rng);
            let u = rng.uniform(0.0, PI);
            let v = rng.uniform(0.0, PI);
            ArcSample {
                x,
                y,
                lo: u.min(v),
                hi: u.max(v).max(u.min(v) + 1e-6),
            }
        })
        .collect()
}

/// `μ̂^x(E)` against `∫_E (dμ̂^x/dμ̂^y) dμ̂^y` on each arc.
pub fn check_basepoint(arcs: &[ArcSample], tol: f64) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::Basepoint.as_str(),
        "arcs": arcs.iter().map(|s| json!([s.x.a(), s.x.b(), s.y.a(), s.y.b(), s.lo, s.hi])).collect::<Vec<_>>(),
        "tolerance": tol,
    });
    let mut r = ReportBuilder::new(CheckId::Basepoint.as_str(), tol, inputs);
    r.meta("arcs", arcs.len());
    let run = || -> teich_core::Result<f64> {
        let mut worst: f64 = 0.0;
        for s in arcs {
            let mx = thurston_density(&s.x)?;
            let my = thurston_density(&s.y)?;
            let direct = mx.mass(s.lo, s.hi, internal::QUAD_MASS)?;
            let moved = integrate_interval(
                |t| change_of_basepoint_density(&s.x, &s.y, t) * my.density(t),
                s.lo,
                s.hi,
                internal::QUAD_MASS,
            )?
            .value;
            worst = worst.max((direct - moved).abs());
        }
        Ok(worst)
    };
    match run() {
        Ok(d) => r.discrepancy("max_arc_mass_error", d),
        Err(e) => r.error("max_arc_mass_error", e),
    };
    r.finish()
}

pub const DISINTEGRATION_BINS: usize = 256;

/// Binned TV between the fiber angle measure of `q_{(1,0),x}` and `μ̂^x`, per point.
pub fn check_disintegration(points: &[HalfPlanePoint], tol: f64) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::Disintegration.as_str(),
        "points": points_json(points),
        "bins": DISINTEGRATION_BINS,
        "tolerance": tol,
    });
    let mut r = ReportBuilder::new(CheckId::Disintegration.as_str(), tol, inputs);
    r.meta("points", points.len()).meta("bins", DISINTEGRATION_BINS);
    let reference = Lamination::new(1.0, 0.0).expect("nonzero");
    for (k, x) in points.iter().enumerate() {
        let label = format!("tv[{k}]");
        let tv = thurston_density(x).and_then(|cone| {
            let fiber = fiber_angle_measure(&hm_differential(x, &reference));
            binned_total_variation(&fiber, &cone, DISINTEGRATION_BINS, internal::QUAD_MASS)
        });
        match tv {
            Ok(v) => r.discrepancy(&label, v),
            Err(e) => r.error(&label, e),
        };
    }
    r.finish()
}

pub const RAY_TIMES: usize = 41;
pub const RAY_T_MAX: f64 = 10.0;
pub const DISK_ANGLES: usize = 32;
pub const DISK_TIMES: usize = 30;

fn ray_directions() -> Vec<Lamination> {
    let mut out: Vec<Lamination> = (0..16).map(|k| Lamination::unit((k as f64 + 0.37) * PI / 16.0)).collect();
    for (p, q) in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, -1.0), (-3.0, 5.0)] {
        out.push(Lamination::new(p, q).expect("nonzero"));
    }
    out
}

/// Ext decay, unit speed and the disk/ray identity on every point of `points`.
pub fn check_rays(points: &[HalfPlanePoint], tol: f64) -> VerificationReport {
    let directions = ray_directions();
    let inputs = json!({
        "check": CheckId::Rays.as_str(),
        "points": points_json(points),
        "directions": directions.iter().map(|l| json!([l.p(), l.q()])).collect::<Vec<_>>(),
        "t_max": RAY_T_MAX,
        "times": RAY_TIMES,
        "disk_grid": [DISK_ANGLES, DISK_TIMES],
        "tolerance": tol,
    });
    let mut r = ReportBuilder::new(CheckId::Rays.as_str(), tol, inputs);
    r.meta("points", points.len())
        .meta("directions", directions.len())
        .meta("times", RAY_TIMES)
        .meta("disk_grid", format!("{DISK_ANGLES}x{DISK_TIMES}"));

    let mut decay: f64 = 0.0;
    let mut speed: f64 = 0.0;
    for x in points {
        for l in &directions {
            let ray = geodesic_ray(x, l);
            let e0 = extremal_length(x, l);
            for j in 0..RAY_TIMES {
                let t = RAY_T_MAX * j as f64 / (RAY_TIMES - 1) as f64;
                let y = ray.evaluate(t);
                let predicted = e0 * (-2.0 * t).exp();
                decay = decay.max((extremal_length(&y, l) - predicted).abs() / predicted);
                speed = speed.max((teich_distance(x, &y) - t).abs());
            }
        }
    }
    r.discrepancy("ext_decay_rel_error", decay);
    r.discrepancy("distance_abs_error", speed);

    let mut identity: f64 = 0.0;
    let coefficients = [Complex64::new(1.0, 0.0), Complex64::new(-0.3, 0.8), Complex64::new(0.0, -2.0)];
    for x in points {
        for w in coefficients {
            let q = QuadDifferential::new(*x, w).expect("nonzero coefficient");
            let disk = teichmuller_disk(&q);
            for k in 0..DISK_ANGLES {
                let theta = 2.0 * PI * k as f64 / DISK_ANGLES as f64;
                let ray = geodesic_ray(x, &lamination_of_angle(&q, theta).unit_lamination());
                for j in 1..=DISK_TIMES {
                    let t = 3.0 * j as f64 / DISK_TIMES as f64;
                    let gap = match disk.evaluate(Complex64::from_polar(t.tanh(), theta)) {
                        Ok(p) => teich_distance(&p, &ray.evaluate(t)),
                        Err(_) => f64::INFINITY,
                    };
                    identity = identity.max(gap);
                }
            }
        }
    }
    r.discrepancy("disk_ray_distance", identity);
    r.finish()
}
