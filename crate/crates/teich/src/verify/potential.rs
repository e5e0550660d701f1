//! Checks on pluriharmonic and plurisubharmonic functions.

use std::f64::consts::PI;

use serde_json::json;
use teich_core::measures::COMPLEXITY;
use teich_core::potential::{
    mean_value, poisson_gradient, poisson_integral, poisson_integral_with_exponent, radial_limit,
    radial_limit_isometry_check, riesz_disk_bound, riesz_teich_bound, BoundaryFunction, CircleDecomposition,
    Decomposition, DiskFunction, FunctionKind, TestFunction,
};
use teich_core::quadrature::SplitMix64;
use teich_core::surface::{ExtendedReal, HalfPlanePoint, Lamination, ProjectiveLamination};
use teich_core::Complex64;

use super::grids::{random_cuts, random_point};
use super::report::{ReportBuilder, VerificationReport};
use super::tolerances::internal;
use super::{points_json, CheckId};

fn names(family: &[TestFunction]) -> Vec<&str> {
    family.iter().map(|u| u.name()).collect()
}

/// `max |u(x) − 𝔓(u*)(x)|` over `grid × family`, with the kernel exponent overridden.
pub fn poisson_discrepancy(
    grid: &[HalfPlanePoint],
    family: &[TestFunction],
    x0: &HalfPlanePoint,
    exponent: i32,
) -> teich_core::Result<f64> {
    let mut worst: f64 = 0.0;
    for u in family {
        if !u.is_pluriharmonic() {
            return Err(teich_core::Error::InvalidParameter("Poisson formula needs pluriharmonic functions"));
        }
        let ustar = BoundaryFunction::radial_limit_of(u);
        for x in grid {
            let p = poisson_integral_with_exponent(&ustar, x0, x, exponent, internal::QUAD)?;
            worst = worst.max((u.value(x) - p).abs());
        }
    }
    Ok(worst)
}

/// The Poisson formula with kernel exponent `exponent`; no control is run.
pub fn check_poisson_formula_with_exponent(
    grid: &[HalfPlanePoint],
    family: &[TestFunction],
    x0: &HalfPlanePoint,
    exponent: i32,
    tol: f64,
) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::Poisson.as_str(),
        "grid": points_json(grid),
        "family": names(family),
        "x0": [x0.a(), x0.b()],
        "exponent": exponent,
        "tolerance": tol,
    });
    let mut r = ReportBuilder::new(CheckId::Poisson.as_str(), tol, inputs);
    r.meta("grid", grid.len()).meta("family", family.len()).meta("exponent", exponent);
    match poisson_discrepancy(grid, family, x0, exponent) {
        Ok(d) => r.discrepancy("max_abs_error", d),
        Err(e) => r.error("max_abs_error", e),
    };
    r.finish()
}

/// Exponent of the corrupted kernel used as negative control.
pub const CONTROL_EXPONENT: i32 = 2;

/// `u = 𝔓(u*)` on `grid × family`, and the exponent-2 kernel has to miss by `control_gap`.
pub fn check_poisson_formula(
    grid: &[HalfPlanePoint],
    family: &[TestFunction],
    x0: &HalfPlanePoint,
    tol: f64,
    control_gap: f64,
) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::Poisson.as_str(),
        "grid": points_json(grid),
        "family": names(family),
        "x0": [x0.a(), x0.b()],
        "exponent": COMPLEXITY,
        "control_exponent": CONTROL_EXPONENT,
        "control_gap": control_gap,
        "tolerance": tol,
    });
    let mut r = ReportBuilder::new(CheckId::Poisson.as_str(), tol, inputs);
    r.meta("grid", grid.len()).meta("family", family.len()).meta("exponent", COMPLEXITY);
    match poisson_discrepancy(grid, family, x0, COMPLEXITY) {
        Ok(d) => r.discrepancy("max_abs_error", d),
        Err(e) => r.error("max_abs_error", e),
    };
    match poisson_discrepancy(grid, family, x0, CONTROL_EXPONENT) {
        Ok(d) => r.bounded("negated_control_error", -d, -control_gap),
        Err(e) => r.error("negated_control_error", e),
    };
    r.finish()
}

/// Mean-value equality for pluriharmonic members, Jensen slack for the rest.
pub fn check_mvt(
    points: &[HalfPlanePoint],
    radii: &[f64],
    family: &[TestFunction],
    tol: f64,
    slack_floor: f64,
) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::Mvt.as_str(),
        "points": points_json(points),
        "radii": radii,
        "family": names(family),
        "tolerance": tol,
        "slack_floor": slack_floor,
    });
    let mut r = ReportBuilder::new(CheckId::Mvt.as_str(), tol, inputs);
    r.meta("pairs", points.len().min(radii.len())).meta("family", family.len());
    let mut equality: f64 = 0.0;
    let mut slack = f64::INFINITY;
    let mut failure = None;
    for (x, &rad) in points.iter().zip(radii) {
        for u in family {
            match mean_value(u, x, rad, internal::QUAD) {
                Ok(m) => {
                    let d = m - u.value(x);
                    if u.is_pluriharmonic() {
                        equality = equality.max(d.abs());
                    } else {
                        slack = slack.min(d);
                    }
                }
                Err(e) => failure = Some(e),
            }
        }
    }
    if let Some(e) = failure {
        r.error("mean_value", e);
    }
    if family.iter().any(|u| u.is_pluriharmonic()) {
        r.discrepancy("max_equality_error", equality);
    }
    if slack.is_finite() {
        r.info("min_jensen_slack", slack);
        r.bounded("negated_jensen_slack", -slack, slack_floor);
    }
    r.finish()
}

/// Boundary values of `v` sampled over `[lo, hi]` in `PML` angle.
fn arc_sup(v: &TestFunction, lo: f64, hi: f64, samples: usize) -> f64 {
    (0..=samples)
        .map(|j| {
            let t = lo + (hi - lo) * j as f64 / samples as f64;
            v.boundary_value(ProjectiveLamination::from_angle(t.min(PI)).endpoint())
        })
        .fold(0.0, f64::max)
}

/// A random decomposition with sampled arc bounds and its basepoint.
#[derive(Debug, Clone)]
pub struct RieszCase {
    pub function: usize,
    pub x: HalfPlanePoint,
    pub decomposition: Decomposition,
}

pub const RIESZ_SUP_SAMPLES: usize = 8192;
pub const RIESZ_BOUND_MARGIN: f64 = 1e-6;

pub fn random_riesz_cases(rng: &mut SplitMix64, family: &[TestFunction], n: usize) -> Vec<RieszCase> {
    (0..n)
        .map(|_| {
            let function = (rng.next_u64() % family.len() as u64) as usize;
            let v = &family[function];
            let x = random_point(rng);
            let k = 1 + (rng.next_u64() % 4) as usize;
            let cuts = random_cuts(rng, k, 0.0, PI, 0.02);
            let mut edges = vec![0.0];
            edges.extend_from_slice(&cuts);
            edges.push(PI);
            let bounds = edges
                .windows(2)
                .map(|w| (arc_sup(v, w[0], w[1], RIESZ_SUP_SAMPLES) + RIESZ_BOUND_MARGIN).min(v.bound()))
                .collect();
            let decomposition = Decomposition::from_cuts(&cuts, bounds).expect("cuts are separated");
            RieszCase { function, x, decomposition }
        })
        .collect()
}

/// Random Blaschke-type moduli on the disk with sampled arc bounds.
pub fn random_disk_cases(rng: &mut SplitMix64, n: usize) -> Vec<(DiskFunction, CircleDecomposition)> {
    (0..n)
        .map(|_| {
            let zeros = (0..1 + rng.next_u64() % 3)
                .map(|_| Complex64::from_polar(rng.uniform(0.0, 0.9), rng.uniform(0.0, 2.0 * PI)))
                .collect();
            let outer = (0..rng.next_u64() % 2)
                .map(|_| Complex64::from_polar(rng.uniform(1.0, 3.0), rng.uniform(0.0, 2.0 * PI)))
                .collect();
            let v = DiskFunction::Modulus {
                zeros,
                outer,
                power: rng.uniform(0.5, 2.0),
            };
            let k = 1 + (rng.next_u64() % 5) as usize;
            let cuts = random_cuts(rng, k, 0.0, 2.0 * PI, 0.05);
            let mut edges = vec![0.0];
            edges.extend_from_slice(&cuts);
            edges.push(2.0 * PI);
            let arcs: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
            let bounds = arcs
                .iter()
                .map(|&(lo, hi)| v.arc_sup(lo, hi, RIESZ_SUP_SAMPLES) + 1e-9)
                .collect();
            (v, CircleDecomposition::new(arcs, bounds).expect("cuts are separated"))
        })
        .collect()
}

/// The documented example: `|τ/(τ+i)|` at `i`, bound `1/√2` on the arc of
/// endpoints `[−1, 1]` and `1` elsewhere.
pub fn documented_riesz_case(family: &[TestFunction]) -> Option<RieszCase> {
    let function = family.iter().position(|u| u.name() == "abs_ratio")?;
    let lo = teich_core::surface::angle_of_endpoint(ExtendedReal::Finite(-1.0));
    let hi = teich_core::surface::angle_of_endpoint(ExtendedReal::Finite(1.0));
    let decomposition = Decomposition::from_cuts(&[lo, hi], vec![1.0, 0.5f64.sqrt(), 1.0]).ok()?;
    Some(RieszCase {
        function,
        x: HalfPlanePoint::i(),
        decomposition,
    })
}

pub fn check_riesz(
    family: &[TestFunction],
    cases: &[RieszCase],
    disk_cases: &[(DiskFunction, CircleDecomposition)],
    tol: f64,
) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::Riesz.as_str(),
        "family": names(family),
        "cases": cases.iter().map(|c| json!({
            "function": c.function,
            "x": [c.x.a(), c.x.b()],
            "arcs": c.decomposition.arcs(),
            "bounds": c.decomposition.bounds(),
        })).collect::<Vec<_>>(),
        "disk_cases": disk_cases.iter().map(|(v, d)| json!({
            "function": format!("{v:?}"),
            "arcs": d.arcs(),
            "bounds": d.bounds(),
        })).collect::<Vec<_>>(),
        "tolerance": tol,
    });
    let mut r = ReportBuilder::new(CheckId::Riesz.as_str(), tol, inputs);
    r.meta("cases", cases.len()).meta("disk_cases", disk_cases.len());
    let mut excess = f64::NEG_INFINITY;
    for (k, c) in cases.iter().enumerate() {
        match riesz_teich_bound(&family[c.function], &c.x, &c.decomposition, internal::QUAD_MASS) {
            Ok(b) => {
                if k == 0 {
                    r.info("case0_lhs", b.lhs).info("case0_rhs", b.rhs);
                }
                excess = excess.max(b.lhs - b.rhs);
            }
            Err(e) => {
                r.error(&format!("case[{k}]"), e);
            }
        }
    }
    if !cases.is_empty() {
        r.discrepancy("max_lhs_minus_rhs", excess);
    }
    let mut disk_excess = f64::NEG_INFINITY;
    for (k, (v, d)) in disk_cases.iter().enumerate() {
        match riesz_disk_bound(v, d, &d.harmonic_masses()) {
            Ok(b) => disk_excess = disk_excess.max(b.lhs - b.rhs),
            Err(e) => {
                r.error(&format!("disk_case[{k}]"), e);
            }
        }
    }
    if !disk_cases.is_empty() {
        r.discrepancy("disk_max_lhs_minus_rhs", disk_excess);
    }
    r.finish()
}

/// A step boundary function with its two basepoints.
#[derive(Debug)]
pub struct GradientCase {
    pub edges: Vec<f64>,
    pub values: Vec<f64>,
    pub x0: HalfPlanePoint,
    pub x: HalfPlanePoint,
}

pub fn random_gradient_cases(rng: &mut SplitMix64, n: usize) -> Vec<GradientCase> {
    (0..n)
        .map(|_| {
            let k = 1 + (rng.next_u64() % 4) as usize;
            let cuts = random_cuts(rng, k, 0.0, PI, 0.05);
            let mut edges = vec![0.0];
            edges.extend_from_slice(&cuts);
            edges.push(PI);
            let values = (0..=k).map(|_| rng.uniform(-1.0, 1.0)).collect();
            GradientCase {
                edges,
                values,
                x0: random_point(rng),
                x: random_point(rng),
            }
        })
        .collect()
}

/// Central difference with one Richardson halving.
fn richardson_derivative<F: Fn(f64) -> teich_core::Result<f64>>(f: F, h: f64) -> teich_core::Result<f64> {
    let central = |h: f64| -> teich_core::Result<f64> { Ok((f(h)? - f(-h)?) / (2.0 * h)) };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `(∂_a, ∂_b)` of `𝔓(g)` in closed form against finite differences, relative error.
pub fn gradient_error(case: &GradientCase) -> teich_core::Result<(f64, (f64, f64))> {
    let g = BoundaryFunction::step(case.edges.clone(), case.values.clone())?;
    let closed = poisson_gradient(&g, &case.x0, &case.x, internal::QUAD_GRADIENT)?.real_gradient();
    let (a, b) = (case.x.a(), case.x.b());
    let value_at = |a: f64, b: f64| -> teich_core::Result<f64> {
        poisson_integral(&g, &case.x0, &HalfPlanePoint::new(a, b)?, internal::QUAD_GRADIENT)
    };
    let da = richardson_derivative(|h| value_at(a + h, b), internal::FD_STEP)?;
    let db = richardson_derivative(|h| value_at(a, b + h), internal::FD_STEP)?;
    let err = (closed.0 - da).hypot(closed.1 - db) / da.hypot(db);
    Ok((err, (da, db)))
}

pub fn check_gradient(cases: &[GradientCase], tol: f64) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::Gradient.as_str(),
        "cases": cases.iter().map(|c| json!({
            "edges": c.edges,
            "values": c.values,
            "x0": [c.x0.a(), c.x0.b()],
            "x": [c.x.a(), c.x.b()],
        })).collect::<Vec<_>>(),
        "fd_step": internal::FD_STEP,
        "tolerance": tol,
    });
    let mut r = ReportBuilder::new(CheckId::Gradient.as_str(), tol, inputs);
    r.meta("cases", cases.len()).meta("fd_step", internal::FD_STEP);
    let mut worst: f64 = 0.0;
    let mut smallest = f64::INFINITY;
    for (k, c) in cases.iter().enumerate() {
        match gradient_error(c) {
            Ok((e, (da, db))) => {
                worst = worst.max(e);
                smallest = smallest.min(da.hypot(db));
            }
            Err(e) => {
                r.error(&format!("case[{k}]"), e);
            }
        }
    }
    r.discrepancy("max_rel_error", worst);
    r.info("min_gradient_norm", smallest);
    r.finish()
}

/// Generic directions probed for basepoint independence of radial limits.
pub const LIMIT_DIRECTIONS: usize = 16;

/// `sup|u| = ess-sup|u*|`, `𝔓(u*) = u`, and radial limits that do not depend on the basepoint.
pub fn check_isometry(
    family: &[TestFunction],
    x0: &HalfPlanePoint,
    samples: &[HalfPlanePoint],
    tol: f64,
    left_inverse_tol: f64,
    limit_tol: f64,
) -> VerificationReport {
    let inputs = json!({
        "check": CheckId::Isometry.as_str(),
        "family": names(family),
        "x0": [x0.a(), x0.b()],
        "samples": points_json(samples),
        "limit_directions": LIMIT_DIRECTIONS,
        "tolerance": tol,
        "left_inverse_tolerance": left_inverse_tol,
        "limit_tolerance": limit_tol,
    });
    let mut r = ReportBuilder::new(CheckId::Isometry.as_str(), tol, inputs);
    r.meta("family", family.len())
        .meta("interior_grid", format!(
            "{}x{}",
            teich_core::potential::ISOMETRY_RADII.len(),
            teich_core::potential::ISOMETRY_ANGLES
        ))
        .meta("limit_directions", LIMIT_DIRECTIONS);
    match radial_limit_isometry_check(family, x0, samples, internal::QUAD) {
        Ok(rows) => {
            for row in &rows {
                r.discrepancy(&format!("sup_difference[{}]", row.name), row.sup_difference);
            }
            let left = rows.iter().map(|row| row.left_inverse_error).fold(0.0, f64::max);
            r.bounded("max_left_inverse_error", left, left_inverse_tol);
        }
        Err(e) => {
            r.error("isometry", e);
        }
    }

    let mut spread: f64 = 0.0;
    let mut failure = None;
    for u in family.iter().filter(|u| u.kind() != FunctionKind::Psh) {
        for k in 0..LIMIT_DIRECTIONS {
            let lambda = Lamination::unit((k as f64 + 0.5) * PI / LIMIT_DIRECTIONS as f64);
            let limits: Result<Vec<f64>, _> = std::iter::once(x0)
                .chain(samples)
                .map(|x| radial_limit(u, &lambda, x, limit_tol))
                .collect();
            match limits {
                Ok(v) => {
                    let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &y| (l.min(y), h.max(y)));
                    spread = spread.max(hi - lo);
                }
                Err(e) => failure = Some(e),
            }
        }
    }
    if let Some(e) = failure {
        r.error("radial_limit", e);
    }
    r.bounded("max_limit_spread", spread, 2.0 * limit_tol);
    r.finish()
}
