//! Plot-ready CSV tables of kernels, measures, rays and radial limits.

use std::f64::consts::PI;
use std::io::Write;

use teich_core::measures::{pluriharmonic_kernel, thurston_density};
use teich_core::potential::{radial_limit, TestFunction};
use teich_core::surface::{extremal_length, geodesic_ray, teich_distance, HalfPlanePoint, Lamination, ProjectiveLamination};

use crate::verify::geometry::cauchy_density;
use crate::verify::report::fmt_f64;

/// A header plus rows of already formatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn f(x: f64) -> String {
    fmt_f64(x)
}

/// `𝔓(x₀, x, θ_k)` at `θ_k = kπ/grid`.
pub fn kernel_table(x0: &HalfPlanePoint, x: &HalfPlanePoint, grid: usize) -> Table {
    let rows = (0..grid)
        .map(|k| {
            let theta = PI * k as f64 / grid as f64;
            let u = Lamination::unit(theta);
            let kernel = pluriharmonic_kernel(x0, x, &ProjectiveLamination::from_angle(theta));
            vec![k.to_string(), f(theta), f(u.p()), f(u.q()), f(kernel)]
        })
        .collect();
    Table {
        header: vec!["k", "theta", "p", "q", "kernel"],
        rows,
    }
}

/// Density of `μ̂^x`, cell masses, and the boundary-line pushforward next to the Cauchy density.
pub fn measure_table(x: &HalfPlanePoint, grid: usize) -> teich_core::Result<Table> {
    let m = thurston_density(x)?;
    let width = PI / grid as f64;
    let mut rows = Vec::with_capacity(grid);
    for k in 0..grid {
        let theta = width * k as f64;
        let endpoint = ProjectiveLamination::from_angle(theta).endpoint();
        let (line, cauchy) = match endpoint.finite() {
            Some(s) => (m.line_density(s), cauchy_density(x, s)),
            None => (0.0, 0.0),
        };
        rows.push(vec![
            k.to_string(),
            f(theta),
            endpoint.to_string(),
            f(m.density(theta)),
            f(m.mass(theta, theta + width, 1e-13)?),
            f(line),
            f(cauchy),
        ]);
    }
    Ok(Table {
        header: vec!["k", "theta", "endpoint", "density", "cell_mass", "line_density", "cauchy_density"],
        rows,
    })
}

/// Points of the ray from `x` contracting `λ`, with `Ext` and distance diagnostics.
pub fn ray_trace(x: &HalfPlanePoint, lambda: &Lamination, t_max: f64, steps: usize) -> Table {
    let ray = geodesic_ray(x, lambda);
    let e0 = extremal_length(x, lambda);
    let rows = (0..=steps)
        .map(|j| {
            let t = t_max * j as f64 / steps.max(1) as f64;
            let y = ray.evaluate(t);
            vec![
                f(t),
                f(y.a()),
                f(y.b()),
                f(extremal_length(&y, lambda)),
                f(e0 * (-2.0 * t).exp()),
                f(teich_distance(x, &y)),
            ]
        })
        .collect();
    Table {
        header: vec!["t", "a", "b", "ext", "ext_predicted", "distance"],
        rows,
    }
}

/// `u` along the ray from `x` in direction `λ`, against its boundary value at the endpoint.
pub fn limit_trace(
    u: &TestFunction,
    x: &HalfPlanePoint,
    lambda: &Lamination,
    t_max: f64,
    steps: usize,
) -> (Table, teich_core::Result<f64>) {
    let ray = geodesic_ray(x, lambda);
    let boundary = u.boundary_value(ray.endpoint());
    let rows = (0..=steps)
        .map(|j| {
            let t = t_max * j as f64 / steps.max(1) as f64;
            let y = ray.evaluate(t);
            let v = u.value(&y);
            vec![f(t), f(y.a()), f(y.b()), f(v), f(v - boundary)]
        })
        .collect();
    let table = Table {
        header: vec!["t", "a", "b", "value", "minus_boundary_value"],
        rows,
    };
    (table, radial_limit(u, lambda, x, 1e-10))
}
