//! Thurston measure, pluriharmonic measure and their relatives on `PML ≅ [0, π)`.
//!
//! Thurston measure on `ML ≅ ℝ²` is Lebesgue measure. The cone over an arc
//! `E ⊂ PML` inside the unit ball `{Ext_x ≤ 1}` has area
//! `½∫_E Ext_x(u_θ)^{-1} dθ` over the double cover, so the normalized cone
//! measure has density proportional to `1/Ext_x(cos θ, sin θ)`.
//!
//! The Bers boundary is identified with `PML` almost everywhere, so the
//! pluriharmonic measure with pole `x` is the same density.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_interval, integrate_piecewise, QuadResult};
use crate::surface::{
    angle_of_lamination, extremal_length, geodesic_ray, DirectionKind, HalfPlanePoint, Lamination,
    ProjectiveLamination, QuadDifferential,
};

/// Tolerance for the one-time normalizer quadrature.
pub const NORMALIZER_TOL: f64 = 1e-12;

/// Exponent of the Poisson kernel, `3g − 3 + m = 1` for the once-punctured torus.
pub const COMPLEXITY: i32 = 1;

/// The normalized Thurston measure `μ̂^x` on `PML`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryMeasure {
    basepoint: HalfPlanePoint,
    normalization: f64,
}

/// `μ̂^x_Th` with its normalizer computed once by adaptive quadrature.
pub fn thurston_density(x: &HalfPlanePoint) -> Result<BoundaryMeasure> {
    let cone = cone_mass(x)?;
    Ok(BoundaryMeasure {
        basepoint: *x,
        normalization: cone.value,
    })
}

/// `μ_Th(BML_x) = ∫₀^π Ext_x(u_θ)^{-1} dθ`, the area of `{λ : Ext_x(λ) ≤ 1}`.
pub fn cone_mass(x: &HalfPlanePoint) -> Result<QuadResult> {
    let x = *x;
    integrate_interval(
        move |theta| 1.0 / extremal_length(&x, &Lamination::unit(theta)),
        0.0,
        PI,
        NORMALIZER_TOL,
    )
}

impl BoundaryMeasure {
    pub fn basepoint(&self) -> HalfPlanePoint {
        self.basepoint
    }

    /// The cone mass used as normalizer (equal to `π` for every basepoint).
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn density(&self, theta: f64) -> f64 {
        1.0 / (self.normalization * extremal_length(&self.basepoint, &Lamination::unit(theta)))
    }

    /// `μ̂^x([lo, hi])` for `0 ≤ lo < hi ≤ π`.
    pub fn mass(&self, lo: f64, hi: f64, tol: f64) -> Result<f64> {
        check_arc(lo, hi)?;
        Ok(integrate_interval(|t| self.density(t), lo, hi, tol)?.value)
    }

    /// `∫ f dμ̂^x`, splitting the domain at the given discontinuities of `f`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, breakpoints: &[f64], tol: f64) -> Result<QuadResult> {
        integrate_piecewise(|t| f(t) * self.density(t), 0.0, PI, breakpoints, tol)
    }

    /// Density of the pushforward to `∂ℍ = ℝ` under `θ ↦ −cot θ`.
    pub fn line_density(&self, s: f64) -> f64 {
        self.density(PI / 2.0 + s.atan()) / (1.0 + s * s)
    }
}

fn check_arc(lo: f64, hi: f64) -> Result<()> {
    if !(0.0 <= lo && lo < hi && hi <= PI) {
        return Err(Error::InvalidParameter("arc must satisfy 0 <= lo < hi <= pi"));
    }
    Ok(())
}

/// `(Ext_y(u_θ) / Ext_x(u_θ))^ξ`, the density `dμ̂^x / dμ̂^y`.
pub fn change_of_basepoint_density(x: &HalfPlanePoint, y: &HalfPlanePoint, theta: f64) -> f64 {
    let u = Lamination::unit(theta);
    (extremal_length(y, &u) / extremal_length(x, &u)).powi(COMPLEXITY)
}

/// Poisson kernel `𝔓(x₀, x, φ) = (Ext_{x₀}(λ_φ) / Ext_x(λ_φ))^ξ`, and `1` on simple closed curves.
pub fn pluriharmonic_kernel(x0: &HalfPlanePoint, x: &HalfPlanePoint, phi: &ProjectiveLamination) -> f64 {
    pluriharmonic_kernel_with_exponent(x0, x, phi, COMPLEXITY)
}

/// The kernel with an arbitrary exponent; only `COMPLEXITY` reproduces harmonic functions.
pub fn pluriharmonic_kernel_with_exponent(
    x0: &HalfPlanePoint,
    x: &HalfPlanePoint,
    phi: &ProjectiveLamination,
    exponent: i32,
) -> f64 {
    match phi.kind() {
        DirectionKind::Curve => 1.0,
        DirectionKind::Generic => {
            let u = phi.unit_lamination();
            (extremal_length(x0, &u) / extremal_length(x, &u)).powi(exponent)
        }
    }
}

/// Density of `μ̂^x` pushed forward to the boundary line at `s`.
pub fn boundary_line_density(x: &HalfPlanePoint, s: f64) -> Result<f64> {
    Ok(thurston_density(x)?.line_density(s))
}

/// `μ_{x;r}`: the pushforward of `μ̂^x` to the Teichmüller sphere `S(x, r)` along rays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMeasure {
    center: HalfPlanePoint,
    radius: f64,
    angular: BoundaryMeasure,
}

pub fn sphere_measure(x: &HalfPlanePoint, r: f64) -> Result<SphereMeasure> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter("sphere radius must be positive"));
    }
    Ok(SphereMeasure {
        center: *x,
        radius: r,
        angular: thurston_density(x)?,
    })
}

impl SphereMeasure {
    pub fn center(&self) -> HalfPlanePoint {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The point of `S(x, r)` reached along the ray in direction `θ`.
    pub fn support_point(&self, theta: f64) -> HalfPlanePoint {
        geodesic_ray(&self.center, &Lamination::unit(theta)).evaluate(self.radius)
    }

    pub fn integrate<F: Fn(&HalfPlanePoint) -> f64>(&self, f: F, tol: f64) -> Result<QuadResult> {
        self.angular.integrate(|t| f(&self.support_point(t)), &[], tol)
    }
}

/// `Θ`: the pushforward of `dθ/2π` on the circle under `θ ↦ [v(e^{−iθ} q)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberMeasure {
    q: QuadDifferential,
}

pub fn fiber_angle_measure(q: &QuadDifferential) -> FiberMeasure {
    FiberMeasure { q: *q }
}

impl FiberMeasure {
    pub fn differential(&self) -> QuadDifferential {
        self.q
    }

    /// `Θ([lo, hi])`, measured by pulling the arc back to the circle of disk angles.
    pub fn mass(&self, lo: f64, hi: f64) -> Result<f64> {
        check_arc(lo, hi)?;
        if hi - lo >= PI {
            return Ok(1.0);
        }
        let start = angle_of_lamination(&self.q, &ProjectiveLamination::from_angle(lo));
        let end = angle_of_lamination(&self.q, &ProjectiveLamination::from_angle(hi));
        Ok((end - start).rem_euclid(2.0 * PI) / (2.0 * PI))
    }

    /// `dΘ/dψ = (1/2π) |dθ/dψ|` at the PML angle `psi`.
    pub fn density(&self, psi: f64) -> f64 {
        let base = self.q.base();
        // preimage root c(ψ) of the linear map c ↦ (Re(cτ), −Re c) and its ψ-derivative
        let (s, c) = psi.sin_cos();
        let root = Complex64::new(-s, -(base.a() * s + c) / base.b());
        let droot = Complex64::new(-c, -(base.a() * c - s) / base.b());
        let darg = (root.conj() * droot).im / root.norm_sqr();
        (2.0 * darg).abs() / (2.0 * PI)
    }
}

/// Binned total-variation distance between the fiber measure and `μ̂^x` over `bins` equal arcs.
pub fn binned_total_variation(
    fiber: &FiberMeasure,
    cone: &BoundaryMeasure,
    bins: usize,
    tol: f64,
) -> Result<f64> {
    if bins == 0 {
        return Err(Error::InvalidParameter("bin count must be positive"));
    }
    let width = PI / bins as f64;
    let mut tv = crate::quadrature::NeumaierSum::default();
    for k in 0..bins {
        let lo = k as f64 * width;
        let hi = if k + 1 == bins { PI } else { (k + 1) as f64 * width };
        let a = fiber.mass(lo, hi)?;
        let b = cone.mass(lo, hi, tol / bins as f64)?;
        tv.add((a - b).abs());
    }
    Ok(0.5 * tv.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{hm_differential, teich_distance};

    fn pt(a: f64, b: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(a, b).unwrap()
    }

    #[test]
    fn uniform_at_square_torus() {
        let m = thurston_density(&pt(0.0, 1.0)).unwrap();
        for k in 0..16 {
            let t = k as f64 * PI / 16.0;
            assert!((m.density(t) - 1.0 / PI).abs() < 1e-14);
        }
        assert!((m.mass(0.0, PI / 2.0, 1e-12).unwrap() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn cone_mass_matches_lattice_count() {
        // brute-force area of {(p, q) : |p + qτ|² ≤ b} on a fine grid
        let x = pt(0.7, 0.6);
        let h = 2.0e-3;
        let extent = 2.5;
        let n = (2.0 * extent / h) as i64;
        let mut count = 0u64;
        for i in 0..n {
            let p = -extent + (i as f64 + 0.5) * h;
            for j in 0..n {
                let q = -extent + (j as f64 + 0.5) * h;
                let re = p + q * x.a();
                let im = q * x.b();
                if re * re + im * im <= x.b() {
                    count += 1;
                }
            }
        }
        let area = count as f64 * h * h;
        assert!((area - PI).abs() < 2e-3, "area {area}");
        let quad = cone_mass(&x).unwrap().value;
        assert!((quad - PI).abs() < 1e-10 * PI);
    }

    #[test]
    fn change_of_basepoint_examples() {
        let x = pt(0.0, 1.0);
        let y = pt(0.0, 2.0);
        assert_eq!(change_of_basepoint_density(&x, &x, 0.4), 1.0);
        assert!((change_of_basepoint_density(&x, &y, PI / 2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_examples() {
        let x0 = pt(0.0, 1.0);
        let x = pt(0.0, 2.0);
        assert_eq!(pluriharmonic_kernel(&x0, &x, &ProjectiveLamination::from_angle(0.0)), 2.0);
        assert_eq!(pluriharmonic_kernel(&x0, &x0, &ProjectiveLamination::from_angle(1.1)), 1.0);
        let curve = ProjectiveLamination::curve(1, 0).unwrap();
        assert_eq!(pluriharmonic_kernel(&x0, &x, &curve), 1.0);
        let curve = ProjectiveLamination::curve(2, 3).unwrap();
        assert_eq!(pluriharmonic_kernel(&pt(-1.0, 0.5), &x, &curve), 1.0);
    }

    #[test]
    fn line_density_examples() {
        let m = thurston_density(&pt(0.0, 1.0)).unwrap();
        for s in [-5.0, -1.0, 0.0, 0.3, 10.0] {
            assert!((m.line_density(s) - 1.0 / (PI * (1.0 + s * s))).abs() < 1e-14);
        }
        // x = (1, 2), s = 1: pushforward of a small arc by quadrature
        let m = thurston_density(&pt(1.0, 2.0)).unwrap();
        let h: f64 = 1e-4;
        let lo = PI / 2.0 + (1.0 - h).atan();
        let hi = PI / 2.0 + (1.0 + h).atan();
        let avg = m.mass(lo, hi, 1e-15).unwrap() / (2.0 * h);
        assert!((avg - 1.0 / (2.0 * PI)).abs() < 1e-8);
        let total = crate::quadrature::integrate_real_line(|s| m.line_density(s), 1e-12).unwrap();
        assert!((total.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn sphere_support_lies_on_sphere() {
        let x = pt(0.0, 1.0);
        let r = 1.7;
        let sphere = sphere_measure(&x, r).unwrap();
        for k in 0..64 {
            let y = sphere.support_point(k as f64 * PI / 64.0);
            assert!((teich_distance(&x, &y) - r).abs() < 1e-10);
        }
        let one = sphere.integrate(|_| 1.0, 1e-12).unwrap();
        assert!((one.value - 1.0).abs() < 1e-12);
        assert!(sphere_measure(&x, 0.0).is_err());
    }

    #[test]
    fn fiber_measure_at_square_torus_is_uniform() {
        let q = QuadDifferential::new(pt(0.0, 1.0), Complex64::new(1.0, 0.0)).unwrap();
        let fiber = fiber_angle_measure(&q);
        for k in 0..8 {
            let lo = k as f64 * PI / 8.0;
            assert!((fiber.mass(lo, lo + PI / 8.0).unwrap() - 0.125).abs() < 1e-14);
            assert!((fiber.density(lo + 0.1) - 1.0 / PI).abs() < 1e-14);
        }
        assert_eq!(fiber.mass(0.0, PI).unwrap(), 1.0);
    }

    #[test]
    fn fiber_measure_matches_cone_measure_off_center() {
        let x = pt(1.0, 2.0);
        let q = hm_differential(&x, &Lamination::new(0.3, 1.0).unwrap());
        let tv = binned_total_variation(&fiber_angle_measure(&q), &thurston_density(&x).unwrap(), 256, 1e-12)
            .unwrap();
        assert!(tv <= 1e-6, "tv {tv}");
    }
}
