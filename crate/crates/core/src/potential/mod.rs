//! Function theory on the Teichmüller space: Poisson integrals, radial limits,
//! the mean-value operator and F.&M. Riesz-type bounds.

mod families;
mod riesz;

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures::{pluriharmonic_kernel_with_exponent, sphere_measure, thurston_density, COMPLEXITY};
use crate::quadrature::integrate_piecewise;
use crate::surface::{
    extremal_length, geodesic_ray, hm_differential, HalfPlanePoint, Lamination, ProjectiveLamination,
};

pub use families::{
    builtin_families, cayley, pluriharmonic_families, psh_families, BoundaryFunction, FunctionKind, Holomorphic,
    TestFunction,
};
pub use riesz::{
    riesz_disk_bound, riesz_teich_bound, CircleDecomposition, Decomposition, DiskFunction, RieszBound,
    SPOT_CHECK_DIRECTIONS, SPOT_CHECK_TOL,
};

/// First ray time probed by [`radial_limit`].
pub const RADIAL_T_START: f64 = 0.5;
/// Geometric growth of successive ray times.
pub const RADIAL_T_GROWTH: f64 = 1.5;
/// Largest ray time before giving up.
pub const RADIAL_T_MAX: f64 = 20.0;

/// Limit of `u` along the Teichmüller ray from `x` in direction `λ`.
///
/// Successive pairs `u(r(t_{n−1}))`, `u(r(t_n))` are Richardson-extrapolated
/// under the error model `C e^{−2t}`; iteration stops once two consecutive
/// extrapolants agree to `tol`.
pub fn radial_limit(u: &TestFunction, lambda: &Lamination, x: &HalfPlanePoint, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    let ray = geodesic_ray(x, lambda);
    let mut t_prev = RADIAL_T_START;
    let mut v_prev = u.value(&ray.evaluate(t_prev));
    let mut extrapolated: Option<f64> = None;
    loop {
        let t = t_prev * RADIAL_T_GROWTH;
        if t > RADIAL_T_MAX {
            return Err(Error::NoConvergence { t_max: RADIAL_T_MAX });
        }
        let v = u.value(&ray.evaluate(t));
        let e_prev = (-2.0 * t_prev).exp();
        let e = (-2.0 * t).exp();
        let limit = (v * e_prev - v_prev * e) / (e_prev - e);
        if let Some(last) = extrapolated {
            if (limit - last).abs() < tol {
                return Ok(limit);
            }
        }
        extrapolated = Some(limit);
        t_prev = t;
        v_prev = v;
    }
}

/// `𝔓(g)(x) = ∫ g(φ) 𝔓(x₀, x, φ) dμ̂^{x₀}(φ)`.
pub fn poisson_integral(g: &BoundaryFunction, x0: &HalfPlanePoint, x: &HalfPlanePoint, tol: f64) -> Result<f64> {
    poisson_integral_with_exponent(g, x0, x, COMPLEXITY, tol)
}

/// The Poisson integral with the kernel exponent overridden (negative controls).
pub fn poisson_integral_with_exponent(
    g: &BoundaryFunction,
    x0: &HalfPlanePoint,
    x: &HalfPlanePoint,
    exponent: i32,
    tol: f64,
) -> Result<f64> {
    let m0 = thurston_density(x0)?;
    let r = integrate_piecewise(
        |t| {
            let phi = ProjectiveLamination::from_angle(t);
            g.eval(t) * pluriharmonic_kernel_with_exponent(x0, x, &phi, exponent) * m0.density(t)
        },
        0.0,
        PI,
        g.breakpoints(),
        tol,
    )?;
    Ok(r.value)
}

/// The `(1,0)` and `(0,1)` parts of `d𝔓(g)` at a point, as coefficients of
/// `q_{λ,x}` and its conjugate integrated against `μ̂^{x₀}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonGradient {
    pub d10: Complex64,
    pub d01: Complex64,
}

impl PoissonGradient {
    /// `∂𝔓(g)/∂τ`: pairing `w (dz)²` with the tangent vector `∂/∂τ` contributes `i/2`.
    pub fn d_tau(&self) -> Complex64 {
        Complex64::new(0.0, 0.5) * self.d10
    }

    /// `∂𝔓(g)/∂τ̄`.
    pub fn d_tau_bar(&self) -> Complex64 {
        Complex64::new(0.0, -0.5) * self.d01
    }

    /// `(∂/∂a, ∂/∂b)` of `𝔓(g)` at `τ = a + bi`.
    pub fn real_gradient(&self) -> (f64, f64) {
        let dt = self.d_tau();
        let dtb = self.d_tau_bar();
        ((dt + dtb).re, (Complex64::new(0.0, 1.0) * (dt - dtb)).re)
    }
}

/// Closed-form gradient of `𝔓(g)` at `x`:
/// `ξ ∫ g 𝔓(x₀, x, ·) q_{λ,x}/Ext_x(λ) dμ̂^{x₀}` and its conjugate.
pub fn poisson_gradient(
    g: &BoundaryFunction,
    x0: &HalfPlanePoint,
    x: &HalfPlanePoint,
    tol: f64,
) -> Result<PoissonGradient> {
    let m0 = thurston_density(x0)?;
    let xi = COMPLEXITY as f64;
    let integrand = |t: f64| {
        let u = Lamination::unit(t);
        let kernel = pluriharmonic_kernel_with_exponent(x0, x, &ProjectiveLamination::from_angle(t), COMPLEXITY);
        let w = hm_differential(x, &u).w();
        let weight = xi * g.eval(t) * kernel * m0.density(t) / extremal_length(x, &u);
        w * weight
    };
    let re = integrate_piecewise(|t| integrand(t).re, 0.0, PI, g.breakpoints(), tol)?.value;
    let im = integrate_piecewise(|t| integrand(t).im, 0.0, PI, g.breakpoints(), tol)?.value;
    Ok(PoissonGradient {
        d10: Complex64::new(re, im),
        d01: Complex64::new(re, -im),
    })
}

/// `∫_{S(x,r)} u dμ_{x;r}`.
pub fn mean_value(u: &TestFunction, x: &HalfPlanePoint, r: f64, tol: f64) -> Result<f64> {
    Ok(sphere_measure(x, r)?.integrate(|y| u.value(y), tol)?.value)
}

/// Per-function outcome of the radial-limit isometry check.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryRow {
    pub name: String,
    pub interior_sup: f64,
    pub boundary_sup: f64,
    pub sup_difference: f64,
    /// `max |𝔓(u*)(x) − u(x)|` over the sample points.
    pub left_inverse_error: f64,
}

/// Cayley-coordinate radii of the interior grid.
pub const ISOMETRY_RADII: [f64; 12] = [
    0.0, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99, 0.995, 0.999, 0.9995, 0.9999, 0.99999,
];
pub const ISOMETRY_ANGLES: usize = 2048;

/// Compare `sup |u|` on a dense interior grid with `ess-sup |u*|` on a dense
/// `θ`-grid, and check `𝔓(u*) = u` at `samples`.
pub fn radial_limit_isometry_check(
    family: &[TestFunction],
    x0: &HalfPlanePoint,
    samples: &[HalfPlanePoint],
    tol: f64,
) -> Result<Vec<IsometryRow>> {
    let mut rows = Vec::with_capacity(family.len());
    for u in family {
        if !u.is_pluriharmonic() {
            return Err(Error::InvalidParameter("isometry check needs pluriharmonic functions"));
        }
        let mut interior: f64 = 0.0;
        for &r in ISOMETRY_RADII.iter() {
            for k in 0..ISOMETRY_ANGLES {
                let z = Complex64::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / ISOMETRY_ANGLES as f64);
                let tau = Complex64::new(0.0, 1.0) * (Complex64::new(1.0, 0.0) + z) / (Complex64::new(1.0, 0.0) - z);
                interior = interior.max(u.value(&HalfPlanePoint::from_complex(tau)?).abs());
            }
        }
        let ustar = BoundaryFunction::radial_limit_of(u);
        let mut boundary: f64 = 0.0;
        for k in 0..ISOMETRY_ANGLES {
            boundary = boundary.max(ustar.eval(PI * (k as f64 + 0.5) / ISOMETRY_ANGLES as f64).abs());
        }
        let mut left_inverse: f64 = 0.0;
        for x in samples {
            left_inverse = left_inverse.max((poisson_integral(&ustar, x0, x, tol)? - u.value(x)).abs());
        }
        rows.push(IsometryRow {
            name: String::from(u.name()),
            interior_sup: interior,
            boundary_sup: boundary,
            sup_difference: (interior - boundary).abs(),
            left_inverse_error: left_inverse,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::ExtendedReal;
    use alloc::vec;

    fn pt(a: f64, b: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(a, b).unwrap()
    }

    fn find(name: &str) -> TestFunction {
        builtin_families().into_iter().find(|f| f.name() == name).unwrap()
    }

    #[test]
    fn radial_limit_examples() {
        let u = find("re_cayley");
        let x = pt(0.0, 1.0);
        for ((p, q), expected) in [((1.0, 0.0), 1.0), ((0.0, 1.0), -1.0), ((1.0, 1.0), 0.0)] {
            let l = Lamination::new(p, q).unwrap();
            let v = radial_limit(&u, &l, &x, 1e-10).unwrap();
            assert!((v - expected).abs() < 1e-9, "{p},{q}: {v}");
        }
    }

    #[test]
    fn radial_limit_matches_boundary_extension() {
        let x = pt(0.4, 0.8);
        for u in builtin_families() {
            for theta in [0.1, 1.0, 2.0, 3.0] {
                let l = Lamination::unit(theta);
                let v = radial_limit(&u, &l, &x, 1e-10).unwrap();
                let expected = u.boundary_value(crate::surface::ray_endpoint(&l));
                assert!((v - expected).abs() < 1e-8, "{} at {theta}", u.name());
            }
        }
    }

    #[test]
    fn poisson_examples() {
        let x0 = pt(0.0, 1.0);
        let one = BoundaryFunction::constant(1.0);
        for x in [pt(0.0, 1.0), pt(3.0, 0.2), pt(-1.0, 5.0)] {
            assert!((poisson_integral(&one, &x0, &x, 1e-12).unwrap() - 1.0).abs() < 1e-11);
        }
        let u = find("re_cayley");
        let ustar = BoundaryFunction::radial_limit_of(&u);
        assert!(poisson_integral(&ustar, &x0, &x0, 1e-12).unwrap().abs() < 1e-12);
        // oracle: ∫ (s²−1)/(1+s²)² ds = 0 on the line
        let oracle = crate::quadrature::integrate_real_line(|s| (s * s - 1.0) / (PI * (1.0 + s * s).powi(2)), 1e-13)
            .unwrap();
        assert!(oracle.value.abs() < 1e-13);
        let x = pt(0.7, 0.4);
        assert!((poisson_integral(&ustar, &x0, &x, 1e-12).unwrap() - u.value(&x)).abs() < 1e-9);
    }

    #[test]
    fn poisson_is_a_contraction_on_steps() {
        let g = BoundaryFunction::step(vec![0.0, 0.4, 1.9, PI], vec![0.8, -1.0, 0.3]).unwrap();
        let x0 = pt(0.0, 1.0);
        for x in [pt(0.0, 0.1), pt(2.0, 1.0), pt(-0.3, 7.0)] {
            assert!(poisson_integral(&g, &x0, &x, 1e-12).unwrap().abs() <= 1.0);
        }
    }

    #[test]
    fn gradient_of_constant_vanishes() {
        let g = BoundaryFunction::constant(1.0);
        let grad = poisson_gradient(&g, &pt(0.0, 1.0), &pt(0.3, 0.6), 1e-12).unwrap();
        assert!(grad.d10.norm() < 1e-10);
    }

    #[test]
    fn gradient_reproduces_harmonic_gradient() {
        let u = find("re_disk_automorphism");
        let ustar = BoundaryFunction::radial_limit_of(&u);
        let x0 = pt(0.0, 1.0);
        let x = pt(0.5, 1.3);
        let (ga, gb) = poisson_gradient(&ustar, &x0, &x, 1e-12).unwrap().real_gradient();
        let h = 1e-5;
        let fa = (u.value(&pt(0.5 + h, 1.3)) - u.value(&pt(0.5 - h, 1.3))) / (2.0 * h);
        let fb = (u.value(&pt(0.5, 1.3 + h)) - u.value(&pt(0.5, 1.3 - h))) / (2.0 * h);
        assert!((ga - fa).abs() < 1e-8 && (gb - fb).abs() < 1e-8, "{ga} {fa} {gb} {fb}");
    }

    #[test]
    fn mean_value_examples() {
        let x = pt(0.0, 1.0);
        let c = TestFunction::constant("c", -0.3).unwrap();
        assert!((mean_value(&c, &x, 1.0, 1e-12).unwrap() + 0.3).abs() < 1e-12);
        let u = find("re_cayley");
        assert!(mean_value(&u, &x, 1.0, 1e-12).unwrap().abs() < 1e-10);
        let v = find("abs_ratio");
        let y = pt(0.2, 0.9);
        assert!(mean_value(&v, &y, 0.8, 1e-12).unwrap() >= v.value(&y) - 1e-9);
    }

    #[test]
    fn isometry_check_on_cayley() {
        let u = find("re_cayley");
        let rows = radial_limit_isometry_check(&[u], &pt(0.0, 1.0), &[pt(0.5, 0.5)], 1e-10).unwrap();
        assert!(rows[0].sup_difference < 1e-3);
        assert!((rows[0].boundary_sup - 1.0).abs() < 1e-3);
        assert!(rows[0].left_inverse_error < 1e-8);
    }

    #[test]
    fn boundary_function_of_limits_uses_endpoints() {
        let u = find("re_cayley");
        let ustar = BoundaryFunction::radial_limit_of(&u);
        let theta = crate::surface::angle_of_endpoint(ExtendedReal::Finite(-1.0));
        assert!(ustar.eval(theta).abs() < 1e-15);
        assert!((ustar.eval(0.0) - 1.0).abs() < 1e-15);
    }
}
