//! Closed-form geometry of the Teichmüller space of the once-punctured torus.
//!
//! The space is modelled by the upper half-plane: a point `τ = a + bi` is the
//! flat torus `ℂ/(ℤ + τℤ)`, and a measured lamination is a nonzero real pair
//! `(p, q)` whose transverse measure against the curve `(p', q')` is
//! `|p q' − q p'|`. Every quantity below has a closed form:
//!
//! | quantity | formula |
//! |----------|---------|
//! | extremal length | `Ext_τ(p, q) = |p + qτ|² / b` |
//! | Teichmüller distance | half the curvature −1 hyperbolic distance |
//! | Hubbard–Masur differential | `w (dz)²` with `√w = −(i/b)(p + q τ̄)` |
//! | ray endpoint | `−p/q ∈ ℝ ∪ {∞}` |
//!
//! With this normalization the extremal length of the vertical lamination
//! decays exactly like `e^{−2t}` along a unit-speed Teichmüller ray.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point `τ = a + bi` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    a: f64,
    b: f64,
}

impl HalfPlanePoint {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFinite("half-plane point"));
        }
        if b <= 0.0 {
            return Err(Error::NotInUpperHalfPlane(b));
        }
        Ok(Self { a, b })
    }

    pub fn from_complex(tau: Complex64) -> Result<Self> {
        Self::new(tau.re, tau.im)
    }

    /// The square torus `τ = i`.
    pub const fn i() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }
}

/// A measured lamination on the once-punctured torus, as transverse weights `(p, q)`.
///
/// Rational slope `p/q` is a weighted simple closed curve; irrational slope is
/// minimal, filling and uniquely ergodic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lamination {
    p: f64,
    q: f64,
}

impl Lamination {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() {
            return Err(Error::NonFinite("lamination"));
        }
        if p == 0.0 && q == 0.0 {
            return Err(Error::ZeroLamination);
        }
        Ok(Self { p, q })
    }

    /// Unit-weight lamination in direction `θ`, i.e. `(cos θ, sin θ)`.
    pub fn unit(theta: f64) -> Self {
        Self {
            p: theta.cos(),
            q: theta.sin(),
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `t·λ` for `t > 0`.
    pub fn scale(&self, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter("lamination scale must be positive"));
        }
        Self::new(self.p * t, self.q * t)
    }

    pub fn projective(&self) -> ProjectiveLamination {
        ProjectiveLamination::from_angle(self.q.atan2(self.p))
    }

    /// Total transverse measure as the Euclidean length of `(p, q)`.
    pub fn weight(&self) -> f64 {
        self.p.hypot(self.q)
    }

    /// Whether `self` and `other` agree up to sign and relative tolerance `tol`.
    pub fn approx_eq_up_to_sign(&self, other: &Lamination, tol: f64) -> bool {
        let scale = self.weight().max(other.weight());
        let plus = (self.p - other.p).hypot(self.q - other.q);
        let minus = (self.p + other.p).hypot(self.q + other.q);
        plus.min(minus) <= tol * scale
    }
}

/// Whether a direction is a simple closed curve (rational slope) or generic.
///
/// Directions produced from floating-point angles are treated as generic:
/// rational slopes form a null set and only matter where a formula branches
/// on them explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionKind {
    Generic,
    Curve,
}

/// A projective measured lamination, stored as the angle `θ ∈ [0, π)` of `(p, q)` mod ±1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveLamination {
    theta: f64,
    kind: DirectionKind,
}

impl ProjectiveLamination {
    pub fn from_angle(theta: f64) -> Self {
        Self {
            theta: reduce_mod_pi(theta),
            kind: DirectionKind::Generic,
        }
    }

    /// The class of the simple closed curve with integer weights `(p, q)`.
    pub fn curve(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::ZeroLamination);
        }
        Ok(Self {
            theta: reduce_mod_pi((q as f64).atan2(p as f64)),
            kind: DirectionKind::Curve,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn kind(&self) -> DirectionKind {
        self.kind
    }

    pub fn unit_lamination(&self) -> Lamination {
        Lamination::unit(self.theta)
    }

    /// Boundary slope `−cot θ` reached by rays in this direction.
    pub fn endpoint(&self) -> ExtendedReal {
        ray_endpoint(&self.unit_lamination())
    }
}

/// Reduce an angle into `[0, π)`.
pub fn reduce_mod_pi(theta: f64) -> f64 {
    let r = theta.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// The PML angle whose rays end at the boundary point `s`, inverting `s = −cot θ`.
pub fn angle_of_endpoint(s: ExtendedReal) -> f64 {
    match s {
        ExtendedReal::Finite(s) => PI / 2.0 + s.atan(),
        ExtendedReal::Infinity => 0.0,
    }
}

/// A point of `ℝ ∪ {∞}`, the boundary of the half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            ExtendedReal::Finite(s) => Some(s),
            ExtendedReal::Infinity => None,
        }
    }
}

impl core::fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ExtendedReal::Finite(s) => write!(f, "{s}"),
            ExtendedReal::Infinity => f.write_str("inf"),
        }
    }
}

/// A holomorphic quadratic differential `w (dz)²` on the torus at `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadDifferential {
    base: HalfPlanePoint,
    w: Complex64,
}

impl QuadDifferential {
    pub fn new(base: HalfPlanePoint, w: Complex64) -> Result<Self> {
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::NonFinite("quadratic differential"));
        }
        if w.re == 0.0 && w.im == 0.0 {
            return Err(Error::ZeroDifferential);
        }
        Ok(Self { base, w })
    }

    pub fn base(&self) -> HalfPlanePoint {
        self.base
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    /// `‖q‖ = |w| · Im τ`, the area of the flat metric `|q|`.
    pub fn norm(&self) -> f64 {
        self.w.norm() * self.base.b
    }

    /// `e^{iα} q`.
    pub fn rotate(&self, alpha: f64) -> Self {
        Self {
            base: self.base,
            w: self.w * Complex64::from_polar(1.0, alpha),
        }
    }

    /// `−q`, whose vertical lamination is the horizontal lamination of `q`.
    pub fn negate(&self) -> Self {
        Self {
            base: self.base,
            w: -self.w,
        }
    }
}

/// `i(λ₁, λ₂) = |p₁q₂ − p₂q₁|`.
pub fn intersection_number(l1: &Lamination, l2: &Lamination) -> f64 {
    (l1.p * l2.q - l2.p * l1.q).abs()
}

/// `Ext_x(λ) = |p + qτ|² / Im τ`.
pub fn extremal_length(x: &HalfPlanePoint, lambda: &Lamination) -> f64 {
    let re = lambda.p + lambda.q * x.a;
    let im = lambda.q * x.b;
    (re * re + im * im) / x.b
}

/// The Hubbard–Masur differential of `λ` at `x`.
///
/// Matching `|Re(√w (p' + q'τ))|` against `|p q' − q p'|` for every curve
/// `(p', q')` forces `Re √w = −q` and `Re(√w τ) = p`, hence
/// `√w = −(i/b)(p + q τ̄)`.
pub fn hm_differential(x: &HalfPlanePoint, lambda: &Lamination) -> QuadDifferential {
    let c = Complex64::new(-lambda.q, -(lambda.p + lambda.q * x.a) / x.b);
    QuadDifferential { base: *x, w: c * c }
}

/// Vertical lamination `v(q)`: the transverse measure of the curve `(p', q')` is
/// `|Re(√w (p' + q'τ))|`.
pub fn vertical_lamination(q: &QuadDifferential) -> Lamination {
    lamination_of_root(&q.base, q.w.sqrt())
}

/// Horizontal lamination `h(q) = v(−q)`.
pub fn horizontal_lamination(q: &QuadDifferential) -> Lamination {
    vertical_lamination(&q.negate())
}

fn lamination_of_root(base: &HalfPlanePoint, c: Complex64) -> Lamination {
    // Re(c τ) = a Re c − b Im c
    Lamination {
        p: base.a * c.re - base.b * c.im,
        q: -c.re,
    }
}

/// `[v(e^{−iθ} q)]`, the direction swept by the Teichmüller disk of `q`.
///
/// With `c = √w e^{−iθ/2}` this is `(Re(cτ), −Re c)`; at `τ = i`, `w = 1` it reduces to
/// `(−sin(θ/2), cos(θ/2))` up to sign.
pub fn lamination_of_angle(q: &QuadDifferential, theta: f64) -> ProjectiveLamination {
    let c = q.w.sqrt() * Complex64::from_polar(1.0, -theta / 2.0);
    lamination_of_root(&q.base, c).projective()
}

/// Inverse of [`lamination_of_angle`]: the disk angle in `[0, 2π)` whose lamination is `phi`.
pub fn angle_of_lamination(q: &QuadDifferential, phi: &ProjectiveLamination) -> f64 {
    let lam = phi.unit_lamination();
    let base = q.base;
    // invert λ = (a x − b y, −x) for c = x + iy
    let x = -lam.q;
    let y = (base.a * x - lam.p) / base.b;
    let ratio = Complex64::new(x, y) / q.w.sqrt();
    (-2.0 * ratio.arg()).rem_euclid(2.0 * PI)
}

/// `d_T(x, y)`: half the hyperbolic distance in the curvature −1 metric on the half-plane.
pub fn teich_distance(x: &HalfPlanePoint, y: &HalfPlanePoint) -> f64 {
    let chord = (x.a - y.a).hypot(x.b - y.b);
    (chord / (2.0 * (x.b * y.b).sqrt())).asinh()
}

/// Boundary point `−p/q` toward which `Ext(·, λ)` vanishes.
pub fn ray_endpoint(lambda: &Lamination) -> ExtendedReal {
    if lambda.q == 0.0 {
        ExtendedReal::Infinity
    } else {
        ExtendedReal::Finite(-lambda.p / lambda.q)
    }
}

/// A unit-speed Teichmüller geodesic ray contracting its vertical lamination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicRay {
    origin: HalfPlanePoint,
    lamination: Lamination,
    endpoint: ExtendedReal,
}

pub fn geodesic_ray(x: &HalfPlanePoint, lambda: &Lamination) -> GeodesicRay {
    GeodesicRay {
        origin: *x,
        lamination: *lambda,
        endpoint: ray_endpoint(lambda),
    }
}

impl GeodesicRay {
    pub fn origin(&self) -> HalfPlanePoint {
        self.origin
    }

    pub fn lamination(&self) -> Lamination {
        self.lamination
    }

    pub fn endpoint(&self) -> ExtendedReal {
        self.endpoint
    }

    /// The point at Teichmüller distance `t ≥ 0` from the origin.
    ///
    /// This is `Φ_q(tanh t)` for the Hubbard–Masur differential `q = c²`,
    /// rewritten in terms of `c` and `m = 1 − tanh t` so that no endpoint
    /// division or `1 − tanh t` cancellation occurs:
    /// `τ = a + ib (2i Im c + c̄ m) / (2 Re c − c̄ m)`.
    pub fn evaluate(&self, t: f64) -> HalfPlanePoint {
        if t == 0.0 {
            return self.origin;
        }
        let o = self.origin;
        let c = Complex64::new(
            -self.lamination.q,
            -(self.lamination.p + self.lamination.q * o.a) / o.b,
        );
        let m = 2.0 / ((2.0 * t).exp() + 1.0);
        let num = Complex64::new(0.0, 2.0 * c.im) + c.conj() * m;
        let den = Complex64::new(2.0 * c.re, 0.0) - c.conj() * m;
        let ratio = num / den;
        // i·b·ratio
        HalfPlanePoint {
            a: o.a - o.b * ratio.im,
            b: o.b * ratio.re,
        }
    }
}

/// The Teichmüller disk `Φ_q: 𝔻 → T₁,₁` of a quadratic differential.
///
/// It satisfies `Φ_q(tanh(t) e^{iθ}) = r^x_{v(e^{−iθ}q)}(t)`; with the
/// curvature −4 Poincaré metric on `𝔻` it is an isometry onto the half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeichmullerDisk {
    base: HalfPlanePoint,
    rotation: Complex64,
}

pub fn teichmuller_disk(q: &QuadDifferential) -> TeichmullerDisk {
    TeichmullerDisk {
        base: q.base,
        rotation: q.w.conj() / q.w.norm(),
    }
}

impl TeichmullerDisk {
    pub fn base(&self) -> HalfPlanePoint {
        self.base
    }

    /// `Φ_q(z)` for `|z| < 1`.
    pub fn evaluate(&self, z: Complex64) -> Result<HalfPlanePoint> {
        if !(z.norm() < 1.0) {
            return Err(Error::InvalidParameter("disk argument must satisfy |z| < 1"));
        }
        let zeta = self.rotation * z;
        let one = Complex64::new(1.0, 0.0);
        let cayley = Complex64::new(0.0, self.base.b) * (one - zeta) / (one + zeta);
        HalfPlanePoint::new(self.base.a + cayley.re, cayley.im)
    }
}

/// Poincaré distance on the unit disk scaled to curvature −4, so that `d(0, tanh t) = t`.
pub fn disk_distance(z1: Complex64, z2: Complex64) -> f64 {
    let num = (z1 - z2).norm();
    let den = (Complex64::new(1.0, 0.0) - z1.conj() * z2).norm();
    (num / den).atanh()
}
