//! Closed-form bounded holomorphic, pluriharmonic and plurisubharmonic test functions.
//!
//! On the once-punctured torus pluriharmonic means harmonic and plurisubharmonic
//! means subharmonic, so every family is built from bounded holomorphic maps
//! of the half-plane: Blaschke products in the Cayley coordinate
//! `z = (τ − i)/(τ + i)` and linear fractional maps with a pole in the lower
//! half-plane. All of them extend continuously to `ℝ ∪ {∞}`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::surface::{ExtendedReal, HalfPlanePoint, ProjectiveLamination};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Cayley coordinate `z = (τ − i)/(τ + i)` of a point of the closed half-plane.
pub fn cayley(tau: Complex64) -> Complex64 {
    (tau - I) / (tau + I)
}

fn cayley_boundary(s: ExtendedReal) -> Complex64 {
    match s {
        ExtendedReal::Finite(s) => cayley(Complex64::new(s, 0.0)),
        ExtendedReal::Infinity => ONE,
    }
}

/// A bounded holomorphic function on the upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub enum Holomorphic {
    Constant(Complex64),
    /// `e^{iφ} Π (z − α)/(1 − ᾱ z)` in the Cayley coordinate, `|α| < 1`.
    Blaschke { rotation: f64, zeros: Vec<Complex64> },
    /// `(aτ + b)/(cτ + d)` with its pole `−d/c` in the open lower half-plane.
    Mobius {
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    },
    Product(Vec<Holomorphic>),
}

impl Holomorphic {
    pub fn cayley_map() -> Self {
        Holomorphic::Blaschke {
            rotation: 0.0,
            zeros: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Holomorphic::Constant(_) => Ok(()),
            Holomorphic::Blaschke { zeros, .. } => {
                if zeros.iter().all(|z| z.norm() < 1.0) {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter("Blaschke zeros must lie in the open unit disk"))
                }
            }
            Holomorphic::Mobius { c, d, .. } => {
                if c.norm() == 0.0 {
                    return Err(Error::InvalidParameter("linear fractional map must have a finite pole"));
                }
                if (-d / c).im >= 0.0 {
                    return Err(Error::InvalidParameter("pole must lie in the open lower half-plane"));
                }
                Ok(())
            }
            Holomorphic::Product(fs) => fs.iter().try_for_each(Holomorphic::validate),
        }
    }

    pub fn eval(&self, tau: Complex64) -> Complex64 {
        match self {
            Holomorphic::Constant(c) => *c,
            Holomorphic::Blaschke { rotation, zeros } => blaschke(*rotation, zeros, cayley(tau)),
            Holomorphic::Mobius { a, b, c, d } => (a * tau + b) / (c * tau + d),
            Holomorphic::Product(fs) => fs.iter().map(|f| f.eval(tau)).product(),
        }
    }

    /// Continuous extension to the boundary point `s`.
    pub fn boundary(&self, s: ExtendedReal) -> Complex64 {
        match self {
            Holomorphic::Constant(c) => *c,
            Holomorphic::Blaschke { rotation, zeros } => blaschke(*rotation, zeros, cayley_boundary(s)),
            Holomorphic::Mobius { a, b, c, d } => match s {
                ExtendedReal::Finite(s) => (a * s + b) / (c * s + d),
                ExtendedReal::Infinity => a / c,
            },
            Holomorphic::Product(fs) => fs.iter().map(|f| f.boundary(s)).product(),
        }
    }

    /// An analytic upper bound for `sup |f|` on the half-plane.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Holomorphic::Constant(c) => c.norm(),
            Holomorphic::Blaschke { .. } => 1.0,
            Holomorphic::Mobius { .. } => {
                // the image of ℝ ∪ {∞} is a circle bounding the image of ℍ
                let z1 = self.boundary(ExtendedReal::Finite(0.0));
                let z2 = self.boundary(ExtendedReal::Finite(1.0));
                let z3 = self.boundary(ExtendedReal::Infinity);
                match circumcircle(z1, z2, z3) {
                    Some((center, radius)) => center.norm() + radius,
                    None => z1.norm().max(z2.norm()).max(z3.norm()),
                }
            }
            Holomorphic::Product(fs) => fs.iter().map(Holomorphic::sup_bound).product(),
        }
    }
}

fn blaschke(rotation: f64, zeros: &[Complex64], z: Complex64) -> Complex64 {
    zeros
        .iter()
        .fold(Complex64::from_polar(1.0, rotation), |acc, a| acc * (z - a) / (ONE - a.conj() * z))
}

fn circumcircle(z1: Complex64, z2: Complex64, z3: Complex64) -> Option<(Complex64, f64)> {
    let w = (z3 - z1) / (z2 - z1);
    if !w.re.is_finite() || w.im.abs() < 1e-14 {
        return None;
    }
    let center = (z2 - z1) * (w - w.norm_sqr()) / (w - w.conj()) + z1;
    Some((center, (center - z1).norm()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Holomorphic,
    Pluriharmonic,
    Psh,
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionKind::Holomorphic => "holomorphic",
            FunctionKind::Pluriharmonic => "pluriharmonic",
            FunctionKind::Psh => "psh",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    /// real-valued view is `Re f`
    Holomorphic(Holomorphic),
    /// `k + Σ Re(c_j f_j)`
    RealParts {
        constant: f64,
        terms: Vec<(Complex64, Holomorphic)>,
    },
    /// `|f|^α`
    Modulus { f: Holomorphic, power: f64 },
}

/// A member of a closed-form family with a certified sup bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    name: String,
    kind: FunctionKind,
    expr: Expr,
    bound: f64,
    log_psh: bool,
}

/// Radii (Cayley coordinate) and angles of the grid used to spot-check bounds.
const CERTIFY_RADII: [f64; 8] = [0.0, 0.3, 0.6, 0.8, 0.9, 0.97, 0.99, 0.999];
const CERTIFY_ANGLES: usize = 128;

impl TestFunction {
    pub fn holomorphic(name: &str, f: Holomorphic) -> Result<Self> {
        f.validate()?;
        let bound = f.sup_bound();
        Self::certified(name, FunctionKind::Holomorphic, Expr::Holomorphic(f), bound, false)
    }

    /// `k + Σ Re(c_j f_j)`, pluriharmonic.
    pub fn real_part(name: &str, constant: f64, terms: Vec<(Complex64, Holomorphic)>) -> Result<Self> {
        for (_, f) in &terms {
            f.validate()?;
        }
        let bound = constant.abs() + terms.iter().map(|(c, f)| c.norm() * f.sup_bound()).sum::<f64>();
        Self::certified(
            name,
            FunctionKind::Pluriharmonic,
            Expr::RealParts { constant, terms },
            bound,
            false,
        )
    }

    pub fn constant(name: &str, c: f64) -> Result<Self> {
        Self::real_part(name, c, Vec::new())
    }

    /// `|f|^α` with `α > 0`: plurisubharmonic, and so is its logarithm `α log|f|`.
    pub fn modulus(name: &str, f: Holomorphic, power: f64) -> Result<Self> {
        if !(power > 0.0) {
            return Err(Error::InvalidParameter("modulus power must be positive"));
        }
        f.validate()?;
        let bound = f.sup_bound().powf(power);
        Self::certified(name, FunctionKind::Psh, Expr::Modulus { f, power }, bound, true)
    }

    fn certified(name: &str, kind: FunctionKind, expr: Expr, bound: f64, log_psh: bool) -> Result<Self> {
        let tf = Self {
            name: name.to_string(),
            kind,
            expr,
            bound,
            log_psh,
        };
        let slack = 1e-12 * bound.max(1.0);
        for &r in CERTIFY_RADII.iter() {
            for k in 0..CERTIFY_ANGLES {
                let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / CERTIFY_ANGLES as f64);
                let tau = I * (ONE + z) / (ONE - z);
                let v = tf.value_at(tau).abs();
                if !(v <= bound + slack) {
                    return Err(Error::BoundNotCertified { value: v, bound });
                }
            }
        }
        Ok(tf)
    }

    /// `a·u₁ + b·u₂` for pluriharmonic members.
    pub fn linear_combination(name: &str, a: f64, u1: &TestFunction, b: f64, u2: &TestFunction) -> Result<Self> {
        let (k1, t1) = u1.real_parts()?;
        let (k2, t2) = u2.real_parts()?;
        let terms = t1
            .into_iter()
            .map(|(c, f)| (c * a, f))
            .chain(t2.into_iter().map(|(c, f)| (c * b, f)))
            .collect();
        Self::real_part(name, a * k1 + b * k2, terms)
    }

    fn real_parts(&self) -> Result<(f64, Vec<(Complex64, Holomorphic)>)> {
        match &self.expr {
            Expr::RealParts { constant, terms } => Ok((*constant, terms.clone())),
            Expr::Holomorphic(f) => Ok((0.0, vec![(ONE, f.clone())])),
            Expr::Modulus { .. } => Err(Error::InvalidParameter("psh functions do not form a linear family")),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn log_psh(&self) -> bool {
        self.log_psh
    }

    pub fn is_pluriharmonic(&self) -> bool {
        matches!(self.kind, FunctionKind::Pluriharmonic | FunctionKind::Holomorphic)
    }

    /// Real value at `x`; holomorphic members report `Re f`.
    pub fn value(&self, x: &HalfPlanePoint) -> f64 {
        self.value_at(x.tau())
    }

    fn value_at(&self, tau: Complex64) -> f64 {
        match &self.expr {
            Expr::Holomorphic(f) => f.eval(tau).re,
            Expr::RealParts { constant, terms } => {
                constant + terms.iter().map(|(c, f)| (c * f.eval(tau)).re).sum::<f64>()
            }
            Expr::Modulus { f, power } => f.eval(tau).norm().powf(*power),
        }
    }

    /// The complex value for holomorphic members.
    pub fn complex_value(&self, x: &HalfPlanePoint) -> Option<Complex64> {
        match &self.expr {
            Expr::Holomorphic(f) => Some(f.eval(x.tau())),
            _ => None,
        }
    }

    /// Continuous boundary extension at `s ∈ ℝ ∪ {∞}`.
    pub fn boundary_value(&self, s: ExtendedReal) -> f64 {
        match &self.expr {
            Expr::Holomorphic(f) => f.boundary(s).re,
            Expr::RealParts { constant, terms } => {
                constant + terms.iter().map(|(c, f)| (c * f.boundary(s)).re).sum::<f64>()
            }
            Expr::Modulus { f, power } => f.boundary(s).norm().powf(*power),
        }
    }
}

/// The documented builtin families.
pub fn builtin_families() -> Vec<TestFunction> {
    let ratio = Holomorphic::Mobius {
        a: ONE,
        b: Complex64::new(0.0, 0.0),
        c: ONE,
        d: I,
    };
    let shifted = Holomorphic::Mobius {
        a: ONE,
        b: Complex64::new(-1.0, 0.0),
        c: ONE,
        d: Complex64::new(0.0, 2.0),
    };
    let disk_auto = Holomorphic::Blaschke {
        rotation: 0.7,
        zeros: vec![Complex64::new(0.3, 0.2)],
    };
    let two_factor = Holomorphic::Blaschke {
        rotation: -0.4,
        zeros: vec![Complex64::new(0.0, 0.5), Complex64::new(-0.4, 0.1)],
    };
    let build = || -> Result<Vec<TestFunction>> {
        Ok(vec![
            TestFunction::holomorphic("cayley", Holomorphic::cayley_map())?,
            TestFunction::holomorphic("ratio", ratio.clone())?,
            TestFunction::constant("constant", 0.6)?,
            TestFunction::real_part("re_cayley", 0.0, vec![(ONE, Holomorphic::cayley_map())])?,
            TestFunction::real_part("im_cayley", 0.0, vec![(-I, Holomorphic::cayley_map())])?,
            TestFunction::real_part("re_disk_automorphism", 0.0, vec![(ONE, disk_auto.clone())])?,
            TestFunction::real_part("im_blaschke2", 0.0, vec![(-I, two_factor.clone())])?,
            TestFunction::real_part("re_ratio", 0.0, vec![(ONE, ratio.clone())])?,
            TestFunction::real_part(
                "mixed",
                0.25,
                vec![
                    (Complex64::new(0.5, 0.0), two_factor.clone()),
                    (Complex64::new(0.0, 0.2), ratio.clone()),
                    (Complex64::new(0.1, -0.3), shifted.clone()),
                ],
            )?,
            TestFunction::modulus("abs_ratio", ratio.clone(), 1.0)?,
            TestFunction::modulus("abs_ratio_sqrt", ratio.clone(), 0.5)?,
            TestFunction::modulus("abs_shifted", shifted.clone(), 1.0)?,
            TestFunction::modulus(
                "abs_blaschke_ratio",
                Holomorphic::Product(vec![disk_auto.clone(), ratio.clone()]),
                1.5,
            )?,
            TestFunction::modulus("abs_cayley", Holomorphic::cayley_map(), 2.0)?,
        ])
    };
    build().expect("builtin family parameters are valid")
}

pub fn pluriharmonic_families() -> Vec<TestFunction> {
    builtin_families()
        .into_iter()
        .filter(|f| f.kind() == FunctionKind::Pluriharmonic)
        .collect()
}

pub fn psh_families() -> Vec<TestFunction> {
    builtin_families()
        .into_iter()
        .filter(|f| f.kind() == FunctionKind::Psh)
        .collect()
}

/// An essentially bounded function on `PML`, with the angles where it may jump.
pub struct BoundaryFunction {
    label: String,
    breakpoints: Vec<f64>,
    values: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryFunction")
            .field("label", &self.label)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

impl BoundaryFunction {
    pub fn from_fn<F: Fn(f64) -> f64 + Send + Sync + 'static>(label: &str, f: F) -> Self {
        Self {
            label: label.to_string(),
            breakpoints: Vec::new(),
            values: Box::new(f),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_fn("constant", move |_| c)
    }

    /// Piecewise constant: `values[k]` on `[edges[k], edges[k+1])`, with `edges` spanning `[0, π]`.
    pub fn step(edges: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if edges.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::InvalidParameter("step function needs one more edge than values"));
        }
        if edges.windows(2).any(|w| !(w[0] < w[1])) || edges[0] != 0.0 || edges[edges.len() - 1] != PI {
            return Err(Error::InvalidParameter("step edges must increase from 0 to pi"));
        }
        let breakpoints = edges[1..edges.len() - 1].to_vec();
        let cuts = breakpoints.clone();
        Ok(Self {
            label: "step".to_string(),
            breakpoints,
            values: Box::new(move |t| {
                let k = cuts.partition_point(|&c| c <= t);
                values[k]
            }),
        })
    }

    /// `u*` from the continuous boundary extension of a closed-form family.
    pub fn radial_limit_of(u: &TestFunction) -> Self {
        let u = u.clone();
        let label = alloc::format!("radial_limit({})", u.name());
        Self {
            label,
            breakpoints: Vec::new(),
            values: Box::new(move |t| u.boundary_value(ProjectiveLamination::from_angle(t).endpoint())),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn eval(&self, theta: f64) -> f64 {
        (self.values)(theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: f64, b: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(a, b).unwrap()
    }

    fn find(name: &str) -> TestFunction {
        builtin_families().into_iter().find(|f| f.name() == name).unwrap()
    }

    #[test]
    fn builtins_are_all_present() {
        let fams = builtin_families();
        assert_eq!(fams.len(), 14);
        assert!(pluriharmonic_families().len() >= 5);
        assert!(psh_families().iter().all(|f| f.log_psh()));
    }

    #[test]
    fn cayley_examples() {
        let f = find("cayley");
        assert_eq!(f.bound(), 1.0);
        assert!(f.complex_value(&pt(0.0, 1.0)).unwrap().norm() < 1e-16);
        let u = find("re_cayley");
        assert_eq!(u.bound(), 1.0);
        assert!(u.value(&pt(0.0, 1.0)).abs() < 1e-16);
        assert!((u.boundary_value(ExtendedReal::Infinity) - 1.0).abs() < 1e-16);
        assert!((u.boundary_value(ExtendedReal::Finite(0.0)) + 1.0).abs() < 1e-16);
    }

    #[test]
    fn ratio_examples() {
        let f = find("ratio");
        assert!((f.complex_value(&pt(0.0, 1.0)).unwrap() - Complex64::new(0.5, 0.0)).norm() < 1e-16);
        assert!((f.bound() - 1.0).abs() < 1e-12);
        let v = find("abs_ratio");
        for s in [-3.0f64, -0.2, 0.0, 1.0, 8.0] {
            let expected = s.abs() / (s * s + 1.0).sqrt();
            assert!((v.boundary_value(ExtendedReal::Finite(s)) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn mobius_bound_is_tight() {
        // |(τ − 1)/(τ + 2i)| on ℝ peaks where the image circle is farthest from 0
        let f = find("abs_shifted");
        let mut sampled: f64 = 0.0;
        for k in 0..200_000 {
            let s = -50.0 + k as f64 * 5e-4;
            sampled = sampled.max(f.boundary_value(ExtendedReal::Finite(s)));
        }
        assert!(f.bound() >= sampled);
        assert!(f.bound() - sampled < 1e-6);
    }

    #[test]
    fn certification_rejects_understated_bounds() {
        let f = Holomorphic::Mobius {
            a: Complex64::new(3.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: ONE,
            d: I,
        };
        let expr = Expr::Holomorphic(f);
        let err = TestFunction::certified("bad", FunctionKind::Holomorphic, expr, 1.0, false).unwrap_err();
        assert!(matches!(err, Error::BoundNotCertified { .. }));
    }

    #[test]
    fn invalid_parameters() {
        let upper_pole = Holomorphic::Mobius {
            a: ONE,
            b: Complex64::new(0.0, 0.0),
            c: ONE,
            d: -I,
        };
        assert!(TestFunction::holomorphic("x", upper_pole).is_err());
        let outside = Holomorphic::Blaschke {
            rotation: 0.0,
            zeros: vec![Complex64::new(1.0, 0.0)],
        };
        assert!(TestFunction::holomorphic("x", outside).is_err());
        assert!(TestFunction::modulus("x", Holomorphic::cayley_map(), 0.0).is_err());
        let v = find("abs_ratio");
        assert!(TestFunction::linear_combination("x", 1.0, &v, 1.0, &v).is_err());
    }

    #[test]
    fn linear_combination_is_pointwise() {
        let u1 = find("re_cayley");
        let u2 = find("mixed");
        let c = TestFunction::linear_combination("c", 2.0, &u1, -0.5, &u2).unwrap();
        for x in [pt(0.0, 1.0), pt(-2.0, 0.3), pt(1.5, 4.0)] {
            let expected = 2.0 * u1.value(&x) - 0.5 * u2.value(&x);
            assert!((c.value(&x) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn step_function_evaluation() {
        let g = BoundaryFunction::step(vec![0.0, 1.0, 2.0, PI], vec![1.0, -2.0, 0.5]).unwrap();
        assert_eq!(g.eval(0.5), 1.0);
        assert_eq!(g.eval(1.0), -2.0);
        assert_eq!(g.eval(3.0), 0.5);
        assert_eq!(g.breakpoints(), &[1.0, 2.0]);
        assert!(BoundaryFunction::step(vec![0.0, 2.0, 1.0, PI], vec![1.0, 1.0, 1.0]).is_err());
        assert!(BoundaryFunction::step(vec![0.0, 1.0], vec![1.0]).is_err());
    }
}
