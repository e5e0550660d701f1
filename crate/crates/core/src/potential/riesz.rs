//! F.&M. Riesz-type bounds `v(x) ≤ Π m_k^{μ(E_k)}` for log-plurisubharmonic `v`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::families::{FunctionKind, TestFunction};
use super::radial_limit;
use crate::error::{Error, Result};
use crate::measures::thurston_density;
use crate::quadrature::NeumaierSum;
use crate::surface::{HalfPlanePoint, Lamination};

/// Directions probed when spot-checking caller-supplied limsup bounds.
pub const SPOT_CHECK_DIRECTIONS: usize = 2048;
/// Allowed excess of a probed radial limit over its arc bound.
pub const SPOT_CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RieszBound {
    pub lhs: f64,
    pub rhs: f64,
    pub masses: Vec<f64>,
}

impl RieszBound {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack
    }
}

fn validate_arcs(arcs: &[(f64, f64)], bounds: &[f64], end: f64) -> Result<()> {
    if arcs.is_empty() || arcs.len() != bounds.len() {
        return Err(Error::InvalidDecomposition("need one bound per arc and at least one arc"));
    }
    if arcs[0].0 != 0.0 || arcs[arcs.len() - 1].1 != end {
        return Err(Error::InvalidDecomposition("arcs must cover the whole boundary"));
    }
    for (k, &(lo, hi)) in arcs.iter().enumerate() {
        if !(lo < hi) {
            return Err(Error::InvalidDecomposition("arcs must have positive length"));
        }
        if k + 1 < arcs.len() {
            let next = arcs[k + 1].0;
            if next < hi {
                return Err(Error::InvalidDecomposition("arcs overlap"));
            }
            if next > hi {
                return Err(Error::InvalidDecomposition("arcs leave a gap"));
            }
        }
    }
    if bounds.iter().any(|m| !(*m > 0.0) || !m.is_finite()) {
        return Err(Error::InvalidDecomposition("bounds must be positive"));
    }
    Ok(())
}

/// A partition of `PML = [0, π)` into consecutive arcs `[lo, hi)` with bounds `m_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    arcs: Vec<(f64, f64)>,
    bounds: Vec<f64>,
}

impl Decomposition {
    pub fn new(arcs: Vec<(f64, f64)>, bounds: Vec<f64>) -> Result<Self> {
        validate_arcs(&arcs, &bounds, PI)?;
        Ok(Self { arcs, bounds })
    }

    /// Arcs between consecutive interior `cuts`.
    pub fn from_cuts(cuts: &[f64], bounds: Vec<f64>) -> Result<Self> {
        let mut edges = Vec::with_capacity(cuts.len() + 2);
        edges.push(0.0);
        edges.extend_from_slice(cuts);
        edges.push(PI);
        Self::new(edges.windows(2).map(|w| (w[0], w[1])).collect(), bounds)
    }

    pub fn arcs(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    pub fn bounds(&self) -> &[f64] {
        &self.bounds
    }

    /// Index of the arc containing `theta ∈ [0, π)`.
    pub fn arc_of(&self, theta: f64) -> usize {
        self.arcs
            .partition_point(|&(_, hi)| hi <= theta)
            .min(self.arcs.len() - 1)
    }
}

/// `(v(x), Π m_k^{μ̂^x(E_k)})` for a bounded log-plurisubharmonic `v`.
///
/// The bounds `m_k` must dominate the limsup of `v` along rays into `E_k`.
/// That is the caller's obligation; it is spot-checked on
/// [`SPOT_CHECK_DIRECTIONS`] rays and a violation is reported as
/// [`Error::BoundViolated`].
pub fn riesz_teich_bound(v: &TestFunction, x: &HalfPlanePoint, dec: &Decomposition, tol: f64) -> Result<RieszBound> {
    if v.kind() != FunctionKind::Psh || !v.log_psh() {
        return Err(Error::InvalidParameter("Riesz bound needs a log-plurisubharmonic function"));
    }
    let sup = v.bound();
    if dec.bounds.iter().any(|&m| m > sup * (1.0 + 1e-12)) {
        return Err(Error::InvalidDecomposition("arc bound exceeds the certified sup bound"));
    }
    for j in 0..SPOT_CHECK_DIRECTIONS {
        let theta = PI * (j as f64 + 0.5) / SPOT_CHECK_DIRECTIONS as f64;
        let k = dec.arc_of(theta);
        let limit = radial_limit(v, &Lamination::unit(theta), x, 1e-11)?;
        if limit > dec.bounds[k] + SPOT_CHECK_TOL {
            return Err(Error::BoundViolated {
                arc: k,
                value: limit,
                bound: dec.bounds[k],
            });
        }
    }
    let measure = thurston_density(x)?;
    let mut masses = Vec::with_capacity(dec.arcs.len());
    let mut log_rhs = NeumaierSum::default();
    for (&(lo, hi), &m) in dec.arcs.iter().zip(dec.bounds.iter()) {
        let mass = measure.mass(lo, hi, tol * (hi - lo) / PI)?;
        log_rhs.add(mass * m.ln());
        masses.push(mass);
    }
    Ok(RieszBound {
        lhs: v.value(x),
        rhs: log_rhs.total().exp(),
        masses,
    })
}

/// A partition of the unit circle `[0, 2π)` into consecutive arcs with bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleDecomposition {
    arcs: Vec<(f64, f64)>,
    bounds: Vec<f64>,
}

impl CircleDecomposition {
    pub fn new(arcs: Vec<(f64, f64)>, bounds: Vec<f64>) -> Result<Self> {
        validate_arcs(&arcs, &bounds, 2.0 * PI)?;
        Ok(Self { arcs, bounds })
    }

    pub fn arcs(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    pub fn bounds(&self) -> &[f64] {
        &self.bounds
    }

    /// Harmonic measure at the origin of each arc, i.e. normalized arc length.
    pub fn harmonic_masses(&self) -> Vec<f64> {
        self.arcs.iter().map(|(lo, hi)| (hi - lo) / (2.0 * PI)).collect()
    }
}

/// A non-negative bounded subharmonic function on the unit disk with `log v` subharmonic.
#[derive(Debug, Clone, PartialEq)]
pub enum DiskFunction {
    Constant(f64),
    /// `|Π (z − α)/(1 − ᾱz) · Π (z − β)/(1 + |β|)|^power` with `|α| < 1 ≤ |β|`.
    Modulus {
        zeros: Vec<Complex64>,
        outer: Vec<Complex64>,
        power: f64,
    },
}

impl DiskFunction {
    pub fn validate(&self) -> Result<()> {
        match self {
            DiskFunction::Constant(c) if *c >= 0.0 => Ok(()),
            DiskFunction::Constant(_) => Err(Error::InvalidParameter("constant must be non-negative")),
            DiskFunction::Modulus { zeros, outer, power } => {
                if zeros.iter().any(|a| a.norm() >= 1.0) || outer.iter().any(|b| b.norm() < 1.0) {
                    return Err(Error::InvalidParameter("disk factors must keep |v| <= 1"));
                }
                if !(*power > 0.0) {
                    return Err(Error::InvalidParameter("power must be positive"));
                }
                Ok(())
            }
        }
    }

    pub fn value(&self, z: Complex64) -> f64 {
        match self {
            DiskFunction::Constant(c) => *c,
            DiskFunction::Modulus { zeros, outer, power } => {
                let one = Complex64::new(1.0, 0.0);
                let inner: Complex64 = zeros.iter().map(|a| (z - a) / (one - a.conj() * z)).product();
                let outer: Complex64 = outer.iter().map(|b| (z - b) / (1.0 + b.norm())).product();
                (inner * outer).norm().powf(*power)
            }
        }
    }

    /// Maximum of the boundary values over `samples + 1` equally spaced points of `[lo, hi]`.
    pub fn arc_sup(&self, lo: f64, hi: f64, samples: usize) -> f64 {
        let n = samples.max(1);
        (0..=n)
            .map(|j| self.value(Complex64::from_polar(1.0, lo + (hi - lo) * j as f64 / n as f64)))
            .fold(0.0, f64::max)
    }
}

/// `(v(0), Π m_k^{Θ(E_k)})` on the unit disk.
pub fn riesz_disk_bound(v: &DiskFunction, dec: &CircleDecomposition, masses: &[f64]) -> Result<RieszBound> {
    v.validate()?;
    if masses.len() != dec.arcs.len() {
        return Err(Error::InvalidDecomposition("need one mass per arc"));
    }
    if masses.iter().any(|m| !(*m >= 0.0)) {
        return Err(Error::InvalidDecomposition("masses must be non-negative"));
    }
    let total: f64 = masses.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidDecomposition("masses must sum to 1"));
    }
    let log_rhs: f64 = masses.iter().zip(dec.bounds.iter()).map(|(w, m)| w * m.ln()).sum();
    Ok(RieszBound {
        lhs: v.value(Complex64::new(0.0, 0.0)),
        rhs: log_rhs.exp(),
        masses: masses.to_vec(),
    })
}
