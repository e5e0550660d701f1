//! Adaptive Gauss–Kronrod (7, 15) quadrature.
//!
//! Panels are bisected depth-first, left before right, until the embedded
//! Gauss/Kronrod discrepancy of every panel is within its share of the global
//! tolerance (shares are proportional to panel width). The traversal order is
//! fixed, so results are bit-reproducible.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::quadrature::sum::NeumaierSum;

/// Kronrod abscissae on `[−1, 1]` (non-negative half, descending).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

/// Gauss weights for the 7-point rule, paired with the odd Kronrod nodes.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

pub const DEFAULT_PANEL_LIMIT: usize = 1 << 15;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// One application of the embedded rule: (Kronrod value, |Kronrod − Gauss|).
pub(crate) fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive integrator with a configurable panel cap.
#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub panel_limit: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self {
            panel_limit: DEFAULT_PANEL_LIMIT,
        }
    }
}

impl Integrator {
    pub fn interval<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidParameter("integration bounds must satisfy lo < hi"));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive"));
        }
        let width = hi - lo;
        let mut value = NeumaierSum::default();
        let mut error = NeumaierSum::default();
        let mut panels = 0usize;
        let mut stack: Vec<(f64, f64)> = Vec::with_capacity(64);
        stack.push((lo, hi));
        while let Some((a, b)) = stack.pop() {
            let (k, e) = gk15(&f, a, b);
            if !k.is_finite() {
                return Err(Error::NonFinite("integrand"));
            }
            let share = tol * (b - a) / width;
            let mid = 0.5 * (a + b);
            // stop at roundoff level or when the panel cannot be split further
            let converged = e <= share || e <= 50.0 * f64::EPSILON * k.abs();
            if converged || mid <= a || mid >= b {
                value.add(k);
                error.add(e);
                panels += 1;
                continue;
            }
            if panels + stack.len() + 2 > self.panel_limit {
                return Err(Error::PanelLimitExceeded {
                    limit: self.panel_limit,
                });
            }
            stack.push((mid, b));
            stack.push((a, mid));
        }
        Ok(QuadResult {
            value: value.total(),
            error_estimate: error.total(),
            panels,
        })
    }

    /// Integrate across known discontinuities, splitting the tolerance by piece width.
    pub fn piecewise<F: Fn(f64) -> f64>(
        &self,
        f: F,
        lo: f64,
        hi: f64,
        breakpoints: &[f64],
        tol: f64,
    ) -> Result<QuadResult> {
        if !(lo < hi) {
            return Err(Error::InvalidParameter("integration bounds must satisfy lo < hi"));
        }
        let mut cuts: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&c| c > lo && c < hi)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let width = hi - lo;
        let mut value = NeumaierSum::default();
        let mut error = NeumaierSum::default();
        let mut panels = 0;
        let mut left = lo;
        for right in cuts.into_iter().chain(core::iter::once(hi)) {
            if right > left {
                let r = self.interval(&f, left, right, tol * (right - left) / width)?;
                value.add(r.value);
                error.add(r.error_estimate);
                panels += r.panels;
            }
            left = right;
        }
        Ok(QuadResult {
            value: value.total(),
            error_estimate: error.total(),
            panels,
        })
    }

    /// `∫_ℝ f(s) ds` by the substitution `s = tan ψ`.
    pub fn real_line<F: Fn(f64) -> f64>(&self, f: F, tol: f64) -> Result<QuadResult> {
        self.interval(
            |psi: f64| {
                let c = psi.cos();
                f(psi.tan()) / (c * c)
            },
            -FRAC_PI_2,
            FRAC_PI_2,
            tol,
        )
    }
}

pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult> {
    Integrator::default().interval(f, lo, hi, tol)
}

pub fn integrate_piecewise<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<QuadResult> {
    Integrator::default().piecewise(f, lo, hi, breakpoints, tol)
}

pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<QuadResult> {
    Integrator::default().real_line(f, tol)
}
