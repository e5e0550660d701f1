//! Every pass/fail threshold used by the suites, in one place.

use serde::{Deserialize, Serialize};

/// Per-check thresholds. Field names double as the keys accepted in the
/// `tolerances` object of a config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// `|u(x) − 𝔓(u*)(x)|` for pluriharmonic families.
    pub poisson: f64,
    /// Minimum discrepancy the corrupted-exponent control has to show.
    pub poisson_control_gap: f64,
    /// Sup-error of the boundary line density against the Cauchy density.
    pub harmonic_measure: f64,
    /// Minimum sup-error the wrong-endpoint-map control has to show.
    pub harmonic_control_gap: f64,
    /// Arc masses under a change of basepoint.
    pub basepoint: f64,
    /// Binned total variation between fiber and cone measures.
    pub disintegration: f64,
    /// Mean-value equality for pluriharmonic functions.
    pub mvt: f64,
    /// Most negative Jensen slack tolerated for psh functions.
    pub jensen_slack: f64,
    /// Slack in `lhs ≤ rhs` of Riesz-type bounds.
    pub riesz: f64,
    /// Relative error of closed-form gradients against finite differences.
    pub gradient: f64,
    /// Ray laws and the disk/ray identity.
    pub rays: f64,
    /// `| sup|u| − ess-sup|u*| |` on the sampling grids.
    pub isometry: f64,
    /// Evaluator tolerance for radial limits; limits from two basepoints
    /// must agree within twice this.
    pub radial_limit: f64,
    /// Allowed deviation of the fitted Monte-Carlo error slope from −1/2.
    pub mc_slope: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            poisson: 1e-6,
            poisson_control_gap: 1e-3,
            harmonic_measure: 1e-8,
            harmonic_control_gap: 1e-3,
            basepoint: 1e-8,
            disintegration: 1e-6,
            mvt: 1e-6,
            jensen_slack: 1e-9,
            riesz: 1e-9,
            gradient: 1e-5,
            rays: 1e-9,
            isometry: 1e-3,
            radial_limit: 1e-10,
            mc_slope: 0.05,
        }
    }
}

/// Tolerances handed to the integrators, tighter than the check thresholds.
pub mod internal {
    /// Poisson integrals, mean values and gradients.
    pub const QUAD: f64 = 1e-11;
    /// Gradient integrals feeding finite differences.
    pub const QUAD_GRADIENT: f64 = 1e-13;
    /// Arc masses.
    pub const QUAD_MASS: f64 = 1e-13;
    /// Step used by the central differences.
    pub const FD_STEP: f64 = 1e-4;
}
