//! Deterministic quadrature on intervals, `PML` and the real line, plus the seeded Monte-Carlo engine.

mod adaptive;
mod montecarlo;
mod sum;

use core::f64::consts::PI;

pub use adaptive::{
    integrate_interval, integrate_piecewise, integrate_real_line, Integrator, QuadResult, DEFAULT_PANEL_LIMIT,
};
pub use montecarlo::{
    mc_chunk, mc_finish, mc_integrate, splitmix64_at, splitmix64_mix, uniform_at, InverseCdfSampler, McConfig,
    McEstimate, McPartial, SplitMix64, CHUNK_SAMPLES, GENERATOR_ID, SPLITMIX_GAMMA, SPLITMIX_MUL1, SPLITMIX_MUL2,
    TABLE_CELLS,
};
pub use sum::{compensated_sum, NeumaierSum};

use crate::error::Result;
use crate::measures::thurston_density;
use crate::surface::HalfPlanePoint;

/// `∫₀^π f(θ) dμ̂^x(θ)`.
pub fn integrate_circle_pml<F: Fn(f64) -> f64>(f: F, x: &HalfPlanePoint, tol: f64) -> Result<QuadResult> {
    let m = thurston_density(x)?;
    integrate_interval(|t| f(t) * m.density(t), 0.0, PI, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::pluriharmonic_kernel;
    use crate::surface::ProjectiveLamination;

    #[test]
    fn circle_examples() {
        let x = HalfPlanePoint::new(2.0, 0.5).unwrap();
        assert!((integrate_circle_pml(|_| 1.0, &x, 1e-12).unwrap().value - 1.0).abs() < 1e-12);
        let i = HalfPlanePoint::i();
        let half = integrate_circle_pml(|t| if t <= PI / 2.0 { 1.0 } else { 0.0 }, &i, 1e-12);
        assert!((half.unwrap().value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn kernel_against_its_own_basepoint_integrates_to_one() {
        let x0 = HalfPlanePoint::new(-0.5, 1.5).unwrap();
        let x = HalfPlanePoint::new(1.0, 0.7).unwrap();
        let k = |t: f64| pluriharmonic_kernel(&x0, &x, &ProjectiveLamination::from_angle(t));
        let r = integrate_circle_pml(k, &x0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11);
    }
}
