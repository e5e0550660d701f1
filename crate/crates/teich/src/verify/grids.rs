//! Default sample grids and seeded random inputs.

use std::f64::consts::{FRAC_PI_2, PI};

use teich_core::quadrature::{splitmix64_at, SplitMix64};
use teich_core::surface::HalfPlanePoint;

fn pt(a: f64, b: f64) -> HalfPlanePoint {
    HalfPlanePoint::new(a, b).expect("grid points lie in the upper half-plane")
}

/// `a ∈ {−1, 0, 1}` × `b ∈ {1/2, 1, 2, 4}`.
pub fn default_grid() -> Vec<HalfPlanePoint> {
    let mut out = Vec::with_capacity(12);
    for a in [-1.0, 0.0, 1.0] {
        for b in [0.5, 1.0, 2.0, 4.0] {
            out.push(pt(a, b));
        }
    }
    out
}

/// 5×5 basepoint grid for the Poisson formula.
pub fn poisson_grid() -> Vec<HalfPlanePoint> {
    let mut out = Vec::with_capacity(25);
    for a in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        for b in [0.25, 0.5, 1.0, 2.0, 4.0] {
            out.push(pt(a, b));
        }
    }
    out
}

/// `n` Chebyshev nodes of `(−1, 1)` mapped to the line by `s = tan(πx/2)`.
pub fn chebyshev_line_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let x = ((2 * k + 1) as f64 * PI / (2 * n) as f64).cos();
            (FRAC_PI_2 * x).tan()
        })
        .collect()
}

pub const THETA_GRID: usize = 2048;
pub const LINE_GRID: usize = 512;

/// Independent random stream for one consumer of the run seed.
pub fn stream(seed: u64, tag: &str) -> SplitMix64 {
    let tag = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    });
    SplitMix64::new(splitmix64_at(seed, tag))
}

/// Random basepoint with `|a| ≤ 1.5` and `b` log-uniform in `[0.3, 3]`.
pub fn random_point(rng: &mut SplitMix64) -> HalfPlanePoint {
    let a = rng.uniform(-1.5, 1.5);
    let b = rng.uniform(0.3f64.ln(), 3f64.ln()).exp();
    pt(a, b)
}

pub fn random_points(rng: &mut SplitMix64, n: usize) -> Vec<HalfPlanePoint> {
    (0..n).map(|_| random_point(rng)).collect()
}

/// `k` sorted distinct cut points in `(lo, hi)`, at least `gap` apart and from the ends.
pub fn random_cuts(rng: &mut SplitMix64, k: usize, lo: f64, hi: f64, gap: f64) -> Vec<f64> {
    loop {
        let mut cuts: Vec<f64> = (0..k).map(|_| rng.uniform(lo, hi)).collect();
        cuts.sort_by(f64::total_cmp);
        let mut edges = vec![lo];
        edges.extend_from_slice(&cuts);
        edges.push(hi);
        if edges.windows(2).all(|w| w[1] - w[0] >= gap) {
            return cuts;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_have_documented_sizes() {
        assert_eq!(default_grid().len(), 12);
        assert_eq!(poisson_grid().len(), 25);
        let s = chebyshev_line_grid(LINE_GRID);
        assert_eq!(s.len(), 512);
        assert!(s.windows(2).all(|w| w[0] > w[1]));
        assert!((s[0] + s[511]).abs() < 1e-9 * s[0]);
    }

    #[test]
    fn streams_are_seeded_and_separated() {
        let a: Vec<u64> = (0..4).map(|_| stream(42, "basepoint").next_u64()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(stream(42, "basepoint").next_u64(), stream(42, "gradient").next_u64());
        assert_ne!(stream(42, "basepoint").next_u64(), stream(43, "basepoint").next_u64());
    }

    #[test]
    fn cuts_respect_gap() {
        let mut rng = stream(1, "cuts");
        for k in 0..5 {
            let c = random_cuts(&mut rng, k, 0.0, PI, 0.05);
            assert_eq!(c.len(), k);
            assert!(c.windows(2).all(|w| w[1] - w[0] >= 0.05));
        }
    }
}
