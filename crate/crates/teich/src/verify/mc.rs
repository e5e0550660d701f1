//! Convergence rate and reproducibility of the Monte-Carlo engine.

use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::json;
use teich_core::measures::thurston_density;
use teich_core::potential::{BoundaryFunction, TestFunction};
use teich_core::quadrature::{
    mc_chunk, mc_finish, uniform_at, InverseCdfSampler, McConfig, McEstimate, CHUNK_SAMPLES, GENERATOR_ID,
};
use teich_core::surface::HalfPlanePoint;

use super::report::{ReportBuilder, VerificationReport};
use super::CheckId;
use crate::parallel;

/// Sample counts `10^{3 + k/2}`, `k = 0..=6`.
pub fn slope_levels() -> Vec<u64> {
    (0..=6).map(|k| 10f64.powf(3.0 + k as f64 / 2.0).round() as u64).collect()
}

/// Length of the sample stream that is cut into disjoint blocks at every level.
pub const STREAM_SAMPLES: u64 = 4_000_000;
/// Samples used for the worker-count comparison.
pub const REPRO_SAMPLES: u64 = 200_000;
pub const REPRO_WORKERS: [usize; 3] = [1, 2, 4];

/// `∫ f dμ̂^x` on `pool`, chunks merged in chunk order.
pub fn mc_estimate<F: Fn(f64) -> f64 + Sync>(
    f: &F,
    sampler: &InverseCdfSampler,
    cfg: &McConfig,
    pool: &ThreadPool,
) -> teich_core::Result<McEstimate> {
    let partials: Vec<_> = pool.install(|| (0..cfg.chunks()).into_par_iter().map(|c| mc_chunk(f, sampler, cfg, c)).collect());
    mc_finish(partials.iter())
}

/// `f` at every sample of the stream, evaluated chunk-parallel.
fn sample_values<F: Fn(f64) -> f64 + Sync>(f: &F, sampler: &InverseCdfSampler, cfg: &McConfig, pool: &ThreadPool) -> Vec<f64> {
    let chunks: Vec<Vec<f64>> = pool.install(|| {
        (0..cfg.chunks())
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK_SAMPLES;
                let end = (start + CHUNK_SAMPLES).min(cfg.samples);
                (start..end).map(|i| f(sampler.sample(uniform_at(cfg.seed, i)))).collect()
            })
            .collect()
    });
    chunks.concat()
}

/// Weighted least-squares slope of `y` on `x`.
pub fn weighted_slope(x: &[f64], y: &[f64], w: &[f64]) -> f64 {
    let sw: f64 = w.iter().sum();
    let xb = x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let yb = y.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let num: f64 = x.iter().zip(y).zip(w).map(|((a, b), c)| c * (a - xb) * (b - yb)).sum();
    let den: f64 = x.iter().zip(w).map(|(a, c)| c * (a - xb) * (a - xb)).sum();
    num / den
}

/// One level of the convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub samples: u64,
    pub blocks: u64,
    pub rms_error: f64,
}

/// RMS error of disjoint block means at each level against `exact`.
pub fn block_levels(values: &[f64], exact: f64, levels: &[u64]) -> Vec<Level> {
    levels
        .iter()
        .map(|&n| {
            let blocks = values.len() as u64 / n;
            let mean_sq = values
                .chunks_exact(n as usize)
                .map(|b| {
                    let e = teich_core::quadrature::compensated_sum(b.iter().copied()) / n as f64 - exact;
                    e * e
                })
                .sum::<f64>()
                / blocks as f64;
            Level {
                samples: n,
                blocks,
                rms_error: mean_sq.sqrt(),
            }
        })
        .collect()
}

/// Integrand of the study: the boundary values of `u` (its Poisson integral at `x` is `u(x)`).
pub fn check_mc(u: &TestFunction, x: &HalfPlanePoint, seed: u64, tol: f64, pool: &ThreadPool) -> VerificationReport {
    let levels = slope_levels();
    let inputs = json!({
        "check": CheckId::Mc.as_str(),
        "function": u.name(),
        "x": [x.a(), x.b()],
        "seed": seed,
        "generator_id": GENERATOR_ID,
        "stream_samples": STREAM_SAMPLES,
        "levels": levels,
        "repro_samples": REPRO_SAMPLES,
        "repro_workers": REPRO_WORKERS,
        "tolerance": tol,
    });
    let mut r = ReportBuilder::new(CheckId::Mc.as_str(), tol, inputs);
    r.meta("seed", seed)
        .meta("generator_id", GENERATOR_ID)
        .meta("chunk_samples", CHUNK_SAMPLES)
        .meta("stream_samples", STREAM_SAMPLES);

    let measure = match thurston_density(x) {
        Ok(m) => m,
        Err(e) => {
            r.error("setup", e);
            return r.finish();
        }
    };
    let ustar = BoundaryFunction::radial_limit_of(u);
    let f = |t: f64| ustar.eval(t);
    let exact = match measure.integrate(f, &[], 1e-13) {
        Ok(q) => q.value,
        Err(e) => {
            r.error("reference", e);
            return r.finish();
        }
    };
    r.info("reference_integral", exact);
    let sampler = InverseCdfSampler::new(measure);

    let values = sample_values(&f, &sampler, &McConfig::new(seed, STREAM_SAMPLES), pool);
    let study = block_levels(&values, exact, &levels);
    let xs: Vec<f64> = study.iter().map(|l| (l.samples as f64).ln()).collect();
    let ys: Vec<f64> = study.iter().map(|l| l.rms_error.ln()).collect();
    // var(ln RMS) ≈ 1/(2·blocks)
    let ws: Vec<f64> = study.iter().map(|l| 2.0 * l.blocks as f64).collect();
    let slope = weighted_slope(&xs, &ys, &ws);
    for l in &study {
        r.info(&format!("rms_error[{}]", l.samples), l.rms_error);
    }
    r.info("fitted_slope", slope);
    r.discrepancy("slope_deviation", (slope + 0.5).abs());

    // bit-identical estimates for every worker count, and on a repeated run
    let cfg = McConfig::new(seed, REPRO_SAMPLES);
    let mut estimates = Vec::new();
    for &w in REPRO_WORKERS.iter() {
        match mc_estimate(&f, &sampler, &cfg, &parallel::pool(Some(w))) {
            Ok(e) => estimates.push(e),
            Err(e) => {
                r.error("reproducibility", e);
                return r.finish();
            }
        }
    }
    if let Ok(e) = mc_estimate(&f, &sampler, &cfg, pool) {
        estimates.push(e);
    }
    let first = estimates[0];
    let mismatches = estimates
        .iter()
        .filter(|e| e.estimate.to_bits() != first.estimate.to_bits() || e.stderr.to_bits() != first.stderr.to_bits())
        .count();
    r.info("repro_estimate", first.estimate).info("repro_stderr", first.stderr);
    r.bounded("repro_mismatches", mismatches as f64, 0.0);
    r.finish()
}
