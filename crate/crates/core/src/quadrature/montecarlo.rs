//! Seeded Monte-Carlo integration against `μ̂^x` by importance sampling.
//!
//! Uniform variates come from a counter-based SplitMix64 stream: sample `i`
//! of seed `s` is `mix(s + (i + 1)·γ)`. Samples are grouped into fixed-size
//! chunks whose partial sums are merged in chunk order, so the estimate does
//! not depend on how chunks are spread over workers.

use alloc::vec::Vec;
use core::f64::consts::PI;


use crate::error::{Error, Result};
use crate::measures::{thurston_density, BoundaryMeasure};
use crate::quadrature::adaptive::gk15;
use crate::quadrature::sum::NeumaierSum;
use crate::surface::HalfPlanePoint;

pub const GENERATOR_ID: &str = "splitmix64";
pub const SPLITMIX_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
pub const SPLITMIX_MUL1: u64 = 0xbf58_476d_1ce4_e5b9;
pub const SPLITMIX_MUL2: u64 = 0x94d0_49bb_1331_11eb;

/// Samples per chunk; the unit of work distribution and of ordered reduction.
pub const CHUNK_SAMPLES: u64 = 4096;

/// Cells of the inverse-CDF table.
pub const TABLE_CELLS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McConfig {
    pub seed: u64,
    pub samples: u64,
    pub generator_id: &'static str,
}

impl McConfig {
    pub fn new(seed: u64, samples: u64) -> Self {
        Self {
            seed,
            samples,
            generator_id: GENERATOR_ID,
        }
    }

    pub fn chunks(&self) -> u64 {
        self.samples.div_ceil(CHUNK_SAMPLES)
    }
}

#[inline]
pub fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(SPLITMIX_MUL1);
    z = (z ^ (z >> 27)).wrapping_mul(SPLITMIX_MUL2);
    z ^ (z >> 31)
}

/// The `index`-th output of the SplitMix64 stream started at `seed`.
#[inline]
pub fn splitmix64_at(seed: u64, index: u64) -> u64 {
    splitmix64_mix(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(SPLITMIX_GAMMA)))
}

/// Uniform variate in `[0, 1)` from the top 53 bits.
#[inline]
pub fn uniform_at(seed: u64, index: u64) -> f64 {
    (splitmix64_at(seed, index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Sequential SplitMix64 generator, for seeded test data and random grids.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    seed: u64,
    counter: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = splitmix64_at(self.seed, self.counter);
        self.counter += 1;
        v
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Inverse-CDF sampler for `μ̂^x` on a monotone table of cell masses.
#[derive(Debug, Clone)]
pub struct InverseCdfSampler {
    measure: BoundaryMeasure,
    cdf: Vec<f64>,
    total: f64,
}

// 5-point Gauss–Legendre, for partial-cell integrals during inversion
const GL5_X: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_W: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

impl InverseCdfSampler {
    pub fn new(measure: BoundaryMeasure) -> Self {
        let width = PI / TABLE_CELLS as f64;
        let mut cdf = Vec::with_capacity(TABLE_CELLS + 1);
        let mut acc = NeumaierSum::default();
        cdf.push(0.0);
        for k in 0..TABLE_CELLS {
            let lo = k as f64 * width;
            acc.add(gk15(&|t| measure.density(t), lo, lo + width).0);
            cdf.push(acc.total());
        }
        let total = cdf[TABLE_CELLS];
        for v in cdf.iter_mut() {
            *v /= total;
        }
        Self { measure, cdf, total }
    }

    pub fn measure(&self) -> &BoundaryMeasure {
        &self.measure
    }

    fn partial(&self, lo: f64, hi: f64) -> f64 {
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        let s: f64 = GL5_X
            .iter()
            .zip(GL5_W.iter())
            .map(|(x, w)| w * self.measure.density(c + h * x))
            .sum();
        s * h / self.total
    }

    /// The angle `θ` with `F(θ) = u`.
    pub fn sample(&self, u: f64) -> f64 {
        let width = PI / TABLE_CELLS as f64;
        let k = match self.cdf.binary_search_by(|v| v.total_cmp(&u)) {
            Ok(i) => return (i as f64 * width).min(PI),
            Err(i) => i.saturating_sub(1).min(TABLE_CELLS - 1),
        };
        let lo = k as f64 * width;
        let hi = lo + width;
        let target = u - self.cdf[k];
        let cell = self.cdf[k + 1] - self.cdf[k];
        let mut theta = lo + width * (target / cell).clamp(0.0, 1.0);
        for _ in 0..8 {
            let residual = self.partial(lo, theta) - target;
            let step = residual * self.total / self.measure.density(theta);
            theta = (theta - step).clamp(lo, hi);
            if step.abs() <= 1e-15 * PI {
                break;
            }
        }
        theta
    }
}

/// Per-chunk moments `(n, Σf, Σf²)` with compensated sums.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct McPartial {
    pub count: u64,
    pub sum: NeumaierSum,
    pub sum_sq: NeumaierSum,
}

impl McPartial {
    pub fn merge(&mut self, other: &McPartial) {
        self.count += other.count;
        self.sum.merge(&other.sum);
        self.sum_sq.merge(&other.sum_sq);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Evaluate chunk `chunk` of the sample stream.
pub fn mc_chunk<F: Fn(f64) -> f64>(f: &F, sampler: &InverseCdfSampler, cfg: &McConfig, chunk: u64) -> McPartial {
    let start = chunk * CHUNK_SAMPLES;
    let end = (start + CHUNK_SAMPLES).min(cfg.samples);
    let mut part = McPartial::default();
    for i in start..end {
        let v = f(sampler.sample(uniform_at(cfg.seed, i)));
        part.count += 1;
        part.sum.add(v);
        part.sum_sq.add(v * v);
    }
    part
}

/// Merge chunk partials (in chunk order) into the final estimate.
pub fn mc_finish<'a, I: IntoIterator<Item = &'a McPartial>>(partials: I) -> Result<McEstimate> {
    let mut total = McPartial::default();
    for p in partials {
        total.merge(p);
    }
    if total.count < 2 {
        return Err(Error::InvalidParameter("Monte-Carlo needs at least two samples"));
    }
    let n = total.count as f64;
    let mean = total.sum.total() / n;
    let var = ((total.sum_sq.total() - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(McEstimate {
        estimate: mean,
        stderr: (var / n).sqrt(),
        samples: total.count,
    })
}

/// `∫ f dμ̂^x` by importance sampling from `μ̂^x` itself.
pub fn mc_integrate<F: Fn(f64) -> f64>(f: F, x: &HalfPlanePoint, cfg: &McConfig) -> Result<McEstimate> {
    if cfg.samples < 2 {
        return Err(Error::InvalidParameter("Monte-Carlo needs at least two samples"));
    }
    let sampler = InverseCdfSampler::new(thurston_density(x)?);
    let partials: Vec<McPartial> = (0..cfg.chunks()).map(|c| mc_chunk(&f, &sampler, cfg, c)).collect();
    mc_finish(partials.iter())
}
