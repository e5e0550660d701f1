//! Verification suites. Each check returns a [`VerificationReport`].
//!
//! Default inputs are drawn from [`grids`] and seeded per check from the run
//! seed, so a report is fully determined by its check id, seed and tolerances.

pub mod geometry;
pub mod grids;
pub mod mc;
pub mod potential;
pub mod report;
pub mod tolerances;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use rayon::ThreadPool;
use teich_core::potential::{builtin_families, pluriharmonic_families, psh_families};
use teich_core::surface::HalfPlanePoint;

pub use geometry::{check_basepoint, check_disintegration, check_harmonic_measure_identity, check_rays};
pub use mc::check_mc;
pub use potential::{check_gradient, check_isometry, check_mvt, check_poisson_formula, check_riesz};
pub use report::{Computed, VerificationReport};
pub use tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Poisson,
    HarmonicMeasure,
    Basepoint,
    Disintegration,
    Mvt,
    Riesz,
    Gradient,
    Rays,
    Isometry,
    Mc,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::Poisson,
        CheckId::HarmonicMeasure,
        CheckId::Basepoint,
        CheckId::Disintegration,
        CheckId::Mvt,
        CheckId::Riesz,
        CheckId::Gradient,
        CheckId::Rays,
        CheckId::Isometry,
        CheckId::Mc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Poisson => "poisson",
            CheckId::HarmonicMeasure => "harmonic-measure",
            CheckId::Basepoint => "basepoint",
            CheckId::Disintegration => "disintegration",
            CheckId::Mvt => "mvt",
            CheckId::Riesz => "riesz",
            CheckId::Gradient => "gradient",
            CheckId::Rays => "rays",
            CheckId::Isometry => "isometry",
            CheckId::Mc => "mc",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

pub(crate) fn points_json(points: &[HalfPlanePoint]) -> Vec<[f64; 2]> {
    points.iter().map(|p| [p.a(), p.b()]).collect()
}

/// Run-wide settings shared by every check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Basepoint `x₀` of Poisson integrals and the Monte-Carlo study.
    pub basepoint: HalfPlanePoint,
    pub tolerances: Tolerances,
    /// Record wall-clock time in `runtime_ms` (otherwise 0, keeping reports byte-stable).
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            basepoint: HalfPlanePoint::i(),
            tolerances: Tolerances::default(),
            timing: false,
        }
    }
}

pub const RANDOM_BASEPOINTS: usize = 20;
pub const RANDOM_ARCS: usize = 100;
pub const DISINTEGRATION_POINTS: usize = 10;
pub const MVT_PAIRS: usize = 50;
pub const RIESZ_CASES: usize = 50;
pub const RIESZ_DISK_CASES: usize = 20;
pub const GRADIENT_CASES: usize = 20;

/// Run one check with its default inputs.
pub fn run_check(id: CheckId, cfg: &SuiteConfig, pool: &ThreadPool) -> VerificationReport {
    let start = Instant::now();
    let tol = &cfg.tolerances;
    let mut rng = grids::stream(cfg.seed, id.as_str());
    let mut report = match id {
        CheckId::Poisson => check_poisson_formula(
            &grids::poisson_grid(),
            &pluriharmonic_families(),
            &cfg.basepoint,
            tol.poisson,
            tol.poisson_control_gap,
        ),
        CheckId::HarmonicMeasure => {
            let mut points = vec![HalfPlanePoint::i()];
            points.extend(grids::random_points(&mut rng, RANDOM_BASEPOINTS));
            check_harmonic_measure_identity(
                &points,
                &grids::chebyshev_line_grid(grids::LINE_GRID),
                tol.harmonic_measure,
                tol.harmonic_control_gap,
            )
        }
        CheckId::Basepoint => check_basepoint(&geometry::random_arcs(&mut rng, RANDOM_ARCS), tol.basepoint),
        CheckId::Disintegration => {
            check_disintegration(&grids::random_points(&mut rng, DISINTEGRATION_POINTS), tol.disintegration)
        }
        CheckId::Mvt => {
            let points = grids::random_points(&mut rng, MVT_PAIRS);
            let radii: Vec<f64> = (0..MVT_PAIRS).map(|_| rng.uniform(0.1, 2.5)).collect();
            check_mvt(&points, &radii, &builtin_families(), tol.mvt, tol.jensen_slack)
        }
        CheckId::Riesz => {
            let family = psh_families();
            let mut cases: Vec<_> = potential::documented_riesz_case(&family).into_iter().collect();
            cases.extend(potential::random_riesz_cases(&mut rng, &family, RIESZ_CASES));
            let disk = potential::random_disk_cases(&mut rng, RIESZ_DISK_CASES);
            check_riesz(&family, &cases, &disk, tol.riesz)
        }
        CheckId::Gradient => check_gradient(&potential::random_gradient_cases(&mut rng, GRADIENT_CASES), tol.gradient),
        CheckId::Rays => check_rays(&grids::default_grid(), tol.rays),
        CheckId::Isometry => check_isometry(
            &pluriharmonic_families(),
            &cfg.basepoint,
            &grids::default_grid(),
            tol.isometry,
            tol.poisson,
            tol.radial_limit,
        ),
        CheckId::Mc => {
            let u = pluriharmonic_families()
                .into_iter()
                .find(|u| u.name() == "re_cayley")
                .expect("builtin family");
            check_mc(&u, &cfg.basepoint, cfg.seed, tol.mc_slope, pool)
        }
    };
    report.metadata.insert("seed".into(), cfg.seed.to_string());
    if cfg.timing {
        report.runtime_ms = start.elapsed().as_millis() as u64;
    }
    report
}

/// Run several checks concurrently on `pool`; reports come back in input order.
pub fn run_checks(ids: &[CheckId], cfg: &SuiteConfig, pool: &ThreadPool) -> Vec<VerificationReport> {
    pool.install(|| ids.par_iter().map(|&id| run_check(id, cfg, pool)).collect())
}
