//! The `teich` command line.
//!
//! Exit codes: `0` when every requested check passes, `1` when a check fails
//! or output cannot be written, `2` for argument and config errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use teich_core::potential::builtin_families;
use teich_core::surface::{HalfPlanePoint, Lamination};

use crate::config::{load_config, Format};
use crate::parallel;
use crate::tables::{self, Table};
use crate::verify::report::{write_csv, write_json};
use crate::verify::{run_checks, CheckId, SuiteConfig, Tolerances};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "teich", version, about = "Numerical verification suites for Teichmüller potential theory on the once-punctured torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification checks and emit reports.
    Verify(VerifyArgs),
    /// Tabulate the Poisson kernel P(x0, x, θ_k) at θ_k = kπ/grid.
    KernelTable {
        /// Kernel basepoint "a,b".
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x0: HalfPlanePoint,
        /// Evaluation point "a,b".
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x: HalfPlanePoint,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
        grid: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate the normalized Thurston measure at x and its boundary pushforward.
    MeasureTable {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x: HalfPlanePoint,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
        grid: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Trace the Teichmüller ray from x contracting a lamination.
    RayTrace {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x: HalfPlanePoint,
        /// Lamination "p,q".
        #[arg(long, value_parser = parse_lamination, allow_hyphen_values = true)]
        lamination: Lamination,
        #[arg(long, default_value_t = 5.0)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Trace a builtin function along a ray towards its radial limit.
    LimitTrace {
        /// Builtin family member, e.g. re_cayley.
        #[arg(long)]
        family: String,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        x: HalfPlanePoint,
        #[arg(long, value_parser = parse_lamination, allow_hyphen_values = true)]
        lamination: Lamination,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
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
    All,
}

impl CheckArg {
    fn ids(self) -> Vec<CheckId> {
        match self {
            CheckArg::All => CheckId::ALL.to_vec(),
            other => vec![other
                .to_possible_value()
                .and_then(|v| v.get_name().parse().ok())
                .expect("every check argument names a check")],
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check to run (or "all"); may come from the config file instead.
    #[arg(value_enum)]
    pub check: Option<CheckArg>,
    /// Override the headline tolerance of the selected checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for random inputs and Monte-Carlo streams [default: 42].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Basepoint x0 "a,b" for Poisson integrals [default: 0,1].
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub basepoint: Option<HalfPlanePoint>,
    /// Report destination; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Record wall-clock runtime in reports (makes them run-dependent).
    #[arg(long)]
    pub timing: bool,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"a,b\", got \"{s}\""))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("bad number \"{v}\": {e}"));
    Ok((parse(a)?, parse(b)?))
}

pub fn parse_point(s: &str) -> Result<HalfPlanePoint, String> {
    let (a, b) = parse_pair(s)?;
    HalfPlanePoint::new(a, b).map_err(|e| e.to_string())
}

pub fn parse_lamination(s: &str) -> Result<Lamination, String> {
    let (p, q) = parse_pair(s)?;
    Lamination::new(p, q).map_err(|e| e.to_string())
}

fn set_tolerance(t: &mut Tolerances, id: CheckId, value: f64) {
    let slot = match id {
        CheckId::Poisson => &mut t.poisson,
        CheckId::HarmonicMeasure => &mut t.harmonic_measure,
        CheckId::Basepoint => &mut t.basepoint,
        CheckId::Disintegration => &mut t.disintegration,
        CheckId::Mvt => &mut t.mvt,
        CheckId::Riesz => &mut t.riesz,
        CheckId::Gradient => &mut t.gradient,
        CheckId::Rays => &mut t.rays,
        CheckId::Isometry => &mut t.isometry,
        CheckId::Mc => &mut t.mc_slope,
    };
    *slot = value;
}

/// Open `path` or fall back to `stdout`.
fn sink<'a>(path: Option<&PathBuf>, stdout: &'a mut dyn Write) -> io::Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn verify(args: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let file = match args.config.as_deref().map(load_config).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let check = match (args.check, file.check.as_deref()) {
        (Some(c), _) => c,
        (None, Some(name)) => match CheckArg::from_str(name, false) {
            Ok(c) => c,
            Err(_) => {
                let _ = writeln!(stderr, "error: unknown check \"{name}\" in config");
                return EXIT_USAGE;
            }
        },
        (None, None) => {
            let _ = writeln!(stderr, "error: no check given; use `teich verify <CHECK>` or set \"check\" in the config");
            return EXIT_USAGE;
        }
    };
    let basepoint = match (args.basepoint, file.basepoint) {
        (Some(p), _) => p,
        (None, Some([a, b])) => match HalfPlanePoint::new(a, b) {
            Ok(p) => p,
            Err(e) => {
                let _ = writeln!(stderr, "error: config basepoint: {e}");
                return EXIT_USAGE;
            }
        },
        (None, None) => HalfPlanePoint::i(),
    };
    if let Some(t) = args.tol {
        if !(t > 0.0) || !t.is_finite() {
            let _ = writeln!(stderr, "error: --tol must be a positive number");
            return EXIT_USAGE;
        }
    }
    let ids = check.ids();
    let mut tolerances = file.tolerances.unwrap_or_default();
    if let Some(t) = args.tol {
        for &id in &ids {
            set_tolerance(&mut tolerances, id, t);
        }
    }
    let cfg = SuiteConfig {
        seed: args.seed.or(file.seed).unwrap_or(SuiteConfig::default().seed),
        basepoint,
        tolerances,
        timing: args.timing || file.timing.unwrap_or(false),
    };
    let format = args.format.or(file.format).unwrap_or_default();
    let output = args.output.or(file.output);

    let reports = run_checks(&ids, &cfg, &parallel::pool(None));

    let written = sink(output.as_ref(), &mut *stdout).and_then(|mut w| {
        match format {
            Format::Json => write_json(&mut w, &reports).map_err(io::Error::other)?,
            Format::Csv => write_csv(&mut w, &reports).map_err(io::Error::other)?,
        }
        w.flush()
    });
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: writing report: {e}");
        return EXIT_FAIL;
    }
    // summaries go wherever the report does not
    let summary: &mut dyn Write = if output.is_some() { stdout } else { stderr };
    for r in &reports {
        let _ = writeln!(summary, "{}", r.summary_line());
    }
    if reports.iter().all(|r| r.passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn emit(table: &Table, output: Option<&PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let written = sink(output, stdout).and_then(|mut w| {
        table.write_csv(&mut w).map_err(io::Error::other)?;
        w.flush()
    });
    match written {
        Ok(()) => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(stderr, "error: writing table: {e}");
            EXIT_FAIL
        }
    }
}

/// Parse `argv` (including the program name) and run, writing to the given streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    match cli.command {
        Command::Verify(args) => verify(args, stdout, stderr),
        Command::KernelTable { x0, x, grid, output } => {
            emit(&tables::kernel_table(&x0, &x, grid as usize), output.as_ref(), stdout, stderr)
        }
        Command::MeasureTable { x, grid, output } => match tables::measure_table(&x, grid as usize) {
            Ok(t) => emit(&t, output.as_ref(), stdout, stderr),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_FAIL
            }
        },
        Command::RayTrace {
            x,
            lamination,
            t_max,
            steps,
            output,
        } => {
            if !(t_max >= 0.0) || !t_max.is_finite() {
                let _ = writeln!(stderr, "error: --t-max must be finite and non-negative");
                return EXIT_USAGE;
            }
            emit(&tables::ray_trace(&x, &lamination, t_max, steps as usize), output.as_ref(), stdout, stderr)
        }
        Command::LimitTrace {
            family,
            x,
            lamination,
            t_max,
            steps,
            output,
        } => {
            let Some(u) = builtin_families().into_iter().find(|u| u.name() == family) else {
                let names: Vec<String> = builtin_families().iter().map(|u| u.name().to_string()).collect();
                let _ = writeln!(stderr, "error: unknown family \"{family}\"; builtin: {}", names.join(", "));
                return EXIT_USAGE;
            };
            if !(t_max >= 0.0) || !t_max.is_finite() {
                let _ = writeln!(stderr, "error: --t-max must be finite and non-negative");
                return EXIT_USAGE;
            }
            let (table, limit) = tables::limit_trace(&u, &x, &lamination, t_max, steps as usize);
            match limit {
                Ok(v) => {
                    let _ = writeln!(stderr, "radial limit {}", crate::verify::report::fmt_f64(v));
                }
                Err(e) => {
                    let _ = writeln!(stderr, "radial limit: {e}");
                }
            }
            emit(&table, output.as_ref(), stdout, stderr)
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}
