//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation or hypothesis failure, 2 window
//! truncation under `--strict`, 64 usage error. Settings come from flags,
//! then a flat `key=value` config file, then defaults.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::argument::{find_jump_with_floor, jump_set_measure, DEFAULT_MODULUS_FLOOR};
use crate::blt::{
    dyadic, harmonic_growth_slope, interpolation_check_at, prop41_check, sweep, sweep_resolution,
    KernelSpec, TailOptions, TailProfile, PQ_CSV_HEADER, PROP41_CSV_HEADER, TAIL_CSV_HEADER,
};
use crate::error::{Error, Result};
use crate::fourier::{fourier_fft, inverse_fourier};
use crate::report::{fmt17, JsonRow};
use crate::riesz::{bounds_from_zak, gram_bounds_at, is_riesz_basis, RieszBounds, DEFAULT_FLOOR};
use crate::signals::{catalog, energy, sample_at, GeneratorSpec, Resolution, SampledSignal, ZakSource};
use crate::zak::{
    check_fourier_zak, inverse_zak, twisted_chi_grid, zak_convolution_check, zak_extend, zak_transform,
    ZakGrid,
};

/// Thread-count override for the library's parallel loops.
pub const THREADS_ENV: &str = "GABOR_ZAK_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_TRUNCATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    ZakRange,
    GramEigen,
}

#[derive(Debug, Parser)]
#[command(name = "gabor-zak", about = "Zak-transform checks of Balian-Low type inequalities")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Generator id (see `catalog`).
    #[arg(long, global = true)]
    generator: Option<String>,
    /// Number of terms of the band-limited counterexample.
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// Sampling window half-width.
    #[arg(long = "t", global = true)]
    half_width: Option<usize>,
    /// Samples per unit length.
    #[arg(long = "m", global = true)]
    rate: Option<usize>,
    /// Zak grid points along x.
    #[arg(long, global = true)]
    mx: Option<usize>,
    /// Zak grid points along y.
    #[arg(long, global = true)]
    ny: Option<usize>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Treat radii beyond the sampling window as errors.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Flat `key=value` file; keys are long flag names.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List generator ids.
    Catalog,
    /// Zak transform of a generator on an `mx × ny` grid.
    Zak,
    /// Riesz bounds from the Zak range or a Gram section.
    Bounds {
        #[arg(long, value_enum, default_value = "zak-range")]
        method: Method,
        /// Gram section half-size.
        #[arg(long = "p", default_value_t = 8)]
        truncation: usize,
        #[arg(long, default_value_t = DEFAULT_FLOOR)]
        floor: f64,
    },
    /// Tail energies over an (R, L) grid.
    Sweep {
        #[arg(long, value_delimiter = ',')]
        rs: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        ls: Vec<f64>,
    },
    /// Amalgam tails over an integer (R, L) grid.
    PqSweep {
        #[arg(long = "p", default_value_t = 2.0)]
        p: f64,
        #[arg(long, value_delimiter = ',')]
        rs: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        ls: Vec<usize>,
    },
    /// Argument-jump witnesses on K × N lattices.
    Argjump {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        base_x: Option<f64>,
        #[arg(long)]
        base_y: Option<f64>,
        /// Random (base, K, N) draws when K and N are not given.
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_MODULUS_FLOOR)]
        floor: f64,
    },
    /// Measure of the set of large lattice differences.
    Jumpset {
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
    },
    /// Tail and moment growth of the band-limited counterexample.
    Prop41 {
        #[arg(long, default_value_t = 6)]
        n_min: u32,
        #[arg(long, default_value_t = 11)]
        n_max: u32,
    },
    /// Identity suite over the catalog.
    Verify,
}

/// Parses `argv` (program name first), runs the subcommand, returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut args: Vec<String> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = apply_config(&mut args) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match execute(&cli) {
        Ok(Outcome { text, passed }) => {
            if let Err(e) = emit(&cli.common, &text) {
                eprintln!("error: {e}");
                return EXIT_FAILURE;
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Truncation(_) if cli.common.strict => EXIT_TRUNCATION,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Appends `--key value` for every config entry whose flag is absent from `args`.
fn apply_config(args: &mut Vec<String>) -> std::result::Result<(), String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(()) };
    let text = fs::read_to_string(&path).map_err(|e| format!("config {path}: {e}"))?;
    let mut extra = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config {path}:{}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        let flag = format!("--{key}");
        let given = args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        if key == "strict" {
            match value {
                "true" | "1" => extra.push(flag),
                "false" | "0" => {}
                other => return Err(format!("config {path}: strict = {other}")),
            }
        } else {
            extra.push(flag);
            extra.push(value.to_string());
        }
    }
    args.extend(extra);
    Ok(())
}

fn emit(common: &Common, text: &str) -> std::io::Result<()> {
    match &common.output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn generator(common: &Common, fallback: &str) -> Result<GeneratorSpec> {
    let id = common.generator.as_deref().unwrap_or(fallback);
    GeneratorSpec::from_id(id, common.kmax)
}

fn resolution(common: &Common, default: Resolution) -> Resolution {
    Resolution::new(
        common.half_width.unwrap_or(default.half_width),
        common.rate.unwrap_or(default.rate),
    )
}

fn check_pow2(name: &str, v: usize) -> Result<()> {
    if v.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {v} is not a power of two")))
    }
}

/// Zak grid of `spec` on `mx × ny`. The unimodular twist is tabulated
/// directly; everything else is sampled at `rate = mx`.
fn grid_for(spec: &GeneratorSpec, common: &Common, mx: usize, ny: usize) -> Result<ZakGrid> {
    check_pow2("mx", mx)?;
    check_pow2("ny", ny)?;
    if matches!(spec, GeneratorSpec::FromZakGrid(ZakSource::TwistedChi)) && common.half_width.is_none() && common.rate.is_none() {
        return twisted_chi_grid(mx, ny);
    }
    let res = resolution(common, Resolution::new(spec.default_resolution().half_width, mx));
    let s = sample_at(spec, res)?;
    zak_transform(&s, mx, ny)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let format = |default: Format| c.format.unwrap_or(default);
    match &cli.command {
        Command::Catalog => Ok(Outcome::ok(catalog_text(format(Format::Csv)))),
        Command::Zak => {
            let spec = generator(c, "chi01")?;
            let (mx, ny) = (c.mx.unwrap_or(256), c.ny.unwrap_or(256));
            let grid = grid_for(&spec, c, mx, ny)?;
            match format(Format::Csv) {
                Format::Csv => {
                    let mut buf = Vec::new();
                    grid.write_csv(&mut buf)?;
                    Ok(Outcome::ok(String::from_utf8(buf).expect("ascii csv")))
                }
                Format::Json => {
                    let row = JsonRow::new()
                        .text("generator", spec.id())
                        .int("M_x", mx as i64)
                        .int("N_y", ny as i64)
                        .num("mean_square", grid.mean_square())
                        .num("truncation_residual", grid.truncation_residual());
                    Ok(Outcome::ok(row.finish() + "\n"))
                }
            }
        }
        Command::Bounds {
            method,
            truncation,
            floor,
        } => {
            let spec = generator(c, "chi01")?;
            let b = match method {
                Method::ZakRange => {
                    let (mx, ny) = (c.mx.unwrap_or(256), c.ny.unwrap_or(256));
                    bounds_from_zak(&grid_for(&spec, c, mx, ny)?)
                }
                Method::GramEigen => {
                    gram_bounds_at(&spec, *truncation, resolution(c, spec.default_resolution()))?
                }
            };
            Ok(Outcome::ok(bounds_text(&spec, &b, *floor, format(Format::Json))))
        }
        Command::Sweep { rs, ls } => {
            let spec = generator(c, "chi01")?;
            let opts = TailOptions {
                resolution: Some(resolution(c, sweep_resolution(&spec))),
                strict: c.strict,
            };
            let (rs, ls) = (or_dyadic(rs), or_dyadic(ls));
            let result = sweep(&spec, &rs, &ls, &opts)?;
            let best = &result.reports[result.argmin];
            let mut out = String::new();
            match format(Format::Csv) {
                Format::Csv => {
                    writeln!(out, "{TAIL_CSV_HEADER}").unwrap();
                    for rep in &result.reports {
                        writeln!(out, "{}", rep.csv_row()).unwrap();
                    }
                }
                Format::Json => {
                    for rep in &result.reports {
                        let row = JsonRow::new()
                            .num("R", rep.r)
                            .num("L", rep.l)
                            .num("time_tail", rep.time_tail)
                            .num("freq_tail", rep.freq_tail)
                            .num("lhs", rep.lhs)
                            .num("normalized", rep.normalized)
                            .text("flags", rep.flags.label());
                        writeln!(out, "{}", row.finish()).unwrap();
                    }
                    let summary = JsonRow::new()
                        .text("generator", spec.id())
                        .num("inf_normalized", result.inf_normalized)
                        .num("argmin_R", best.r)
                        .num("argmin_L", best.l);
                    writeln!(out, "{}", summary.finish()).unwrap();
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::PqSweep { p, rs, ls } => {
            let spec = generator(c, "chi01")?;
            let profile = TailProfile::new(&spec, resolution(c, sweep_resolution(&spec)))?.amalgam(*p)?;
            let rs = if rs.is_empty() { dyadic_usize() } else { rs.clone() };
            let ls = if ls.is_empty() { dyadic_usize() } else { ls.clone() };
            let mut out = String::new();
            let fmt = format(Format::Csv);
            if fmt == Format::Csv {
                writeln!(out, "{PQ_CSV_HEADER}").unwrap();
            }
            for &r in &rs {
                for &l in &ls {
                    let rep = profile.report(r, l, c.strict)?;
                    match fmt {
                        Format::Csv => writeln!(out, "{}", rep.csv_row()).unwrap(),
                        Format::Json => {
                            let row = JsonRow::new()
                                .int("R", r as i64)
                                .int("L", l as i64)
                                .num("p", rep.p)
                                .num("q", rep.q)
                                .num("lhs", rep.lhs)
                                .num("normalized", rep.normalized)
                                .text("flags", rep.flags.label());
                            writeln!(out, "{}", row.finish()).unwrap()
                        }
                    }
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Argjump {
            k,
            n,
            base_x,
            base_y,
            trials,
            floor,
        } => {
            let spec = generator(c, "chi01")?;
            let (mx, ny) = (c.mx.unwrap_or(256), c.ny.unwrap_or(256));
            let grid = grid_for(&spec, c, mx, ny)?;
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            let sizes = [8usize, 16, 32, 64];
            let mut out = String::new();
            for trial in 0..*trials {
                let kk = k.unwrap_or_else(|| sizes[rng.gen_range(0..sizes.len())]);
                let nn = n.unwrap_or_else(|| sizes[rng.gen_range(0..sizes.len())]);
                let bx = base_x.unwrap_or_else(|| random_node(&mut rng, mx, kk));
                let by = base_y.unwrap_or_else(|| random_node(&mut rng, ny, nn));
                let w = find_jump_with_floor(&grid, (bx, by), kk, nn, *floor)?;
                let row = JsonRow::new()
                    .int("trial", trial as i64)
                    .int("K", kk as i64)
                    .int("N", nn as i64)
                    .num("base_x", bx)
                    .num("base_y", by)
                    .int("i", w.i as i64)
                    .int("j", w.j as i64)
                    .text("direction", w.direction.name())
                    .num("jump", w.jump);
                writeln!(out, "{}", row.finish()).unwrap();
            }
            Ok(Outcome::ok(out))
        }
        Command::Jumpset { k, n, delta } => {
            let spec = generator(c, "chi01")?;
            let (mx, ny) = (c.mx.unwrap_or(256), c.ny.unwrap_or(256));
            let grid = grid_for(&spec, c, mx, ny)?;
            let measure = jump_set_measure(&grid, *k, *n, *delta)?;
            let row = JsonRow::new()
                .text("generator", spec.id())
                .int("K", *k as i64)
                .int("N", *n as i64)
                .num("delta", *delta)
                .num("measure", measure)
                .num("lower_bound", 1.0 / (k * n) as f64);
            Ok(Outcome::ok(row.finish() + "\n"))
        }
        Command::Prop41 { n_min, n_max } => {
            if n_min > n_max {
                return Err(Error::InvalidParameter(format!("n-min {n_min} > n-max {n_max}")));
            }
            let ns: Vec<u32> = (*n_min..=*n_max).collect();
            let rows = prop41_check(c.kmax.unwrap_or(14), &ns)?;
            let mut out = String::new();
            match format(Format::Csv) {
                Format::Csv => {
                    writeln!(out, "{PROP41_CSV_HEADER}").unwrap();
                    for r in &rows {
                        writeln!(out, "{}", r.csv_row()).unwrap();
                    }
                }
                Format::Json => {
                    for r in &rows {
                        let row = JsonRow::new()
                            .int("n", r.n as i64)
                            .num("R_n", r.r_n)
                            .num("tail_at_Rn", r.tail_at_rn)
                            .num("fitted_C", r.fitted_c)
                            .num("moment_partial", r.moment_partial);
                        writeln!(out, "{}", row.finish()).unwrap();
                    }
                    let summary = JsonRow::new().num("harmonic_slope", harmonic_growth_slope(&rows));
                    writeln!(out, "{}", summary.finish()).unwrap();
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Verify => {
            let specs = match &c.generator {
                Some(_) => vec![generator(c, "chi01")?],
                None => catalog().into_iter().map(|e| e.spec).collect(),
            };
            let mut checks = Vec::new();
            for spec in &specs {
                checks.extend(verify_generator(spec, c.seed)?);
            }
            let passed = checks.iter().all(|r| r.passed());
            Ok(Outcome {
                text: verify_text(&checks, format(Format::Csv)),
                passed,
            })
        }
    }
}

fn or_dyadic(v: &[f64]) -> Vec<f64> {
    if v.is_empty() {
        dyadic(8)
    } else {
        v.to_vec()
    }
}

fn dyadic_usize() -> Vec<usize> {
    (0..=8).map(|e| 1usize << e).collect()
}

fn random_node(rng: &mut ChaCha8Rng, size: usize, parts: usize) -> f64 {
    let cells = (size / parts).max(1);
    rng.gen_range(0..cells) as f64 / size as f64
}

fn catalog_text(format: Format) -> String {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("id,T,M,description\n");
    }
    for e in catalog() {
        let res = e.spec.default_resolution();
        match format {
            Format::Csv => {
                writeln!(out, "{},{},{},\"{}\"", e.id, res.half_width, res.rate, e.description).unwrap()
            }
            Format::Json => {
                let row = JsonRow::new()
                    .text("id", e.id)
                    .int("T", res.half_width as i64)
                    .int("M", res.rate as i64)
                    .text("description", e.description);
                writeln!(out, "{}", row.finish()).unwrap()
            }
        }
    }
    out
}

fn bounds_text(spec: &GeneratorSpec, b: &RieszBounds, floor: f64, format: Format) -> String {
    let (x, y) = b.lower_at.unwrap_or((f64::NAN, f64::NAN));
    let riesz = is_riesz_basis(b, floor);
    match format {
        Format::Json => {
            let row = JsonRow::new()
                .num("A", b.lower)
                .num("B", b.upper)
                .text("method", b.method.name())
                .text("generator", spec.id())
                .int("res_x", b.resolution.0 as i64)
                .int("res_y", b.resolution.1 as i64)
                .num("min_x", x)
                .num("min_y", y)
                .flag("riesz_basis", riesz);
            row.finish() + "\n"
        }
        Format::Csv => format!(
            "A,B,method,generator,res_x,res_y,min_x,min_y,riesz_basis\n{},{},{},{},{},{},{},{},{}\n",
            fmt17(b.lower),
            fmt17(b.upper),
            b.method.name(),
            spec.id(),
            b.resolution.0,
            b.resolution.1,
            fmt17(x),
            fmt17(y),
            riesz
        ),
    }
}

/// One identity check: `residual` is compared against `tolerance`, or must
/// be at least `-tolerance` for one-sided checks.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub generator: String,
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
    pub one_sided: bool,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        if self.one_sided {
            self.residual >= -self.tolerance
        } else {
            self.residual.abs() <= self.tolerance
        }
    }
}

fn verify_text(checks: &[CheckResult], format: Format) -> String {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("generator,check,residual,tolerance,pass\n");
    }
    for r in checks {
        match format {
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{}",
                r.generator,
                r.check,
                fmt17(r.residual),
                fmt17(r.tolerance),
                r.passed()
            )
            .unwrap(),
            Format::Json => {
                let row = JsonRow::new()
                    .text("generator", &r.generator)
                    .text("check", &r.check)
                    .num("residual", r.residual)
                    .num("tolerance", r.tolerance)
                    .flag("pass", r.passed());
                writeln!(out, "{}", row.finish()).unwrap()
            }
        }
    }
    out
}

/// Verification runs at the generator's window with at most 64 samples per
/// unit: every identity below is exact for the discrete transforms, so the
/// coarse rate loses nothing and keeps the direct convolution cheap.
pub fn verify_resolution(spec: &GeneratorSpec) -> Resolution {
    let d = spec.default_resolution();
    Resolution::new(d.half_width, d.rate.min(64))
}

fn max_rel_diff(a: &SampledSignal, b: &SampledSignal) -> f64 {
    let scale = a.samples().iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    a.samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Unitarity, quasi-periodicity, Fourier–Zak, convolution, round trips and
/// interpolation slack for one generator.
pub fn verify_generator(spec: &GeneratorSpec, seed: u64) -> Result<Vec<CheckResult>> {
    let res = verify_resolution(spec);
    let s = sample_at(spec, res)?;
    let (t, m) = (res.half_width, res.rate);
    let id = spec.id().to_string();
    let mut out = Vec::new();
    let mut push = |check: &str, residual: f64, tolerance: f64, one_sided: bool| {
        out.push(CheckResult {
            generator: id.clone(),
            check: check.to_string(),
            residual,
            tolerance,
            one_sided,
        })
    };

    let e = energy(&s);
    let full = zak_transform(&s, m, 2 * t)?;
    push("unitarity", (full.mean_square() - e) / e, 1e-6, false);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (mi, li) = (rng.gen_range(0..m), rng.gen_range(0..2 * t));
        let (a, b) = (rng.gen_range(-5i64..=5), rng.gen_range(-5i64..=5));
        let (x, y) = (mi as f64 / m as f64, li as f64 / (2 * t) as f64);
        let base = full.node(mi, li);
        let expected = Complex64::from_polar(1.0, 2.0 * PI * a as f64 * y) * base;
        let got = zak_extend(&full, x + a as f64, y + b as f64)?;
        worst = worst.max((got - expected).norm() / base.norm().max(1.0));
    }
    push("quasi_periodicity", worst, 1e-12, false);

    let ghat = fourier_fft(&s)?;
    let g = m.min(2 * t).min(256);
    let fz = check_fourier_zak(&zak_transform(&s, g, g)?, &zak_transform(&ghat, g, g)?)?;
    let zmax = full.values().iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    push("fourier_zak", fz / zmax, 1e-9, false);

    let kernel = KernelSpec::raised_cosine(2.0)?.samples(&s)?;
    push("convolution", zak_convolution_check(&s, &kernel)? / zmax, 1e-9, false);

    push("fourier_round_trip", max_rel_diff(&s, &inverse_fourier(&ghat)?), 1e-10, false);
    push("zak_round_trip", max_rel_diff(&s, &inverse_zak(&full)?), 1e-10, false);

    for (label, p) in [("1", 1.0), ("4/3", 4.0 / 3.0), ("3/2", 1.5), ("2", 2.0)] {
        let slack = interpolation_check_at(spec, p, res)?;
        push(&format!("interpolation_p={label}"), slack, 1e-6, p != 2.0);
    }
    Ok(out)
}
