//! Generator catalog, uniform-grid sampling, and real-line quadrature.
//!
//! A sampled signal lives on the window `[-T, T)` with `M` samples per unit
//! interval. Sample `n` carries the value on the cell `[t_n, t_n + 1/M)`
//! where `t_n = -T + n/M`, so every integral below is the exact integral of
//! that piecewise-constant function. Unit intervals `[k, k+1)` are made of
//! exactly `M` consecutive cells, which keeps indicator-type generators exact.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::zak::{self, ZakGrid};

/// Largest number of samples `sample` will allocate unless told otherwise.
pub const DEFAULT_SAMPLE_CAP: usize = 1 << 24;

/// Which variable a signal's abscissa measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Time,
    Frequency,
}

/// Window half-width `T` and samples-per-unit `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub half_width: usize,
    pub rate: usize,
}

impl Resolution {
    pub fn new(half_width: usize, rate: usize) -> Self {
        Resolution { half_width, rate }
    }

    pub fn len(&self) -> usize {
        2 * self.half_width * self.rate
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Source of a generator defined through its Zak transform.
#[derive(Debug, Clone)]
pub enum ZakSource {
    /// A stored grid; synthesis is only possible at the grid's own resolution.
    Grid(Arc<ZakGrid>),
    /// `Zg(x, y) = exp(2πi sin(2πx) sin(2πy))` on the unit square: a unimodular
    /// quasi-periodic function, hence an orthonormal-basis generator.
    TwistedChi,
}

/// Closed-form description of a generator `g`.
#[derive(Debug, Clone)]
pub enum GeneratorSpec {
    /// Indicator of `[0, 1)`.
    Chi01,
    /// `2^{1/4} exp(-π t²)`, unit `L²` norm and its own Fourier transform.
    Gaussian,
    /// Partial sum `Σ_{k=1}^{kmax} sin²(t - 2^k) / (√k 2^k (t - 2^k)²)`.
    BltCounterexample { kmax: u32 },
    /// `g + ĝ` for a base generator with a closed-form transform.
    SumWithFourier(Box<GeneratorSpec>),
    /// Generator synthesized from Zak-domain data by inverse Zak.
    FromZakGrid(ZakSource),
}

/// One catalog row.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub spec: GeneratorSpec,
    pub description: &'static str,
}

/// Every generator the library ships, at default parameters.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: "chi01",
            spec: GeneratorSpec::Chi01,
            description: "indicator of [0,1); orthonormal basis, |Zg| = 1",
        },
        CatalogEntry {
            id: "gaussian",
            spec: GeneratorSpec::Gaussian,
            description: "unit-norm Gaussian; Zak transform vanishes at (1/2,1/2)",
        },
        CatalogEntry {
            id: "twisted_chi",
            spec: GeneratorSpec::twisted_chi(),
            description: "unimodular phase twist of Z(chi01); orthonormal basis",
        },
        CatalogEntry {
            id: "blt_counterexample",
            spec: GeneratorSpec::BltCounterexample { kmax: 10 },
            description: "band-limited partial sum with divergent time moment and fast tail decay",
        },
        CatalogEntry {
            id: "sum_with_fourier",
            spec: GeneratorSpec::SumWithFourier(Box::new(GeneratorSpec::BltCounterexample {
                kmax: 6,
            })),
            description: "g + ĝ for the band-limited counterexample; both moments diverge",
        },
    ]
}

impl GeneratorSpec {
    pub fn twisted_chi() -> Self {
        GeneratorSpec::FromZakGrid(ZakSource::TwistedChi)
    }

    pub fn from_grid(grid: ZakGrid) -> Self {
        GeneratorSpec::FromZakGrid(ZakSource::Grid(Arc::new(grid)))
    }

    /// Looks up a catalog id. `kmax` overrides the cutoff of the counterexample
    /// (and of the counterexample inside `sum_with_fourier`).
    pub fn from_id(id: &str, kmax: Option<u32>) -> Result<Self> {
        let spec = match id {
            "chi01" => GeneratorSpec::Chi01,
            "gaussian" => GeneratorSpec::Gaussian,
            "twisted_chi" => GeneratorSpec::twisted_chi(),
            "blt_counterexample" => GeneratorSpec::BltCounterexample {
                kmax: kmax.unwrap_or(10),
            },
            "sum_with_fourier" => GeneratorSpec::sum_with_fourier(
                GeneratorSpec::BltCounterexample {
                    kmax: kmax.unwrap_or(6),
                },
            )?,
            other => return Err(Error::invalid(format!("unknown generator id `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn sum_with_fourier(base: GeneratorSpec) -> Result<Self> {
        if !base.has_closed_form_fourier() || matches!(base, GeneratorSpec::SumWithFourier(_)) {
            return Err(Error::invalid(
                "sum_with_fourier needs a base with a closed-form transform",
            ));
        }
        Ok(GeneratorSpec::SumWithFourier(Box::new(base)))
    }

    pub fn id(&self) -> &'static str {
        match self {
            GeneratorSpec::Chi01 => "chi01",
            GeneratorSpec::Gaussian => "gaussian",
            GeneratorSpec::BltCounterexample { .. } => "blt_counterexample",
            GeneratorSpec::SumWithFourier(_) => "sum_with_fourier",
            GeneratorSpec::FromZakGrid(ZakSource::TwistedChi) => "twisted_chi",
            GeneratorSpec::FromZakGrid(ZakSource::Grid(_)) => "from_zak_grid",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GeneratorSpec::BltCounterexample { kmax } if *kmax == 0 || *kmax > 40 => {
                Err(Error::invalid(format!("kmax must be in 1..=40, got {kmax}")))
            }
            GeneratorSpec::SumWithFourier(base) => base.validate(),
            _ => Ok(()),
        }
    }

    pub fn has_closed_form_fourier(&self) -> bool {
        match self {
            GeneratorSpec::Chi01
            | GeneratorSpec::Gaussian
            | GeneratorSpec::BltCounterexample { .. } => true,
            GeneratorSpec::SumWithFourier(base) => base.has_closed_form_fourier(),
            GeneratorSpec::FromZakGrid(_) => false,
        }
    }

    /// Window and rate used when the caller does not choose one.
    pub fn default_resolution(&self) -> Resolution {
        match self {
            GeneratorSpec::Chi01 | GeneratorSpec::Gaussian => Resolution::new(32, 256),
            GeneratorSpec::BltCounterexample { kmax } => Resolution::new(1 << (kmax + 1), 8),
            GeneratorSpec::SumWithFourier(base) => match base.as_ref() {
                GeneratorSpec::BltCounterexample { kmax } => {
                    Resolution::new((1 << (kmax + 1)).max(32), 1 << (kmax + 3))
                }
                other => other.default_resolution(),
            },
            GeneratorSpec::FromZakGrid(ZakSource::TwistedChi) => Resolution::new(32, 256),
            GeneratorSpec::FromZakGrid(ZakSource::Grid(grid)) => {
                Resolution::new(grid.n_y() / 2, grid.m_x())
            }
        }
    }

    /// `g(t)`. Zak-defined generators have no pointwise formula.
    pub fn eval(&self, t: f64) -> Result<Complex64> {
        match self {
            GeneratorSpec::Chi01 => Ok(Complex64::new(
                if (0.0..1.0).contains(&t) { 1.0 } else { 0.0 },
                0.0,
            )),
            GeneratorSpec::Gaussian => Ok(Complex64::new(gaussian(t), 0.0)),
            GeneratorSpec::BltCounterexample { kmax } => {
                Ok(Complex64::new(counterexample(*kmax, t), 0.0))
            }
            GeneratorSpec::SumWithFourier(base) => Ok(base.eval(t)? + base.eval_fourier(t)?),
            GeneratorSpec::FromZakGrid(_) => Err(Error::Unsupported(
                "from_zak_grid generators are evaluated through inverse Zak".into(),
            )),
        }
    }

    /// Closed-form `ĝ(ξ) = ∫ g(t) e^{-2πiξt} dt`.
    pub fn eval_fourier(&self, xi: f64) -> Result<Complex64> {
        match self {
            GeneratorSpec::Chi01 => Ok(Complex64::from_polar(1.0, -PI * xi) * sinc(xi)),
            GeneratorSpec::Gaussian => Ok(Complex64::new(gaussian(xi), 0.0)),
            GeneratorSpec::BltCounterexample { kmax } => {
                // FT of sin²(u)/u² is the triangle π(1 - π|ξ|)₊; each bump is a shifted copy.
                let tri = PI * (1.0 - PI * xi.abs()).max(0.0);
                if tri == 0.0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 1..=*kmax {
                    let centre = (1u64 << k) as f64;
                    let w = 1.0 / ((k as f64).sqrt() * centre);
                    acc += Complex64::from_polar(w, -2.0 * PI * xi * centre);
                }
                Ok(acc * tri)
            }
            GeneratorSpec::SumWithFourier(base) => Ok(base.eval_fourier(xi)? + base.eval(-xi)?),
            GeneratorSpec::FromZakGrid(_) => Err(Error::Unsupported(
                "no closed-form transform for from_zak_grid generators".into(),
            )),
        }
    }

    /// Upper bound on `∫_{|t| ≥ T} |g|²`.
    pub fn outside_energy_bound(&self, half_width: usize) -> f64 {
        let t = half_width as f64;
        match self {
            GeneratorSpec::Chi01 => 0.0,
            // Mills ratio: ∫_T^∞ e^{-2πt²} ≤ e^{-2πT²} / (4πT).
            GeneratorSpec::Gaussian => 2.0 * 2f64.sqrt() * (-2.0 * PI * t * t).exp() / (4.0 * PI * t),
            GeneratorSpec::BltCounterexample { kmax } => {
                let last = (1u64 << kmax) as f64;
                if t <= last {
                    return f64::INFINITY;
                }
                let s: f64 = (1..=*kmax)
                    .map(|k| 1.0 / ((k as f64).sqrt() * (1u64 << k) as f64))
                    .sum();
                2.0 * s * s / (3.0 * (t - last).powi(3))
            }
            GeneratorSpec::SumWithFourier(base) => {
                let hat = match base.as_ref() {
                    GeneratorSpec::Chi01 => 2.0 / (PI * PI * t),
                    GeneratorSpec::Gaussian => base.outside_energy_bound(half_width),
                    _ => 0.0,
                };
                2.0 * (base.outside_energy_bound(half_width) + hat)
            }
            GeneratorSpec::FromZakGrid(_) => 0.0,
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::BltCounterexample { kmax } => write!(f, "blt_counterexample(kmax={kmax})"),
            GeneratorSpec::SumWithFourier(base) => write!(f, "sum_with_fourier({base})"),
            other => f.write_str(other.id()),
        }
    }
}

fn gaussian(t: f64) -> f64 {
    2f64.powf(0.25) * (-PI * t * t).exp()
}

/// `sin(πx)/(πx)` with the value 1 at the origin.
pub(crate) fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

fn counterexample(kmax: u32, t: f64) -> f64 {
    (1..=kmax)
        .map(|k| {
            let centre = (1u64 << k) as f64;
            let u = t - centre;
            let bump = if u == 0.0 { 1.0 } else { (u.sin() / u).powi(2) };
            bump / ((k as f64).sqrt() * centre)
        })
        .sum()
}

/// Complex samples of a function on `[-T, T)` with `M` samples per unit.
#[derive(Debug, Clone)]
pub struct SampledSignal {
    half_width: usize,
    rate: usize,
    samples: Vec<Complex64>,
    domain: Domain,
    outside_energy: f64,
    source: Option<GeneratorSpec>,
}

impl SampledSignal {
    pub fn new(domain: Domain, half_width: usize, rate: usize, samples: Vec<Complex64>) -> Result<Self> {
        if half_width == 0 || rate == 0 {
            return Err(Error::invalid("window half-width and rate must be positive"));
        }
        if samples.len() != 2 * half_width * rate {
            return Err(Error::invalid(format!(
                "expected {} samples for T={half_width}, M={rate}, got {}",
                2 * half_width * rate,
                samples.len()
            )));
        }
        Ok(SampledSignal {
            half_width,
            rate,
            samples,
            domain,
            outside_energy: 0.0,
            source: None,
        })
    }

    pub(crate) fn with_source(mut self, source: Option<GeneratorSpec>, outside_energy: f64) -> Self {
        self.source = source;
        self.outside_energy = outside_energy;
        self
    }

    pub fn start(&self) -> f64 {
        -(self.half_width as f64)
    }

    pub fn step(&self) -> f64 {
        1.0 / self.rate as f64
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn rate(&self) -> usize {
        self.rate
    }

    pub fn resolution(&self) -> Resolution {
        Resolution::new(self.half_width, self.rate)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn source(&self) -> Option<&GeneratorSpec> {
        self.source.as_ref()
    }

    /// Estimate (or bound) of the `|·|²` mass outside the window.
    pub fn outside_energy(&self) -> f64 {
        self.outside_energy
    }

    /// Abscissa of sample `n`.
    pub fn abscissa(&self, n: usize) -> f64 {
        // Exact for power-of-two rates.
        (n as f64 - (self.half_width * self.rate) as f64) / self.rate as f64
    }
}

/// Samples `g` at `t = -T + n/M`, `n = 0..2TM`.
pub fn sample(spec: &GeneratorSpec, half_width: usize, rate: usize) -> Result<SampledSignal> {
    sample_with_cap(spec, half_width, rate, DEFAULT_SAMPLE_CAP)
}

pub fn sample_at(spec: &GeneratorSpec, res: Resolution) -> Result<SampledSignal> {
    sample(spec, res.half_width, res.rate)
}

pub fn sample_with_cap(
    spec: &GeneratorSpec,
    half_width: usize,
    rate: usize,
    cap: usize,
) -> Result<SampledSignal> {
    spec.validate()?;
    if half_width < 1 {
        return Err(Error::invalid("window half-width T must be at least 1"));
    }
    if rate < 2 || !rate.is_power_of_two() {
        return Err(Error::invalid(format!(
            "samples per unit M must be a power of two ≥ 2, got {rate}"
        )));
    }
    let n = half_width
        .checked_mul(rate)
        .and_then(|v| v.checked_mul(2))
        .unwrap_or(usize::MAX);
    if n > cap {
        return Err(Error::TooLarge { requested: n, cap });
    }
    let signal = match spec {
        GeneratorSpec::FromZakGrid(source) => {
            let grid = match source {
                ZakSource::Grid(grid) => {
                    if grid.m_x() != rate || grid.n_y() != 2 * half_width {
                        return Err(Error::Misaligned(format!(
                            "stored Zak grid {}x{} synthesizes T={}, M={} only",
                            grid.m_x(),
                            grid.n_y(),
                            grid.n_y() / 2,
                            grid.m_x()
                        )));
                    }
                    grid.as_ref().clone()
                }
                ZakSource::TwistedChi => zak::twisted_chi_grid(rate, 2 * half_width)?,
            };
            zak::inverse_zak(&grid)?
        }
        _ => {
            let mut samples = Vec::with_capacity(n);
            let centre = (half_width * rate) as f64;
            for i in 0..n {
                let t = (i as f64 - centre) / rate as f64;
                samples.push(spec.eval(t)?);
            }
            SampledSignal::new(Domain::Time, half_width, rate, samples)?
        }
    };
    let outside = spec.outside_energy_bound(half_width);
    Ok(signal.with_source(Some(spec.clone()), outside))
}

/// `∫ |s|²` over the window.
pub fn energy(s: &SampledSignal) -> f64 {
    s.step() * s.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()
}

/// A tail integral plus whether the requested region left the window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tail {
    pub energy: f64,
    pub truncated: bool,
}

/// `∫_{|t| > R} |s|²`, clipped to the window. Cells straddling `±R` count
/// with the fraction of their length outside `[-R, R]`.
pub fn tail_energy(s: &SampledSignal, radius: f64) -> Result<Tail> {
    if !(radius >= 0.0) {
        return Err(Error::invalid(format!("tail radius must be ≥ 0, got {radius}")));
    }
    let h = s.step();
    let mut acc = 0.0;
    for (n, z) in s.samples.iter().enumerate() {
        let a = s.abscissa(n);
        let inside = (radius.min(a + h) - (-radius).max(a)).max(0.0);
        let weight = 1.0 - inside / h;
        if weight > 0.0 {
            acc += weight * z.norm_sqr();
        }
    }
    Ok(Tail {
        energy: h * acc,
        truncated: radius >= s.half_width as f64,
    })
}

/// Prefix and suffix sums of cell energies for repeated tail queries.
/// Agrees with [`tail_energy`] up to summation order.
#[derive(Debug, Clone)]
pub struct TailTable {
    half_width: usize,
    rate: usize,
    cells: Vec<f64>,
    prefix: Vec<f64>,
    suffix: Vec<f64>,
}

impl TailTable {
    pub fn new(s: &SampledSignal) -> Self {
        let h = s.step();
        let cells: Vec<f64> = s.samples.iter().map(|z| h * z.norm_sqr()).collect();
        let n = cells.len();
        let mut prefix = vec![0.0; n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] + cells[i];
        }
        let mut suffix = vec![0.0; n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1] + cells[i];
        }
        TailTable {
            half_width: s.half_width,
            rate: s.rate,
            cells,
            prefix,
            suffix,
        }
    }

    pub fn tail(&self, radius: f64) -> Result<Tail> {
        if !(radius >= 0.0) {
            return Err(Error::invalid(format!("tail radius must be ≥ 0, got {radius}")));
        }
        let n = self.cells.len() as i64;
        let m = self.rate as f64;
        let h = 1.0 / m;
        let cell_of = |t: f64| ((t + self.half_width as f64) * m).floor() as i64;
        let hi = cell_of(radius);
        let lo = cell_of(-radius);
        let mut acc = 0.0;
        let first_right = (hi + 1).clamp(0, n) as usize;
        acc += self.suffix[first_right];
        let last_left = lo.clamp(0, n) as usize;
        acc += self.prefix[last_left];
        let mut edge = |i: i64| {
            if (0..n).contains(&i) {
                let a = (i - (self.half_width * self.rate) as i64) as f64 / m;
                let inside = (radius.min(a + h) - (-radius).max(a)).max(0.0);
                acc += (1.0 - inside / h) * self.cells[i as usize];
            }
        };
        edge(lo);
        if hi != lo {
            edge(hi);
        }
        Ok(Tail {
            energy: acc,
            truncated: radius >= self.half_width as f64,
        })
    }
}

fn check_moment_exponent(p: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::invalid(format!("moment exponent p must be in [1, 2], got {p}")));
    }
    Ok(())
}

/// `∫_a^b |t|^p dt`.
fn power_integral(a: f64, b: f64, p: f64) -> f64 {
    let prim = |t: f64| t.signum() * t.abs().powf(p + 1.0) / (p + 1.0);
    prim(b) - prim(a)
}

/// `∫ |t|^p |s(t)|² dt` over the window.
pub fn weighted_moment(s: &SampledSignal, p: f64) -> Result<f64> {
    weighted_moment_outside(s, p, 0.0)
}

/// `∫_{|t| > R} |t|^p |s(t)|² dt` over the window.
pub fn weighted_moment_outside(s: &SampledSignal, p: f64, radius: f64) -> Result<f64> {
    check_moment_exponent(p)?;
    if !(radius >= 0.0) {
        return Err(Error::invalid("radius must be ≥ 0"));
    }
    let h = s.step();
    let mut acc = 0.0;
    for (n, z) in s.samples.iter().enumerate() {
        let a = s.abscissa(n);
        let b = a + h;
        let mut w = 0.0;
        if b > radius {
            w += power_integral(a.max(radius), b, p);
        }
        if a < -radius {
            w += power_integral(a, b.min(-radius), p);
        }
        acc += w * z.norm_sqr();
    }
    Ok(acc)
}

/// Same as [`weighted_moment`] restricted to `[-limit, limit)`.
pub fn weighted_moment_within(s: &SampledSignal, p: f64, limit: f64) -> Result<f64> {
    check_moment_exponent(p)?;
    let h = s.step();
    let mut acc = 0.0;
    for (n, z) in s.samples.iter().enumerate() {
        let a = s.abscissa(n).max(-limit);
        let b = (s.abscissa(n) + h).min(limit);
        if b > a {
            acc += power_integral(a, b, p) * z.norm_sqr();
        }
    }
    Ok(acc)
}

/// Checks `1/p + 1/q = 1` (with `q = ∞` spelled `f64::INFINITY`).
pub fn check_dual_exponents(q: f64, p: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&p) || !(q > 1.0) {
        return Err(Error::invalid(format!("need p in [1,2] and q > 1, got p={p}, q={q}")));
    }
    if ((1.0 / p + 1.0 / q) - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!("1/p + 1/q must equal 1 (p={p}, q={q})")));
    }
    Ok(())
}

/// Conjugate exponent of `p ∈ [1, 2]`.
pub fn dual_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

/// `‖s‖_{L^q(k, k+1)}` for every unit interval of the window, left to right.
pub fn interval_norms(s: &SampledSignal, q: f64) -> Vec<f64> {
    let h = s.step();
    s.samples
        .chunks(s.rate)
        .map(|block| {
            if q.is_infinite() {
                block.iter().map(|z| z.norm()).fold(0.0, f64::max)
            } else {
                (h * block.iter().map(|z| z.norm().powf(q)).sum::<f64>()).powf(1.0 / q)
            }
        })
        .collect()
}

/// `Σ ‖s‖^p_{L^q(k,k+1)}` over unit intervals `[k, k+1)` contained in
/// `{|t| ≥ exclude_radius}`.
pub fn amalgam_norm(s: &SampledSignal, q: f64, p: f64, exclude_radius: usize) -> Result<f64> {
    check_dual_exponents(q, p)?;
    if exclude_radius >= s.half_width {
        return Err(Error::Truncation(format!(
            "window half-width {} does not cover exclusion radius {exclude_radius}",
            s.half_width
        )));
    }
    let first = -(s.half_width as i64);
    let r = exclude_radius as i64;
    Ok(interval_norms(s, q)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| {
            let k = first + *i as i64;
            k >= r || k + 1 <= -r
        })
        .map(|(_, v)| v.powf(p))
        .sum())
}
