//! Tail-energy sweeps against `C/(RL)` and the related Balian-Low diagnostics.
//!
//! The smoothing kernel `ρ` is fixed through its transform: `ρ̂ = 1` on
//! `[-1, 1]`, `0` outside `[-2, 2]`, and a `cos²` taper in between. Scaled
//! kernels `φ(t) = Rρ(Rt)` have `φ̂(ξ) = ρ̂(ξ/R)`, so every convolution here
//! is a multiplication on the dual grid.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{dual_transform, fourier, fourier_fft, Direction};
use crate::report::fmt17;
use crate::signals::{
    check_dual_exponents, dual_exponent, interval_norms, sample_at, weighted_moment,
    weighted_moment_outside, weighted_moment_within, GeneratorSpec, Resolution, SampledSignal,
    TailTable,
};
use crate::zak::zak_transform;

/// `ρ̂(ξ)`: 1 on `|ξ| ≤ 1`, 0 on `|ξ| ≥ 2`, `cos²(π(|ξ| - 1)/2)` between.
pub fn rho_hat(xi: f64) -> f64 {
    let a = xi.abs();
    if a <= 1.0 {
        1.0
    } else if a >= 2.0 {
        0.0
    } else {
        (PI * (a - 1.0) / 2.0).cos().powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Taper {
    RaisedCosine,
}

/// `φ(t) = Rρ(Rt)` for scale `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub taper: Taper,
    pub scale: f64,
}

impl KernelSpec {
    pub fn raised_cosine(scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::invalid(format!("kernel scale must be positive, got {scale}")));
        }
        Ok(KernelSpec {
            taper: Taper::RaisedCosine,
            scale,
        })
    }

    /// `φ̂(ξ) = ρ̂(ξ/R)`.
    pub fn multiplier(&self, xi: f64) -> f64 {
        match self.taper {
            Taper::RaisedCosine => rho_hat(xi / self.scale),
        }
    }

    /// Samples of `φ` on the grid of `like`, periodized over the window.
    pub fn samples(&self, like: &SampledSignal) -> Result<SampledSignal> {
        let (w, r) = (like.rate() / 2, 2 * like.half_width());
        let mut spectrum = Vec::with_capacity(like.len());
        for j in 0..like.len() {
            let xi = (j as f64 - (w * r) as f64) / r as f64;
            spectrum.push(num_complex::Complex64::new(self.multiplier(xi), 0.0));
        }
        let spec = SampledSignal::new(like.domain(), w, r, spectrum)?;
        let (samples, w2, r2) = dual_transform(&spec, Direction::Inverse)?;
        SampledSignal::new(like.domain(), w2, r2, samples)
    }
}

/// `s ∗ φ`: multiplies the transform of `s` by `ρ̂(ν/R)` and transforms back.
/// Works on either domain; the kernel is symmetric so orientation is moot.
pub fn smooth(s: &SampledSignal, kernel: &KernelSpec) -> Result<SampledSignal> {
    let (mut spectrum, w, r) = dual_transform(s, Direction::Forward)?;
    for (j, z) in spectrum.iter_mut().enumerate() {
        let nu = (j as f64 - (w * r) as f64) / r as f64;
        *z *= kernel.multiplier(nu);
    }
    let dual = SampledSignal::new(s.domain(), w, r, spectrum)?;
    let (samples, w2, r2) = dual_transform(&dual, Direction::Inverse)?;
    SampledSignal::new(s.domain(), w2, r2, samples)
}

/// Which side of a tail query fell outside its window.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TruncationFlags {
    pub time: bool,
    pub freq: bool,
}

impl TruncationFlags {
    pub fn any(&self) -> bool {
        self.time || self.freq
    }

    pub fn label(&self) -> &'static str {
        match (self.time, self.freq) {
            (false, false) => "",
            (true, false) => "time",
            (false, true) => "freq",
            (true, true) => "time|freq",
        }
    }
}

/// One `(R, L)` cell: `∫_{|t|>R} |g|² + ∫_{|ξ|>L} |ĝ|²` and `RL` times it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailReport {
    pub r: f64,
    pub l: f64,
    pub time_tail: f64,
    pub freq_tail: f64,
    pub lhs: f64,
    pub normalized: f64,
    pub flags: TruncationFlags,
}

pub const TAIL_CSV_HEADER: &str = "R,L,time_tail,freq_tail,lhs,normalized,flags";

impl TailReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            fmt17(self.r),
            fmt17(self.l),
            fmt17(self.time_tail),
            fmt17(self.freq_tail),
            fmt17(self.lhs),
            fmt17(self.normalized),
            self.flags.label()
        )
    }
}

pub fn write_tail_csv<W: Write>(rows: &[TailReport], mut out: W) -> Result<()> {
    writeln!(out, "{TAIL_CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_row())?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TailOptions {
    /// Overrides the generator's default window and rate.
    pub resolution: Option<Resolution>,
    /// Fail instead of flagging when a radius leaves its window.
    pub strict: bool,
}

/// Resolution used for `(R, L)` sweeps: wide enough for `R ≤ 256` and a
/// Nyquist frequency far above `L = 256`.
pub fn sweep_resolution(spec: &GeneratorSpec) -> Resolution {
    match spec {
        GeneratorSpec::Chi01 | GeneratorSpec::Gaussian | GeneratorSpec::FromZakGrid(_) => {
            Resolution::new(512, 8192)
        }
        other => other.default_resolution(),
    }
}

/// Time and frequency samples of one generator with tail tables for both.
#[derive(Debug, Clone)]
pub struct TailProfile {
    time: SampledSignal,
    freq: SampledSignal,
    time_table: TailTable,
    freq_table: TailTable,
}

impl TailProfile {
    pub fn new(spec: &GeneratorSpec, res: Resolution) -> Result<Self> {
        let time = sample_at(spec, res)?;
        let freq = fourier(&time)?;
        Ok(Self::from_signals(time, freq))
    }

    pub fn from_signals(time: SampledSignal, freq: SampledSignal) -> Self {
        let time_table = TailTable::new(&time);
        let freq_table = TailTable::new(&freq);
        TailProfile {
            time,
            freq,
            time_table,
            freq_table,
        }
    }

    pub fn time(&self) -> &SampledSignal {
        &self.time
    }

    pub fn freq(&self) -> &SampledSignal {
        &self.freq
    }

    pub fn report(&self, r: f64, l: f64, strict: bool) -> Result<TailReport> {
        if !(r >= 1.0 && l >= 1.0) {
            return Err(Error::invalid(format!("need R, L ≥ 1, got R={r}, L={l}")));
        }
        let t = self.time_table.tail(r)?;
        let f = self.freq_table.tail(l)?;
        let flags = TruncationFlags {
            time: t.truncated,
            freq: f.truncated,
        };
        if strict && flags.any() {
            return Err(Error::Truncation(format!(
                "R={r} (window {}) or L={l} (Nyquist {}) not resolvable",
                self.time.half_width(),
                self.freq.half_width()
            )));
        }
        let lhs = t.energy + f.energy;
        Ok(TailReport {
            r,
            l,
            time_tail: t.energy,
            freq_tail: f.energy,
            lhs,
            normalized: r * l * lhs,
            flags,
        })
    }

    /// Per-interval `‖·‖^p_{L^q(k,k+1)}` of both sides, for repeated amalgam queries.
    pub fn amalgam(&self, p: f64) -> Result<AmalgamProfile> {
        let q = dual_exponent(p);
        check_dual_exponents(q, p)?;
        let powers = |s: &SampledSignal| -> Vec<f64> {
            interval_norms(s, q).into_iter().map(|v| v.powf(p)).collect()
        };
        Ok(AmalgamProfile {
            p,
            q,
            time: powers(&self.time),
            freq: powers(&self.freq),
        })
    }

    /// Amalgam tails `Σ ‖g‖^p_{L^q(k,k+1)}` beyond `R` plus the same for `ĝ` beyond `L`.
    pub fn pq(&self, p: f64, r: usize, l: usize, strict: bool) -> Result<PqReport> {
        self.amalgam(p)?.report(r, l, strict)
    }
}

/// Interval norms raised to `p` for the time and frequency sides; entry `i`
/// covers `[i - T, i - T + 1)` for window half-width `T`.
#[derive(Debug, Clone)]
pub struct AmalgamProfile {
    p: f64,
    q: f64,
    time: Vec<f64>,
    freq: Vec<f64>,
}

impl AmalgamProfile {
    pub fn report(&self, r: usize, l: usize, strict: bool) -> Result<PqReport> {
        if r < 1 || l < 1 {
            return Err(Error::invalid("need R, L ≥ 1"));
        }
        let (time_sum, time_cut) = amalgam_tail(&self.time, r);
        let (freq_sum, freq_cut) = amalgam_tail(&self.freq, l);
        let flags = TruncationFlags {
            time: time_cut,
            freq: freq_cut,
        };
        if strict && flags.any() {
            return Err(Error::Truncation(format!(
                "amalgam radii R={r}, L={l} exceed the windows"
            )));
        }
        let lhs = time_sum + freq_sum;
        let ratio = if self.q.is_infinite() { 0.0 } else { self.p / self.q };
        Ok(PqReport {
            r,
            l,
            p: self.p,
            q: self.q,
            lhs,
            normalized: ((r * l) as f64).powf(ratio) * lhs,
            flags,
        })
    }
}

/// Sum over intervals `[k, k+1)` inside `|t| ≥ radius`.
fn amalgam_tail(powers: &[f64], radius: usize) -> (f64, bool) {
    let half = powers.len() / 2;
    if radius >= half {
        return (0.0, true);
    }
    // k ≥ r is index ≥ half + r; k + 1 ≤ -r is index < half - r.
    let sum = powers[..half - radius].iter().sum::<f64>() + powers[half + radius..].iter().sum::<f64>();
    (sum, false)
}

fn resolve(spec: &GeneratorSpec, opts: &TailOptions) -> Resolution {
    opts.resolution.unwrap_or_else(|| sweep_resolution(spec))
}

/// Left side of the main estimate at one `(R, L)`.
pub fn main_estimate_lhs(spec: &GeneratorSpec, r: f64, l: f64, opts: &TailOptions) -> Result<TailReport> {
    TailProfile::new(spec, resolve(spec, opts))?.report(r, l, opts.strict)
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub reports: Vec<TailReport>,
    /// Infimum of `RL · lhs` over the grid: the empirical constant `C`.
    pub inf_normalized: f64,
    /// Index into `reports` where the infimum is attained.
    pub argmin: usize,
}

/// Every `(R, L)` pair of the two lists, `R` outer, `L` inner.
pub fn sweep(spec: &GeneratorSpec, rs: &[f64], ls: &[f64], opts: &TailOptions) -> Result<Sweep> {
    let profile = TailProfile::new(spec, resolve(spec, opts))?;
    sweep_profile(&profile, rs, ls, opts.strict)
}

pub fn sweep_profile(profile: &TailProfile, rs: &[f64], ls: &[f64], strict: bool) -> Result<Sweep> {
    if rs.is_empty() || ls.is_empty() {
        return Err(Error::invalid("sweep lists must be nonempty"));
    }
    let cells: Vec<(f64, f64)> = rs
        .iter()
        .flat_map(|&r| ls.iter().map(move |&l| (r, l)))
        .collect();
    let reports = cells
        .par_iter()
        .map(|&(r, l)| profile.report(r, l, strict))
        .collect::<Result<Vec<_>>>()?;
    let (argmin, inf_normalized) = reports
        .iter()
        .enumerate()
        .map(|(i, rep)| (i, rep.normalized))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    Ok(Sweep {
        reports,
        inf_normalized,
        argmin,
    })
}

/// `{1, 2, 4, …, 2^max_exp}`.
pub fn dyadic(max_exp: u32) -> Vec<f64> {
    (0..=max_exp).map(|e| 2f64.powi(e as i32)).collect()
}

/// `1/R² + log L / L²`: tail decay of the known sharp orthonormal example.
pub fn sharpness_bound(r: f64, l: f64) -> f64 {
    1.0 / (r * r) + l.ln() / (l * l)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqReport {
    pub r: usize,
    pub l: usize,
    pub p: f64,
    pub q: f64,
    pub lhs: f64,
    /// `(RL)^{p/q} · lhs`.
    pub normalized: f64,
    pub flags: TruncationFlags,
}

pub const PQ_CSV_HEADER: &str = "R,L,p,q,lhs,normalized,flags";

impl PqReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.r,
            self.l,
            fmt17(self.p),
            fmt17(self.q),
            fmt17(self.lhs),
            fmt17(self.normalized),
            self.flags.label()
        )
    }
}

pub fn pq_lhs(spec: &GeneratorSpec, p: f64, r: usize, l: usize, opts: &TailOptions) -> Result<PqReport> {
    TailProfile::new(spec, resolve(spec, opts))?.pq(p, r, l, opts.strict)
}

/// `Σ_k ‖g‖^p_{L^q(k,k+1)} - ‖Zg‖^p_{L^q(Q)}` on the full-rate Zak grid
/// with `N_y = 2T`, where the discrete inequality holds exactly.
pub fn interpolation_check(spec: &GeneratorSpec, p: f64) -> Result<f64> {
    interpolation_check_at(spec, p, spec.default_resolution())
}

pub fn interpolation_check_at(spec: &GeneratorSpec, p: f64, res: Resolution) -> Result<f64> {
    let q = dual_exponent(p);
    check_dual_exponents(q, p)?;
    let s = sample_at(spec, res)?;
    let grid = zak_transform(&s, s.rate(), 2 * s.half_width())?;
    let zak_norm = if q.is_infinite() {
        grid.values().iter().map(|z| z.norm()).fold(0.0, f64::max)
    } else {
        let mean = grid.values().iter().map(|z| z.norm().powf(q)).sum::<f64>() / grid.values().len() as f64;
        mean.powf(1.0 / q)
    };
    let amalgam: f64 = interval_norms(&s, q).into_iter().map(|v| v.powf(p)).sum();
    Ok(amalgam - zak_norm.powf(p))
}

/// Second moments and the symmetric-case quantity `R²(tails at R = L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalDiagnostics {
    pub r: f64,
    pub time_moment: f64,
    pub freq_moment: f64,
    pub r2_tail_product: f64,
    /// Smallest `ρ²(tails at ρ)` over dyadic `ρ ≥ R` inside both windows.
    pub liminf_proxy: f64,
    /// `r2_tail_product ≤` moments outside `[-R, R]` `≤` full moments.
    pub chain_holds: bool,
    /// `R^{2+ε}` times the time tail, when an `ε` was requested.
    pub eps_weighted_tail: Option<f64>,
}

pub fn classical_diagnostics(spec: &GeneratorSpec, r: f64, epsilon: Option<f64>) -> Result<ClassicalDiagnostics> {
    let res = spec.default_resolution();
    let time = sample_at(spec, res)?;
    let freq = fourier(&time)?;
    classical_from_signals(&time, &freq, r, epsilon)
}

pub fn classical_from_signals(
    time: &SampledSignal,
    freq: &SampledSignal,
    r: f64,
    epsilon: Option<f64>,
) -> Result<ClassicalDiagnostics> {
    if !(r > 0.0) || r >= time.half_width() as f64 || r >= freq.half_width() as f64 {
        return Err(Error::Truncation(format!("R = {r} is not inside both windows")));
    }
    let tt = TailTable::new(time);
    let ft = TailTable::new(freq);
    let tails = |x: f64| -> Result<f64> { Ok(tt.tail(x)?.energy + ft.tail(x)?.energy) };
    let time_moment = weighted_moment(time, 2.0)?;
    let freq_moment = weighted_moment(freq, 2.0)?;
    let r2_tail_product = r * r * tails(r)?;
    let outside = weighted_moment_outside(time, 2.0, r)? + weighted_moment_outside(freq, 2.0, r)?;
    let slack = 1e-12 * (time_moment + freq_moment);
    let chain_holds = r2_tail_product <= outside + slack && outside <= time_moment + freq_moment + slack;
    let limit = time.half_width().min(freq.half_width()) as f64;
    let mut liminf_proxy = r2_tail_product;
    let mut rho = r * 2.0;
    while rho < limit {
        liminf_proxy = liminf_proxy.min(rho * rho * tails(rho)?);
        rho *= 2.0;
    }
    let eps_weighted_tail = match epsilon {
        Some(eps) => Some(r.powf(2.0 + eps) * tt.tail(r)?.energy),
        None => None,
    };
    Ok(ClassicalDiagnostics {
        r,
        time_moment,
        freq_moment,
        r2_tail_product,
        liminf_proxy,
        chain_holds,
        eps_weighted_tail,
    })
}

/// Per-`n` data for the band-limited counterexample at `R_n = 3·2^{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prop41Row {
    pub n: u32,
    pub r_n: f64,
    pub tail_at_rn: f64,
    /// `tail · R_n²`; bounded iff the tail decays like `1/R_n²`.
    pub fitted_c: f64,
    /// `∫_{-2^n}^{2^n} t² |g|²`.
    pub moment_partial: f64,
}

pub const PROP41_CSV_HEADER: &str = "n,R_n,tail_at_Rn,fitted_C,moment_partial";

impl Prop41Row {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            fmt17(self.r_n),
            fmt17(self.tail_at_rn),
            fmt17(self.fitted_c),
            fmt17(self.moment_partial)
        )
    }
}

pub fn prop41_check(kmax: u32, ns: &[u32]) -> Result<Vec<Prop41Row>> {
    let spec = GeneratorSpec::BltCounterexample { kmax };
    let s = sample_at(&spec, spec.default_resolution())?;
    prop41_from_signal(&s, kmax, ns)
}

pub fn prop41_from_signal(s: &SampledSignal, kmax: u32, ns: &[u32]) -> Result<Vec<Prop41Row>> {
    let top = ns.iter().copied().max().ok_or_else(|| Error::invalid("empty n range"))?;
    if ns.iter().any(|&n| n == 0) {
        return Err(Error::invalid("n must be positive"));
    }
    if kmax <= top {
        return Err(Error::invalid(format!("kmax = {kmax} must exceed max n = {top}")));
    }
    if s.half_width() < 1usize << (kmax + 1) {
        return Err(Error::Truncation(format!(
            "window half-width {} below 2^(kmax+1)",
            s.half_width()
        )));
    }
    let table = TailTable::new(s);
    ns.iter()
        .map(|&n| {
            let r_n = 3.0 * 2f64.powi(n as i32 - 1);
            let tail = table.tail(r_n)?.energy;
            Ok(Prop41Row {
                n,
                r_n,
                tail_at_rn: tail,
                fitted_c: tail * r_n * r_n,
                moment_partial: weighted_moment_within(s, 2.0, 2f64.powi(n as i32))?,
            })
        })
        .collect()
}

/// Least-squares slope of `moment_partial` against the harmonic number `H_n`.
pub fn harmonic_growth_slope(rows: &[Prop41Row]) -> f64 {
    let harmonic = |n: u32| (1..=n).map(|k| 1.0 / k as f64).sum::<f64>();
    let xs: Vec<f64> = rows.iter().map(|r| harmonic(r.n)).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.moment_partial).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

/// Measure of the set where smoothing at scale `R = L` moves `Zg` or `Zĝ`
/// by at least `δ`, on the `G × G` grid with `G = min(M, 2T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingDiscrepancy {
    pub scale: f64,
    pub measure: f64,
    /// `measure · R · L`.
    pub normalized: f64,
}

pub fn smoothing_discrepancy(spec: &GeneratorSpec, scale: f64, delta: f64, res: Resolution) -> Result<SmoothingDiscrepancy> {
    let kernel = KernelSpec::raised_cosine(scale)?;
    let time = sample_at(spec, res)?;
    let freq = fourier_fft(&time)?;
    let g = time.rate().min(freq.rate());
    let zg = zak_transform(&time, g, g)?;
    let zgs = zak_transform(&smooth(&time, &kernel)?, g, g)?;
    let zf = zak_transform(&freq, g, g)?;
    let zfs = zak_transform(&smooth(&freq, &kernel)?, g, g)?;
    let hits = (0..g * g)
        .filter(|&i| {
            (zg.values()[i] - zgs.values()[i]).norm() >= delta
                || (zf.values()[i] - zfs.values()[i]).norm() >= delta
        })
        .count();
    let measure = hits as f64 / (g * g) as f64;
    Ok(SmoothingDiscrepancy {
        scale,
        measure,
        normalized: measure * scale * scale,
    })
}
