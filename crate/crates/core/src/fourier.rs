//! Fourier transforms of sampled signals under `ĝ(ξ) = ∫ g(t) e^{-2πiξt} dt`.
//!
//! A time signal on `[-T, T)` at `M` samples per unit maps to frequency
//! samples on `[-M/2, M/2)` with spacing `1/(2T)`. With `t_n = -T + n/M` and
//! `ξ_j = -M/2 + j/(2T)` the kernel factors as
//! `e^{-2πiξ_j t_n} = (-1)^{MT} (-1)^{n+j} e^{-2πijn/N}`, so the integral
//! transform of the piecewise-constant signal is a scaled, sign-twisted DFT.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::signals::{energy, Domain, SampledSignal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    /// Kernel `e^{-2πi·}`.
    Forward,
    /// Kernel `e^{+2πi·}`.
    Inverse,
}

/// Transforms the samples of `s` onto the dual grid, ignoring domain tags.
/// Returns `(samples, half_width, rate)` of the dual grid.
pub(crate) fn dual_transform(s: &SampledSignal, dir: Direction) -> Result<(Vec<Complex64>, usize, usize)> {
    let n = s.len();
    if !n.is_power_of_two() {
        return Err(Error::invalid(format!(
            "FFT length 2TM = {n} is not a power of two"
        )));
    }
    let (w, r) = (s.half_width(), s.rate());
    let mut buf: Vec<Complex64> = s
        .samples()
        .iter()
        .enumerate()
        .map(|(i, z)| if i % 2 == 0 { *z } else { -*z })
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    let fft = match dir {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    };
    fft.process(&mut buf);
    let global = if (w * r) % 2 == 0 { 1.0 } else { -1.0 };
    let scale = s.step() * global;
    for (j, z) in buf.iter_mut().enumerate() {
        *z *= if j % 2 == 0 { scale } else { -scale };
    }
    Ok((buf, r / 2, 2 * w))
}

/// Fourier transform of a time signal. Uses the generator's closed-form
/// transform when the signal came from one; otherwise the FFT route.
pub fn fourier(s: &SampledSignal) -> Result<SampledSignal> {
    if s.domain() != Domain::Time {
        return Err(Error::invalid("fourier expects a time-domain signal"));
    }
    match s.source() {
        Some(spec) if spec.has_closed_form_fourier() => {
            if !s.len().is_power_of_two() {
                return Err(Error::invalid(format!(
                    "FFT length 2TM = {} is not a power of two",
                    s.len()
                )));
            }
            let (w, r) = (s.rate() / 2, 2 * s.half_width());
            let mut samples = Vec::with_capacity(s.len());
            for j in 0..s.len() {
                let xi = (j as f64 - (w * r) as f64) / r as f64;
                samples.push(spec.eval_fourier(xi)?);
            }
            let out = SampledSignal::new(Domain::Frequency, w, r, samples)?;
            let missing = (energy(s) + s.outside_energy() - energy(&out)).max(0.0);
            Ok(out.with_source(None, missing))
        }
        _ => fourier_fft(s),
    }
}

/// Fourier transform through the FFT, regardless of closed forms.
pub fn fourier_fft(s: &SampledSignal) -> Result<SampledSignal> {
    if s.domain() != Domain::Time {
        return Err(Error::invalid("fourier expects a time-domain signal"));
    }
    let (samples, w, r) = dual_transform(s, Direction::Forward)?;
    Ok(SampledSignal::new(Domain::Frequency, w, r, samples)?.with_source(None, s.outside_energy()))
}

/// `g(t) = ∫ ĝ(ξ) e^{2πiξt} dξ` back onto the time grid.
pub fn inverse_fourier(f: &SampledSignal) -> Result<SampledSignal> {
    if f.domain() != Domain::Frequency {
        return Err(Error::invalid("inverse_fourier expects a frequency-domain signal"));
    }
    let (samples, w, r) = dual_transform(f, Direction::Inverse)?;
    Ok(SampledSignal::new(Domain::Time, w, r, samples)?.with_source(None, f.outside_energy()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{sample, tail_energy, GeneratorSpec};
    use std::f64::consts::PI;

    #[test]
    fn chi01_at_zero_frequency() {
        let s = sample(&GeneratorSpec::Chi01, 32, 256).unwrap();
        for f in [fourier(&s).unwrap(), fourier_fft(&s).unwrap()] {
            let mid = f.len() / 2;
            assert_eq!(f.abscissa(mid), 0.0);
            assert!((f.samples()[mid] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn gaussian_is_fixed_point() {
        let s = sample(&GeneratorSpec::Gaussian, 32, 256).unwrap();
        let f = fourier_fft(&s).unwrap();
        let worst = f
            .samples()
            .iter()
            .enumerate()
            .map(|(j, z)| (z - GeneratorSpec::Gaussian.eval(f.abscissa(j)).unwrap()).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn closed_form_and_fft_agree_on_chi01() {
        let s = sample(&GeneratorSpec::Chi01, 32, 256).unwrap();
        let a = fourier(&s).unwrap();
        let b = fourier_fft(&s).unwrap();
        let h = s.step();
        // Left-endpoint samples of chi01 transform to a geometric sum.
        let geometric = |xi: f64| {
            let z = Complex64::from_polar(1.0, -2.0 * PI * xi * h);
            if (z - 1.0).norm() < 1e-15 {
                Complex64::new(1.0, 0.0)
            } else {
                (Complex64::new(1.0, 0.0) - z.powi(256)) / (Complex64::new(1.0, 0.0) - z) * h
            }
        };
        let exact = (0..b.len())
            .map(|j| (b.samples()[j] - geometric(b.abscissa(j))).norm())
            .fold(0.0, f64::max);
        assert!(exact < 1e-12, "{exact}");
        // The sampled model lags the true transform by a phase πξh.
        let worst = (0..a.len())
            .filter(|&j| a.abscissa(j).abs() < 8.0)
            .map(|j| {
                let xi = a.abscissa(j);
                (a.samples()[j] - b.samples()[j]).norm() / (PI * xi.abs() * h).max(1e-300)
            })
            .fold(0.0, f64::max);
        assert!(worst < 1.01, "{worst}");
    }

    #[test]
    fn round_trip() {
        let s = sample(&GeneratorSpec::Gaussian, 16, 64).unwrap();
        let back = inverse_fourier(&fourier_fft(&s).unwrap()).unwrap();
        for (a, b) in s.samples().iter().zip(back.samples()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        let s = sample(&GeneratorSpec::Chi01, 3, 4).unwrap();
        assert!(fourier_fft(&s).is_err());
        assert!(fourier(&s).is_err());
    }

    #[test]
    fn counterexample_is_band_limited() {
        let s = sample(&GeneratorSpec::BltCounterexample { kmax: 10 }, 2048, 8).unwrap();
        let f = fourier_fft(&s).unwrap();
        let outside = tail_energy(&f, 2.5).unwrap().energy;
        assert!(outside < 1e-6 * energy(&f), "{outside}");
    }
}
