//! Discrete Zak transform on the lattice `ℤ × ℤ`.
//!
//! `Zg(x, y) = Σ_k g(x - k) e^{2πiky}` is stored on the nodes
//! `(m/M_x, l/N_y)` of the unit square. Nodes sit on sample locations, so the
//! shift sum is evaluated exactly; when `N_y < 2T` the shifts are folded
//! modulo `N_y` before the DFT, which is still exact at the nodes.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::report::fmt17;
use crate::signals::{Domain, SampledSignal};

/// How values off the unit square are recovered from the stored ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    /// `Z(x+1, y) = e^{2πiy} Z(x, y)`, `Z(x, y+1) = Z(x, y)`.
    QuasiPeriodic,
    /// Plain 1-periodic extension in both variables. Only useful as a
    /// negative control: no Zak transform extends this way unless it vanishes.
    Periodic,
}

#[derive(Debug, Clone)]
pub struct ZakGrid {
    m_x: usize,
    n_y: usize,
    values: Vec<Complex64>,
    truncation_residual: f64,
    source_window: Option<(usize, usize)>,
    extension: Extension,
}

impl ZakGrid {
    /// Wraps raw values, row-major in `x` (`values[m * n_y + l]`).
    pub fn from_values(m_x: usize, n_y: usize, values: Vec<Complex64>, extension: Extension) -> Result<Self> {
        if m_x == 0 || n_y == 0 || values.len() != m_x * n_y {
            return Err(Error::invalid(format!(
                "grid {m_x}x{n_y} needs {} values, got {}",
                m_x * n_y,
                values.len()
            )));
        }
        Ok(ZakGrid {
            m_x,
            n_y,
            values,
            truncation_residual: 0.0,
            source_window: None,
            extension,
        })
    }

    pub fn m_x(&self) -> usize {
        self.m_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    /// Mass of `|g|²` outside the sampled window, as reported by the signal.
    pub fn truncation_residual(&self) -> f64 {
        self.truncation_residual
    }

    /// `(T, M)` of the signal this grid was computed from.
    pub fn source_window(&self) -> Option<(usize, usize)> {
        self.source_window
    }

    /// Stored value at node `(m, l)` of the unit square.
    pub fn node(&self, m: usize, l: usize) -> Complex64 {
        self.values[m * self.n_y + l]
    }

    /// Value at the lattice point `(mi/M_x, li/N_y)` for any integers.
    pub fn at(&self, mi: i64, li: i64) -> Complex64 {
        let (mx, ny) = (self.m_x as i64, self.n_y as i64);
        let p = mi.div_euclid(mx);
        let m = mi.rem_euclid(mx) as usize;
        let l = li.rem_euclid(ny) as usize;
        let v = self.node(m, l);
        match self.extension {
            Extension::Periodic => v,
            Extension::QuasiPeriodic => {
                if p == 0 {
                    return v;
                }
                // e^{2πi p y} with y = li/N_y, reduced in integers.
                let turns = (p as i128 * li as i128).rem_euclid(ny as i128) as f64 / ny as f64;
                v * Complex64::from_polar(1.0, 2.0 * PI * turns)
            }
        }
    }

    /// Mean of `|Z|²` over the nodes (the grid quadrature of `‖Zg‖²_{L²(Q)}`).
    pub fn mean_square(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.values.len() as f64
    }

    /// Writes `m,l,re,im` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "m,l,re,im")?;
        for m in 0..self.m_x {
            for l in 0..self.n_y {
                let z = self.node(m, l);
                writeln!(out, "{m},{l},{},{}", fmt17(z.re), fmt17(z.im))?;
            }
        }
        Ok(())
    }
}

fn node_index(coord: f64, size: usize, axis: &str) -> Result<i64> {
    let u = coord * size as f64;
    let r = u.round();
    if !u.is_finite() || (u - r).abs() > 1e-9 {
        return Err(Error::Misaligned(format!(
            "{axis} = {coord} is not on the 1/{size} lattice"
        )));
    }
    Ok(r as i64)
}

/// Folds `(x, y)` into the unit square using the grid's extension rule.
/// No interpolation: the folded point must be a stored node.
pub fn zak_extend(grid: &ZakGrid, x: f64, y: f64) -> Result<Complex64> {
    let mi = node_index(x, grid.m_x, "x")?;
    let li = node_index(y, grid.n_y, "y")?;
    Ok(grid.at(mi, li))
}

/// Zak transform of a sampled signal on an `M_x × N_y` grid.
pub fn zak_transform(s: &SampledSignal, m_x: usize, n_y: usize) -> Result<ZakGrid> {
    if m_x == 0 || n_y == 0 {
        return Err(Error::invalid("grid dimensions must be positive"));
    }
    if s.rate() % m_x != 0 {
        return Err(Error::Misaligned(format!(
            "M_x = {m_x} does not divide the sample rate {}",
            s.rate()
        )));
    }
    let stride = s.rate() / m_x;
    let (w, rate) = (s.half_width(), s.rate());
    let data = s.samples();
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(n_y);
    let rows: Vec<Vec<Complex64>> = (0..m_x)
        .into_par_iter()
        .map(|m| {
            let mut bins = vec![Complex64::new(0.0, 0.0); n_y];
            for j in 0..2 * w {
                // t = m/M_x - k with k = T - j
                let k = w as i64 - j as i64;
                bins[k.rem_euclid(n_y as i64) as usize] += data[m * stride + j * rate];
            }
            fft.process(&mut bins);
            bins
        })
        .collect();
    let values = rows.into_iter().flatten().collect();
    Ok(ZakGrid {
        m_x,
        n_y,
        values,
        truncation_residual: s.outside_energy(),
        source_window: Some((w, rate)),
        extension: Extension::QuasiPeriodic,
    })
}

/// Synthesizes `g` on `[-N_y/2, N_y/2)` at `M_x` samples per unit from
/// `g(x - k) = ∫₀¹ Zg(x, y) e^{-2πiky} dy`, evaluated by a DFT along `y`.
pub fn inverse_zak(grid: &ZakGrid) -> Result<SampledSignal> {
    let (m_x, n_y) = (grid.m_x, grid.n_y);
    if n_y < 2 || n_y % 2 != 0 {
        return Err(Error::invalid("inverse Zak needs an even N_y ≥ 2"));
    }
    let w = n_y / 2;
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n_y);
    let rows: Vec<Vec<Complex64>> = (0..m_x)
        .into_par_iter()
        .map(|m| {
            let mut row = grid.values[m * n_y..(m + 1) * n_y].to_vec();
            fft.process(&mut row);
            let inv = 1.0 / n_y as f64;
            row.iter_mut().for_each(|z| *z *= inv);
            row
        })
        .collect();
    let mut samples = vec![Complex64::new(0.0, 0.0); m_x * n_y];
    for (m, shifts) in rows.iter().enumerate() {
        for j in 0..n_y {
            let k = w as i64 - j as i64;
            samples[m + j * m_x] = shifts[k.rem_euclid(n_y as i64) as usize];
        }
    }
    SampledSignal::new(Domain::Time, w, m_x, samples)
}

/// `exp(2πi sin(2πx) sin(2πy))` on the unit square: unimodular, so its
/// inverse Zak transform generates an orthonormal Gabor basis.
pub fn twisted_chi_grid(m_x: usize, n_y: usize) -> Result<ZakGrid> {
    let mut values = Vec::with_capacity(m_x * n_y);
    for m in 0..m_x {
        let sx = (2.0 * PI * m as f64 / m_x as f64).sin();
        for l in 0..n_y {
            let sy = (2.0 * PI * l as f64 / n_y as f64).sin();
            values.push(Complex64::from_polar(1.0, 2.0 * PI * sx * sy));
        }
    }
    ZakGrid::from_values(m_x, n_y, values, Extension::QuasiPeriodic)
}

/// Max over nodes of `|Zĝ(x,y) - e^{2πixy} Zg(-y,x)|`.
///
/// Both grids must be square and of the same size `G`. The lookup of
/// `Zg(-y, x)` needs `-y` on the `x`-lattice and `x` on the `y`-lattice.
pub fn check_fourier_zak(grid_g: &ZakGrid, grid_ghat: &ZakGrid) -> Result<f64> {
    let g = grid_g.m_x;
    if grid_g.n_y != g || grid_ghat.m_x != g || grid_ghat.n_y != g {
        return Err(Error::Misaligned(format!(
            "need equal square grids, got {}x{} and {}x{}",
            grid_g.m_x, grid_g.n_y, grid_ghat.m_x, grid_ghat.n_y
        )));
    }
    let g2 = (g * g) as i64;
    let worst = (0..g)
        .into_par_iter()
        .map(|m| {
            let mut worst: f64 = 0.0;
            for l in 0..g {
                let turns = ((m * l) as i64).rem_euclid(g2) as f64 / g2 as f64;
                let rhs = Complex64::from_polar(1.0, 2.0 * PI * turns) * grid_g.at(-(l as i64), m as i64);
                worst = worst.max((grid_ghat.node(m, l) - rhs).norm());
            }
            worst
        })
        .collect::<Vec<_>>();
    Ok(worst.into_iter().fold(0.0, f64::max))
}

/// `(Zg ∗_x φ)(x, y) = ∫ Zg(x - τ, y) φ(τ) dτ` with `φ` given by its samples
/// on `[-T, T)`. The `x`-lattice must match the kernel's sample spacing.
pub fn convolve_x(grid: &ZakGrid, kernel: &SampledSignal) -> Result<ZakGrid> {
    if grid.m_x != kernel.rate() {
        return Err(Error::Misaligned(format!(
            "kernel spacing 1/{} differs from the grid spacing 1/{}",
            kernel.rate(),
            grid.m_x
        )));
    }
    let (m_x, n_y) = (grid.m_x, grid.n_y);
    let w = kernel.half_width();
    let h = kernel.step();
    let phi = kernel.samples();
    let offset = (w * m_x) as i64;
    // Integer x-periods reached by m + offset - j.
    let p_min = (-(offset) - phi.len() as i64).div_euclid(m_x as i64) - 1;
    let p_max = (m_x as i64 + offset).div_euclid(m_x as i64) + 1;
    let columns: Vec<Vec<Complex64>> = (0..n_y)
        .into_par_iter()
        .map(|l| {
            let phases: Vec<Complex64> = (p_min..=p_max)
                .map(|p| match grid.extension {
                    Extension::Periodic => Complex64::new(1.0, 0.0),
                    Extension::QuasiPeriodic => {
                        let turns = (p * l as i64).rem_euclid(n_y as i64) as f64 / n_y as f64;
                        Complex64::from_polar(1.0, 2.0 * PI * turns)
                    }
                })
                .collect();
            (0..m_x)
                .map(|m| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, f) in phi.iter().enumerate() {
                        let idx = m as i64 + offset - j as i64;
                        let p = idx.div_euclid(m_x as i64);
                        let r = idx.rem_euclid(m_x as i64) as usize;
                        acc += f * phases[(p - p_min) as usize] * grid.node(r, l);
                    }
                    acc * h
                })
                .collect()
        })
        .collect();
    let mut values = vec![Complex64::new(0.0, 0.0); m_x * n_y];
    for (l, col) in columns.iter().enumerate() {
        for (m, v) in col.iter().enumerate() {
            values[m * n_y + l] = *v;
        }
    }
    let mut out = ZakGrid::from_values(m_x, n_y, values, grid.extension)?;
    out.source_window = grid.source_window;
    Ok(out)
}

/// Circular convolution `(s ∗ φ)(t) = ∫ s(t - τ) φ(τ) dτ` on the window.
pub fn convolve(s: &SampledSignal, kernel: &SampledSignal) -> Result<SampledSignal> {
    use crate::fourier::{dual_transform, Direction};
    if s.resolution() != kernel.resolution() {
        return Err(Error::Misaligned("signal and kernel grids differ".into()));
    }
    let (a, w, r) = dual_transform(s, Direction::Forward)?;
    let (b, _, _) = dual_transform(kernel, Direction::Forward)?;
    let product: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    let spectrum = SampledSignal::new(s.domain(), w, r, product)?;
    let (samples, w2, r2) = dual_transform(&spectrum, Direction::Inverse)?;
    SampledSignal::new(s.domain(), w2, r2, samples)
}

/// Residual of `Z(s ∗ φ) = Zs ∗_x φ` at every node of an `M × N_y` grid
/// with `N_y = min(2T, 64)`.
pub fn zak_convolution_check(s: &SampledSignal, kernel: &SampledSignal) -> Result<f64> {
    let n_y = (2 * s.half_width()).min(64);
    if (2 * s.half_width()) % n_y != 0 {
        return Err(Error::Misaligned("N_y must divide 2T".into()));
    }
    let lhs = zak_transform(&convolve(s, kernel)?, s.rate(), n_y)?;
    let rhs = convolve_x(&zak_transform(s, s.rate(), n_y)?, kernel)?;
    Ok(max_difference(&lhs, &rhs))
}

pub(crate) fn max_difference(a: &ZakGrid, b: &ZakGrid) -> f64 {
    a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::fourier_fft;
    use crate::signals::{energy, sample, GeneratorSpec};

    #[test]
    fn chi01_zak_is_one() {
        let s = sample(&GeneratorSpec::Chi01, 8, 64).unwrap();
        let z = zak_transform(&s, 64, 32).unwrap();
        for v in z.values() {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!((zak_extend(&z, 1.5, 0.25).unwrap() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn gaussian_theta_zero() {
        let s = sample(&GeneratorSpec::Gaussian, 32, 256).unwrap();
        let z = zak_transform(&s, 256, 256).unwrap();
        let oracle: f64 = (-40..=40)
            .map(|k: i32| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * 2f64.powf(0.25) * (-PI * (0.5 - k as f64).powi(2)).exp()
            })
            .sum();
        let v = zak_extend(&z, 0.5, 0.5).unwrap();
        assert!(oracle.abs() < 1e-12);
        assert!(v.norm() < 1e-2);
        assert!((v.norm() - oracle.abs()).abs() < 1e-12);
    }

    #[test]
    fn unitarity_on_grid() {
        for spec in [GeneratorSpec::Chi01, GeneratorSpec::Gaussian] {
            let s = sample(&spec, 32, 256).unwrap();
            let z = zak_transform(&s, 256, 256).unwrap();
            let e = energy(&s);
            assert!((z.mean_square() - e).abs() / e < 1e-6);
        }
    }

    #[test]
    fn misaligned_grid_rejected() {
        let s = sample(&GeneratorSpec::Chi01, 4, 64).unwrap();
        assert!(matches!(zak_transform(&s, 48, 8), Err(Error::Misaligned(_))));
        let z = zak_transform(&s, 64, 8).unwrap();
        assert!(zak_extend(&z, 1.0 / 128.0, 0.0).is_err());
    }

    #[test]
    fn folding_matches_direct_sum() {
        let s = sample(&GeneratorSpec::Gaussian, 16, 32).unwrap();
        let z = zak_transform(&s, 8, 5).unwrap();
        for m in 0..8 {
            for l in 0..5 {
                let x = m as f64 / 8.0;
                let y = l as f64 / 5.0;
                let mut direct = Complex64::new(0.0, 0.0);
                for k in -16i64..=16 {
                    let t = x - k as f64;
                    if (-16.0..16.0).contains(&t) {
                        let v = GeneratorSpec::Gaussian.eval(t).unwrap();
                        direct += v * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * y);
                    }
                }
                assert!((z.node(m, l) - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trips() {
        let s = sample(&GeneratorSpec::Chi01, 8, 32).unwrap();
        let back = inverse_zak(&zak_transform(&s, 32, 16).unwrap()).unwrap();
        for (a, b) in s.samples().iter().zip(back.samples()) {
            assert!((a - b).norm() < 1e-10);
        }
        let g = sample(&GeneratorSpec::Gaussian, 32, 256).unwrap();
        let back = inverse_zak(&zak_transform(&g, 256, 64).unwrap()).unwrap();
        for (a, b) in g.samples().iter().zip(back.samples()) {
            assert!((a - b).norm() < 1e-8);
        }
    }

    #[test]
    fn twisted_chi_has_unit_energy() {
        let s = inverse_zak(&twisted_chi_grid(128, 64).unwrap()).unwrap();
        assert!((energy(&s) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn fourier_zak_identity_is_exact_on_the_discrete_pair() {
        let s = sample(&GeneratorSpec::Chi01, 32, 64).unwrap();
        let f = fourier_fft(&s).unwrap();
        let zg = zak_transform(&s, 64, 64).unwrap();
        let zf = zak_transform(&f, 64, 64).unwrap();
        let r = check_fourier_zak(&zg, &zf).unwrap();
        assert!(r < 1e-3, "{r}");
        // At the origin the phase factor is 1.
        assert!((zf.node(0, 0) - zg.node(0, 0)).norm() < 1e-9);
        let other = zak_transform(&f, 64, 32).unwrap();
        assert!(check_fourier_zak(&zg, &other).is_err());
    }

    #[test]
    fn periodic_extension_ignores_phase() {
        let z = ZakGrid::from_values(4, 4, vec![Complex64::new(1.0, 0.0); 16], Extension::Periodic).unwrap();
        assert_eq!(zak_extend(&z, 1.25, 0.5).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn csv_layout() {
        let z = ZakGrid::from_values(1, 2, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, -0.5)], Extension::QuasiPeriodic).unwrap();
        let mut out = Vec::new();
        z.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "m,l,re,im\n0,0,1.0000000000000000e0,0.0000000000000000e0\n0,1,0.0000000000000000e0,-5.0000000000000000e-1\n"
        );
    }
}
