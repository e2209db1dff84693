//! Riesz-basis bounds of the Gabor system `{e^{2πint} g(t - m)}`.
//!
//! Two independent estimates: the range of `|Zg|²` over a Zak grid, and the
//! extreme eigenvalues of a finite section of the Gram matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::signals::{sample_at, GeneratorSpec, Resolution, SampledSignal};
use crate::zak::ZakGrid;

pub const DEFAULT_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsMethod {
    ZakRange,
    GramEigen,
}

impl BoundsMethod {
    pub fn name(&self) -> &'static str {
        match self {
            BoundsMethod::ZakRange => "zak_range",
            BoundsMethod::GramEigen => "gram_eigen",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RieszBounds {
    pub lower: f64,
    pub upper: f64,
    pub method: BoundsMethod,
    /// Grid size `(M_x, N_y)` for the Zak range, `(2P+1, 2P+1)` for Gram sections.
    pub resolution: (usize, usize),
    /// Node `(x, y)` where the Zak range attains its minimum.
    pub lower_at: Option<(f64, f64)>,
}

/// `A = min |Zg|²`, `B = max |Zg|²` over the grid nodes.
pub fn bounds_from_zak(grid: &ZakGrid) -> RieszBounds {
    let mut lo = (f64::INFINITY, 0usize);
    let mut hi = 0.0f64;
    for (i, z) in grid.values().iter().enumerate() {
        let v = z.norm_sqr();
        if v < lo.0 {
            lo = (v, i);
        }
        hi = hi.max(v);
    }
    let (m, l) = (lo.1 / grid.n_y(), lo.1 % grid.n_y());
    RieszBounds {
        lower: lo.0,
        upper: hi,
        method: BoundsMethod::ZakRange,
        resolution: (grid.m_x(), grid.n_y()),
        lower_at: Some((m as f64 / grid.m_x() as f64, l as f64 / grid.n_y() as f64)),
    }
}

/// `⟨g(· - p) e^{2πid·}, g⟩`-type overlaps `V(p, d) = ∫ g(u) conj(g(u - p)) e^{2πidu} du`
/// for `|p|, |d| ≤ reach`, indexed `[(p + reach) * (2 reach + 1) + d + reach]`.
fn overlaps(s: &SampledSignal, reach: usize) -> Result<Vec<Complex64>> {
    let rate = s.rate();
    if rate < 2 * reach + 1 {
        return Err(Error::invalid(format!(
            "rate {rate} aliases modulations up to {reach}"
        )));
    }
    let data = s.samples();
    let h = s.step();
    let width = 2 * reach + 1;
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(rate);
    let rows: Vec<Vec<Complex64>> = (0..width)
        .into_par_iter()
        .map(|pi| {
            let p = pi as i64 - reach as i64;
            let shift = p * rate as i64;
            // Fold w_n = s_n conj(s_{n-pM}) by n mod M; e^{2πidt_n} = e^{2πidn/M}.
            let mut bins = vec![Complex64::new(0.0, 0.0); rate];
            for (n, z) in data.iter().enumerate() {
                let other = n as i64 - shift;
                if other >= 0 && (other as usize) < data.len() {
                    bins[n % rate] += z * data[other as usize].conj();
                }
            }
            fft.process(&mut bins);
            (0..width)
                .map(|di| {
                    let d = di as i64 - reach as i64;
                    bins[d.rem_euclid(rate as i64) as usize] * h
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Finite section of the Gram matrix of `{e^{2πint} g(t - m)}` with
/// `|m|, |n| ≤ P`, indexed by `(m + P)(2P + 1) + (n + P)`.
pub fn gram_matrix(s: &SampledSignal, truncation: usize) -> Result<DMatrix<Complex64>> {
    let p = truncation;
    if p >= s.half_width() {
        return Err(Error::Truncation(format!(
            "window half-width {} too small for shifts up to {}",
            s.half_width(),
            2 * p
        )));
    }
    let reach = 2 * p;
    let table = overlaps(s, reach)?;
    let width = 2 * reach + 1;
    let side = 2 * p + 1;
    let dim = side * side;
    let v = |dp: i64, dd: i64| table[(dp + reach as i64) as usize * width + (dd + reach as i64) as usize];
    let mut gram = DMatrix::from_fn(dim, dim, |a, b| {
        let (m, n) = ((a / side) as i64, (a % side) as i64);
        let (m2, n2) = ((b / side) as i64, (b % side) as i64);
        // ⟨f_a, f_b⟩ = V(m' - m, n - n') since e^{2πi(n-n')m} = 1.
        v(m2 - m, n - n2)
    });
    let adjoint = gram.adjoint();
    gram += adjoint;
    gram *= Complex64::new(0.5, 0.0);
    Ok(gram)
}

/// Extreme eigenvalues of the Gram section.
pub fn gram_bounds(spec: &GeneratorSpec, truncation: usize) -> Result<RieszBounds> {
    gram_bounds_at(spec, truncation, spec.default_resolution())
}

pub fn gram_bounds_at(spec: &GeneratorSpec, truncation: usize, res: Resolution) -> Result<RieszBounds> {
    if truncation < 4 {
        return Err(Error::invalid(format!("Gram truncation P must be ≥ 4, got {truncation}")));
    }
    let s = sample_at(spec, res)?;
    let gram = gram_matrix(&s, truncation)?;
    let eig = gram.symmetric_eigenvalues();
    let lower = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let upper = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let side = 2 * truncation + 1;
    Ok(RieszBounds {
        lower,
        upper,
        method: BoundsMethod::GramEigen,
        resolution: (side, side),
        lower_at: None,
    })
}

/// `A ≥ floor`.
pub fn is_riesz_basis(b: &RieszBounds, floor: f64) -> bool {
    floor > 0.0 && b.lower >= floor && b.upper.is_finite()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::sample;
    use crate::zak::{twisted_chi_grid, zak_transform};

    #[test]
    fn chi01_zak_range() {
        let s = sample(&GeneratorSpec::Chi01, 8, 64).unwrap();
        let b = bounds_from_zak(&zak_transform(&s, 64, 64).unwrap());
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
        assert!(is_riesz_basis(&b, 0.5));
    }

    #[test]
    fn twisted_chi_zak_range() {
        let b = bounds_from_zak(&twisted_chi_grid(64, 64).unwrap());
        assert!((b.lower - 1.0).abs() < 1e-10 && (b.upper - 1.0).abs() < 1e-10);
    }

    #[test]
    fn chi01_gram_is_identity() {
        let s = sample(&GeneratorSpec::Chi01, 32, 256).unwrap();
        let g = gram_matrix(&s, 8).unwrap();
        let id = DMatrix::<Complex64>::identity(g.nrows(), g.ncols());
        assert!((g - id).iter().all(|z| z.norm() < 1e-10));
        let b = gram_bounds(&GeneratorSpec::Chi01, 8).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-10 && (b.upper - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_gram_lower_bound_shrinks() {
        let res = Resolution::new(64, 128);
        let a: Vec<f64> = [4, 8, 16]
            .iter()
            .map(|&p| gram_bounds_at(&GeneratorSpec::Gaussian, p, res).unwrap().lower)
            .collect();
        assert!(a[0] > a[1] && a[1] > a[2] && a[2] > 0.0, "{a:?}");
    }

    #[test]
    fn degenerate_bounds_are_not_riesz() {
        let b = RieszBounds {
            lower: 0.0,
            upper: 2.0,
            method: BoundsMethod::ZakRange,
            resolution: (1, 1),
            lower_at: None,
        };
        assert!(!is_riesz_basis(&b, 1e-6));
    }

    #[test]
    fn guards() {
        assert!(gram_bounds(&GeneratorSpec::Chi01, 3).is_err());
        assert!(gram_bounds_at(&GeneratorSpec::Chi01, 8, Resolution::new(8, 64)).is_err());
    }
}
