//! Zak-transform machinery for lattice Gabor systems and numerical checks of
//! quantitative Balian-Low type inequalities.
//!
//! Layering, bottom up:
//!
//! - [`signals`]: generator catalog, sampling and real-line quadrature;
//! - [`fourier`]: FFT-based and closed-form Fourier transforms;
//! - [`zak`]: discrete Zak transform, quasi-periodic extension, identities;
//! - [`riesz`]: Riesz-bound estimates from the Zak range and the Gram matrix;
//! - [`argument`]: argument-jump search and jump-set measures;
//! - [`blt`]: smoothing kernels, tail sweeps and the related diagnostics;
//! - [`cli`]: the command-line front end.

pub mod argument;
pub mod blt;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod report;
pub mod riesz;
pub mod signals;
pub mod zak;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use signals::{GeneratorSpec, Resolution, SampledSignal};
pub use zak::ZakGrid;
