//! Band-limited circle-valued maps on the uniform grid and the fractional
//! operators that act on them diagonally in Fourier space.
//!
//! A map is stored as its `n` samples at θ_j = 2πj/n together with the
//! coefficients `a_k` of the normalization
//!
//! ```text
//! u(e^{iθ}) = (2π)^{-1/2} Σ_{|k| ≤ n/2} a_k e^{ikθ}
//! ```
//!
//! kept in FFT bin order (bin j holds k = j for j < n/2 and k = j − n
//! otherwise). With this normalization the constant map 1 has a_0 = √(2π),
//! Parseval reads Σ|a_k|² = (2π/n)Σ|u_j|², and the fractional Dirichlet
//! energy is the plain weighted sum Σ|k||a_k|².

use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
// Used by the no_std build; the test build links std and shadows it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::fft::{fft, ifft_unnormalized};
use crate::TWO_PI;

/// Square root of 2π, the coefficient normalization constant.
pub const SQRT_TWO_PI: f64 = 2.506628274631000502415765284811045253;

/// Smallest admissible grid size. Grids must be powers of two for the FFT.
pub const MIN_GRID: usize = 8;

/// Tolerance for declaring a sample to be on the unit circle.
pub const CIRCLE_TOL: f64 = 1e-9;

/// Modulus floor below which renormalization refuses to project to the circle.
pub const MODULUS_FLOOR: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// Grid length is not a power of two ≥ 8.
    BadLength { n: usize },
    /// A sample is NaN or infinite.
    NonFinite { index: usize },
    /// A sample strays from the unit circle by more than [`CIRCLE_TOL`].
    OffCircle { index: usize, modulus: f64 },
    /// Renormalization hit a sample with modulus below the admissible floor.
    ModulusCollapse { index: usize, modulus: f64 },
    /// The double-integral quadrature produced a non-finite value.
    QuadratureOverflow,
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::BadLength { n } => {
                write!(f, "grid length {n} is not a power of two >= {MIN_GRID}")
            }
            SpectralError::NonFinite { index } => write!(f, "sample {index} is not finite"),
            SpectralError::OffCircle { index, modulus } => {
                write!(f, "sample {index} has modulus {modulus:.3e}, not on the unit circle")
            }
            SpectralError::ModulusCollapse { index, modulus } => {
                write!(f, "sample {index} has modulus {modulus:.3e}, below the renormalization floor")
            }
            SpectralError::QuadratureOverflow => write!(f, "double-integral quadrature overflowed"),
        }
    }
}

impl core::error::Error for SpectralError {}

/// Which entries of an [`EnergyReport`] to fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnergyMethods {
    /// Weighted coefficient sum Σ|k||a_k|².
    pub spectral: bool,
    /// Gagliardo double integral over the sample grid, diagonal excluded.
    pub double_integral: bool,
    /// Dirichlet integral of the harmonic extension on the default disk grid.
    pub extension: bool,
}

impl EnergyMethods {
    pub const fn spectral_only() -> Self {
        EnergyMethods { spectral: true, double_integral: false, extension: false }
    }

    pub const fn all() -> Self {
        EnergyMethods { spectral: true, double_integral: true, extension: true }
    }
}

impl Default for EnergyMethods {
    fn default() -> Self {
        EnergyMethods::spectral_only()
    }
}

/// Energy of a map computed by up to three independent routes; entries are
/// filled only when requested. On band-limited maps resolved well below
/// Nyquist the filled entries agree to within a couple of percent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub spectral: Option<f64>,
    pub double_integral: Option<f64>,
    pub extension: Option<f64>,
}

impl EnergyReport {
    /// Largest relative spread among the filled entries (0 when fewer than
    /// two are filled). Convenience for agreement checks.
    pub fn max_relative_spread(&self) -> f64 {
        let filled: Vec<f64> =
            [self.spectral, self.double_integral, self.extension].iter().flatten().copied().collect();
        if filled.len() < 2 {
            return 0.0;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in &filled {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if hi <= 0.0 {
            0.0
        } else {
            (hi - lo) / hi
        }
    }
}

/// A circle-valued (or, transiently, plane-valued) map of the circle, sampled
/// on the uniform grid and identified with its band-limited interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMap {
    samples: Vec<Complex64>,
    spectrum: Vec<Complex64>,
    on_circle: bool,
}

/// Grid angle θ_j = 2πj/n.
pub fn theta(j: usize, n: usize) -> f64 {
    TWO_PI * j as f64 / n as f64
}

/// Signed frequency held by FFT bin `j` of an `n`-point transform
/// (the Nyquist bin n/2 counts as −n/2).
pub fn signed_freq(j: usize, n: usize) -> i64 {
    debug_assert!(j < n);
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

fn check_len(n: usize) -> Result<(), SpectralError> {
    if n >= MIN_GRID && n.is_power_of_two() {
        Ok(())
    } else {
        Err(SpectralError::BadLength { n })
    }
}

pub(crate) fn spectrum_from_samples(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    fft(&mut buf);
    let scale = SQRT_TWO_PI / n as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

pub(crate) fn samples_from_spectrum(spectrum: &[Complex64]) -> Vec<Complex64> {
    let mut buf = spectrum.to_vec();
    ifft_unnormalized(&mut buf);
    for v in &mut buf {
        *v /= SQRT_TWO_PI;
    }
    buf
}

impl CircleMap {
    /// Builds a map from grid samples. With `assert_circle` every sample must
    /// lie within [`CIRCLE_TOL`] of the unit circle and is renormalized to
    /// modulus exactly 1; without it the samples are taken as given (useful
    /// for plane-valued intermediates like transforms of circle maps).
    pub fn from_samples(values: Vec<Complex64>, assert_circle: bool) -> Result<Self, SpectralError> {
        check_len(values.len())?;
        let mut samples = values;
        for (j, v) in samples.iter_mut().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(SpectralError::NonFinite { index: j });
            }
            if assert_circle {
                let m = v.norm();
                if (m - 1.0).abs() > CIRCLE_TOL {
                    return Err(SpectralError::OffCircle { index: j, modulus: m });
                }
                *v /= m;
            }
        }
        let spectrum = spectrum_from_samples(&samples);
        Ok(CircleMap { samples, spectrum, on_circle: assert_circle })
    }

    /// Wraps samples the caller guarantees to lie on the circle, without
    /// renormalizing them, so existing sample values survive bit-identical
    /// (renormalization is not idempotent at the last bit).
    pub(crate) fn from_trusted_samples(values: Vec<Complex64>) -> Self {
        debug_assert!(values.len().is_power_of_two() && values.len() >= MIN_GRID);
        debug_assert!(values.iter().all(|v| (v.norm() - 1.0).abs() <= CIRCLE_TOL));
        let spectrum = spectrum_from_samples(&values);
        CircleMap { samples: values, spectrum, on_circle: true }
    }

    /// Builds a map by sampling a closure at the grid angles.
    pub fn from_fn(
        n: usize,
        assert_circle: bool,
        mut f: impl FnMut(f64) -> Complex64,
    ) -> Result<Self, SpectralError> {
        check_len(n)?;
        let values: Vec<Complex64> = (0..n).map(|j| f(theta(j, n))).collect();
        CircleMap::from_samples(values, assert_circle)
    }

    /// Builds a map from coefficients in FFT bin order (bin j ↔ frequency
    /// [`signed_freq`]`(j, n)`). The result is not marked on-circle.
    pub fn from_spectrum(spectrum: Vec<Complex64>) -> Result<Self, SpectralError> {
        check_len(spectrum.len())?;
        let samples = samples_from_spectrum(&spectrum);
        Ok(CircleMap { samples, spectrum, on_circle: false })
    }

    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Coefficients in FFT bin order.
    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    /// Whether every sample is exactly unimodular (set at construction or by
    /// renormalization; cleared by linear operators).
    pub fn on_circle(&self) -> bool {
        self.on_circle
    }

    /// Coefficient a_k for a signed frequency, 0 outside the band. Both
    /// k = n/2 and k = −n/2 address the single Nyquist bin.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let n = self.samples.len() as i64;
        if k < -n / 2 || k > n / 2 {
            Complex64::new(0.0, 0.0)
        } else {
            self.spectrum[k.rem_euclid(n) as usize]
        }
    }

    /// Evaluates the band-limited interpolant at an arbitrary angle, O(n).
    pub fn eval(&self, theta: f64) -> Complex64 {
        let n = self.samples.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &a) in self.spectrum.iter().enumerate() {
            let k = signed_freq(j, n) as f64;
            acc += a * Complex64::from_polar(1.0, k * theta);
        }
        acc / SQRT_TWO_PI
    }

    /// Evaluates the θ-derivative of the band-limited interpolant.
    pub fn eval_derivative(&self, theta: f64) -> Complex64 {
        let n = self.samples.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &a) in self.spectrum.iter().enumerate() {
            let k = signed_freq(j, n) as f64;
            acc += a * Complex64::new(0.0, k) * Complex64::from_polar(1.0, k * theta);
        }
        acc / SQRT_TWO_PI
    }

    /// Evaluates the harmonic extension Σ a_k r^{|k|} e^{ikφ} / √(2π) at a
    /// point of the closed unit disk.
    pub fn eval_extension(&self, w: Complex64) -> Complex64 {
        let (r, phi) = w.to_polar();
        debug_assert!(r <= 1.0 + 1e-12, "extension evaluated outside the disk: |w| = {r}");
        let n = self.samples.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &a) in self.spectrum.iter().enumerate() {
            let k = signed_freq(j, n);
            let rad = r.powi(k.unsigned_abs() as i32);
            acc += a * rad * Complex64::from_polar(1.0, k as f64 * phi);
        }
        acc / SQRT_TWO_PI
    }

    /// Cyclic rotation of the grid by `shift` nodes: result(θ) = self(θ + shift·2π/n).
    pub fn rotate_nodes(&self, shift: usize) -> Self {
        let n = self.samples.len();
        let values: Vec<Complex64> = (0..n).map(|j| self.samples[(j + shift) % n]).collect();
        let spectrum = spectrum_from_samples(&values);
        CircleMap { samples: values, spectrum, on_circle: self.on_circle }
    }

    /// Applies a Fourier multiplier m(k); the result is generally off-circle.
    pub fn apply_multiplier(&self, m: impl Fn(i64) -> Complex64) -> Self {
        let n = self.samples.len();
        let spectrum: Vec<Complex64> =
            self.spectrum.iter().enumerate().map(|(j, &a)| a * m(signed_freq(j, n))).collect();
        let samples = samples_from_spectrum(&spectrum);
        CircleMap { samples, spectrum, on_circle: false }
    }

    /// Quarter Laplacian (−Δ)^{1/4}: multiplier √|k|. The energy of `u` is the
    /// squared L² norm of this transform.
    pub fn frac_laplacian_quarter(&self) -> Self {
        self.apply_multiplier(|k| Complex64::new((k.unsigned_abs() as f64).sqrt(), 0.0))
    }

    /// Half Laplacian (−Δ)^{1/2}: multiplier |k|. Its tangential part is the
    /// first-variation density of the energy.
    pub fn frac_laplacian_half(&self) -> Self {
        self.apply_multiplier(|k| Complex64::new(k.unsigned_abs() as f64, 0.0))
    }

    /// Hilbert transform: multiplier −i·sign(k), zero on the mean.
    pub fn hilbert_transform(&self) -> Self {
        self.apply_multiplier(|k| Complex64::new(0.0, -(k.signum() as f64)))
    }

    /// Complex conjugate map.
    pub fn conjugate(&self) -> Self {
        let values: Vec<Complex64> = self.samples.iter().map(|v| v.conj()).collect();
        let spectrum = spectrum_from_samples(&values);
        CircleMap { samples: values, spectrum, on_circle: self.on_circle }
    }

    /// Projects every sample back to the unit circle, refusing when a modulus
    /// drops below `floor`.
    pub fn renormalized(&self, floor: f64) -> Result<Self, SpectralError> {
        let mut values = self.samples.clone();
        for (j, v) in values.iter_mut().enumerate() {
            let m = v.norm();
            if !(m >= floor) {
                return Err(SpectralError::ModulusCollapse { index: j, modulus: m });
            }
            *v /= m;
        }
        let spectrum = spectrum_from_samples(&values);
        Ok(CircleMap { samples: values, spectrum, on_circle: true })
    }

    /// Fractional Dirichlet energy Σ|k||a_k|² — the squared H^{1/2} seminorm,
    /// equal to the Dirichlet integral of the harmonic extension.
    pub fn spectral_energy(&self) -> f64 {
        let n = self.samples.len();
        self.spectrum
            .iter()
            .enumerate()
            .map(|(j, a)| signed_freq(j, n).unsigned_abs() as f64 * a.norm_sqr())
            .sum()
    }

    /// Signed spectral degree Σ k|a_k|²/(2π); an integer for genuinely
    /// circle-valued, resolved maps.
    pub fn fourier_degree(&self) -> f64 {
        let n = self.samples.len();
        let sum: f64 = self
            .spectrum
            .iter()
            .enumerate()
            .map(|(j, a)| signed_freq(j, n) as f64 * a.norm_sqr())
            .sum();
        sum / TWO_PI
    }

    /// Gagliardo double integral (1/2π)∬|u(θ)−u(t)|²/|e^{iθ}−e^{it}|² dθ dt on
    /// the sample grid, diagonal excluded.
    pub fn double_integral_energy(&self) -> Result<f64, SpectralError> {
        let n = self.samples.len();
        let h = TWO_PI / n as f64;
        let mut acc = 0.0;
        // |e^{iθ_j} − e^{iθ_m}|² = 4 sin²((j−m)π/n) depends only on j−m.
        let inv_chord: Vec<f64> = (0..n)
            .map(|d| {
                if d == 0 {
                    0.0
                } else {
                    let s = (core::f64::consts::PI * d as f64 / n as f64).sin();
                    1.0 / (4.0 * s * s)
                }
            })
            .collect();
        for j in 0..n {
            for m in 0..n {
                if m == j {
                    continue;
                }
                let diff = self.samples[j] - self.samples[m];
                acc += diff.norm_sqr() * inv_chord[(j + n - m) % n];
            }
        }
        let value = acc * h * h / TWO_PI;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(SpectralError::QuadratureOverflow)
        }
    }

    /// Energy by the requested routes. The extension entry extends to the
    /// default disk grid of [`crate::poisson::poisson_extend`].
    pub fn energy(&self, methods: EnergyMethods) -> Result<EnergyReport, SpectralError> {
        let spectral = methods.spectral.then(|| self.spectral_energy());
        let double_integral =
            if methods.double_integral { Some(self.double_integral_energy()?) } else { None };
        let extension = methods.extension.then(|| {
            let field = crate::poisson::poisson_extend(self, crate::poisson::DEFAULT_RINGS);
            crate::poisson::dirichlet_energy(&field)
        });
        Ok(EnergyReport { spectral, double_integral, extension })
    }

    /// Arc average: each value replaced by its mean over [θ−eps, θ+eps],
    /// computed exactly on the band-limited interpolant via the multiplier
    /// sin(k·eps)/(k·eps). The result is off-circle (moduli dip below 1).
    pub fn arc_average(&self, eps: f64) -> Self {
        assert!(eps > 0.0 && eps.is_finite(), "arc half-width must be positive");
        self.apply_multiplier(|k| {
            if k == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                let x = k as f64 * eps;
                Complex64::new(x.sin() / x, 0.0)
            }
        })
    }

    /// Arc average followed by renormalization to the circle — the smoothing
    /// step of the density/approximation argument. Fails with
    /// [`SpectralError::ModulusCollapse`] when an averaged modulus drops
    /// below [`MODULUS_FLOOR`] (antipodal cancellation in the window).
    pub fn smooth_average(&self, eps: f64) -> Result<Self, SpectralError> {
        self.arc_average(eps).renormalized(MODULUS_FLOOR)
    }
}
