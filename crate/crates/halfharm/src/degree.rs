//! Brouwer degree of a circle-valued map by three independent formulas:
//! the spectral sum Σk|a_k|²/2π, the Hilbert-transform pairing
//! (2πi)^{-1} ∫ H[(−Δ)^{1/4}ū] (−Δ)^{1/4}u dθ, and the Jacobian integral
//! π^{-1} ∬_{D²} J(ũ) dx dy over the harmonic extension.
//!
//! Disagreement between the formulas is a feature, not a failure mode: a map
//! whose winding concentrates below the grid scale pushes them apart, and the
//! report surfaces that through `max_residual` instead of silently rounding.

use core::fmt;
use num_complex::Complex64;
// Used by the no_std build; the test build links std and shadows it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::poisson::{poisson_extend, radial_derivative, theta_derivative_ring, trapezoid, DEFAULT_RINGS};
use crate::spectral::CircleMap;
use crate::TWO_PI;

/// Methods beyond the (always computed) spectral formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeMethods {
    pub hilbert: bool,
    pub jacobian: bool,
}

impl DegreeMethods {
    pub const fn fourier_only() -> Self {
        DegreeMethods { hilbert: false, jacobian: false }
    }

    pub const fn all() -> Self {
        DegreeMethods { hilbert: true, jacobian: true }
    }
}

impl Default for DegreeMethods {
    fn default() -> Self {
        DegreeMethods::fourier_only()
    }
}

/// Degree by every requested route, the rounded integer, and the largest
/// deviation of any filled route from that integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeReport {
    /// Spectral formula Σ k|a_k|² / 2π.
    pub fourier: f64,
    /// Hilbert-pairing integral (real part).
    pub hilbert: Option<f64>,
    /// Imaginary residue of the Hilbert pairing — a quadrature diagnostic,
    /// tiny for genuine circle-valued maps.
    pub hilbert_imag: Option<f64>,
    /// Jacobian integral of the harmonic extension over the default disk grid.
    pub jacobian: Option<f64>,
    /// Nearest integer to `fourier`.
    pub rounded: i64,
    /// max |route − rounded| over the filled routes.
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DegreeError {
    /// Degree is defined for maps into the circle; the input was not marked
    /// on-circle.
    NotOnCircle,
    /// Some route strays from the rounded integer by ≥ 0.25 — the winding is
    /// not resolved on this grid. The full report is attached for diagnosis.
    Unresolved(DegreeReport),
}

impl fmt::Display for DegreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeError::NotOnCircle => write!(f, "degree of a map not marked on-circle"),
            DegreeError::Unresolved(r) => write!(
                f,
                "degree unresolved at this grid: fourier {:.4}, max residual {:.4}",
                r.fourier, r.max_residual
            ),
        }
    }
}

impl core::error::Error for DegreeError {}

/// Threshold on `max_residual` beyond which the degree is declared
/// unresolved.
pub const RESOLUTION_GUARD: f64 = 0.25;

/// Hilbert-pairing degree: (2πi)^{-1} ∫ H[(−Δ)^{1/4}ū]·(−Δ)^{1/4}u dθ on the
/// grid, returned as (real part, imaginary residue).
pub fn hilbert_pairing_degree(u: &CircleMap) -> (f64, f64) {
    let n = u.n_samples();
    let f = u.conjugate().frac_laplacian_quarter().hilbert_transform();
    let g = u.frac_laplacian_quarter();
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in f.samples().iter().zip(g.samples()) {
        acc += a * b;
    }
    let integral = acc * TWO_PI / n as f64;
    let value = integral / Complex64::new(0.0, TWO_PI);
    (value.re, value.im)
}

/// Jacobian degree: π^{-1} ∬ (∂_r U₁ ∂_θ U₂ − ∂_θ U₁ ∂_r U₂) dr dθ over a
/// disk field (the polar form of the Jacobian integral, area element already
/// absorbed). The innermost ring is dropped from the quadrature.
pub fn jacobian_degree(field: &crate::poisson::DiskField) -> f64 {
    let n_r = field.n_rings();
    let n = field.n_theta();
    let dtheta = TWO_PI / n as f64;
    let radial = radial_derivative(field);
    let mut ring_integrals = alloc::vec::Vec::with_capacity(n_r);
    for i in 0..n_r {
        if i == 0 {
            ring_integrals.push(0.0);
            continue;
        }
        let dt = theta_derivative_ring(field.ring(i));
        let mut acc = 0.0;
        for j in 0..n {
            // Im(conj(∂_r U) ∂_θ U) = ∂_r U₁ ∂_θ U₂ − ∂_θ U₁ ∂_r U₂
            acc += (radial[i * n + j].conj() * dt[j]).im;
        }
        ring_integrals.push(acc * dtheta);
    }
    trapezoid(field.radii(), &ring_integrals) / core::f64::consts::PI
}

/// Degree of an on-circle map by the requested routes. The spectral route is
/// always computed and rounded; an error is returned when any filled route
/// sits further than [`RESOLUTION_GUARD`] from the rounded integer.
pub fn degree(u: &CircleMap, methods: DegreeMethods) -> Result<DegreeReport, DegreeError> {
    if !u.on_circle() {
        return Err(DegreeError::NotOnCircle);
    }
    let fourier = u.fourier_degree();
    let (hilbert, hilbert_imag) = if methods.hilbert {
        let (re, im) = hilbert_pairing_degree(u);
        (Some(re), Some(im))
    } else {
        (None, None)
    };
    let jacobian = if methods.jacobian {
        Some(jacobian_degree(&poisson_extend(u, DEFAULT_RINGS)))
    } else {
        None
    };
    let rounded = fourier.round() as i64;
    let mut max_residual = (fourier - rounded as f64).abs();
    for v in [hilbert, jacobian].iter().flatten() {
        max_residual = max_residual.max((v - rounded as f64).abs());
    }
    let report = DegreeReport { fourier, hilbert, hilbert_imag, jacobian, rounded, max_residual };
    if max_residual >= RESOLUTION_GUARD {
        Err(DegreeError::Unresolved(report))
    } else {
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{blaschke_trace, g_lambda_trace, BlaschkeParams, LambdaDatum};
    use crate::testutil::{random_smooth_circle_map, seeded_rng, unwrap_degree};
    use alloc::vec;

    #[test]
    fn fourier_only_blaschke_three_zeros() {
        let params = BlaschkeParams::new(
            0.0,
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.5, 1.5), Complex64::new(-1.0, 2.0)],
            false,
        )
        .unwrap();
        let u = blaschke_trace(&params, 512).unwrap();
        let report = degree(&u, DegreeMethods::fourier_only()).unwrap();
        assert_eq!(report.rounded, 3);
        assert!((report.fourier - 3.0).abs() < 1e-8);
        assert!(report.hilbert.is_none());
        assert!(report.jacobian.is_none());
    }

    #[test]
    fn all_routes_agree_on_smooth_maps() {
        let mut rng = seeded_rng(41);
        for trial in 0..10 {
            let u = random_smooth_circle_map(&mut rng, 512, 8);
            let report = degree(&u, DegreeMethods::all()).unwrap();
            let oracle = unwrap_degree(&u);
            assert_eq!(report.rounded, oracle, "trial {trial}");
            assert!(report.max_residual < 0.1, "trial {trial}: residual {}", report.max_residual);
            assert!(report.hilbert_imag.unwrap().abs() < 1e-8);
            let jac = report.jacobian.unwrap();
            assert!((jac - report.fourier).abs() < 0.01, "trial {trial}: jacobian {jac}");
        }
    }

    #[test]
    fn hilbert_route_reproduces_spectral_sum() {
        let mut rng = seeded_rng(43);
        let u = random_smooth_circle_map(&mut rng, 256, 10);
        let (h, im) = hilbert_pairing_degree(&u);
        assert!((h - u.fourier_degree()).abs() < 1e-9);
        assert!(im.abs() < 1e-9);
    }

    #[test]
    fn degree_bound_by_energy() {
        let mut rng = seeded_rng(47);
        for _ in 0..25 {
            let u = random_smooth_circle_map(&mut rng, 256, 10);
            let deg = u.fourier_degree().abs();
            let bound = u.spectral_energy() / TWO_PI;
            assert!(deg <= bound + 1e-6, "degree {deg} exceeds energy bound {bound}");
        }
    }

    #[test]
    fn g_lambda_degree_by_all_routes() {
        for &lambda in &[0.5, 1.0, 2.0] {
            let g = g_lambda_trace(&LambdaDatum::new(lambda).unwrap(), 512).unwrap();
            let report = degree(&g, DegreeMethods::all()).unwrap();
            assert_eq!(report.rounded, 1, "λ={lambda}");
            assert!(report.max_residual < 0.05, "λ={lambda}: {}", report.max_residual);
        }
    }

    #[test]
    fn off_circle_map_rejected() {
        let mut rng = seeded_rng(53);
        let u = random_smooth_circle_map(&mut rng, 64, 5).frac_laplacian_quarter();
        assert_eq!(degree(&u, DegreeMethods::fourier_only()).unwrap_err(), DegreeError::NotOnCircle);
    }

    #[test]
    fn concentrated_winding_reported_unresolved() {
        // A unit-degree trace whose winding collapses to the grid scale,
        // offset half a node so no sample pins the fast sweep: the Fourier
        // route reads roughly half a turn and the guard must fire rather
        // than round silently.
        let n = 64;
        let lambda = 0.02;
        let half = core::f64::consts::PI / n as f64;
        let u = CircleMap::from_fn(n, true, |t| {
            let tt = t + half;
            if (tt - core::f64::consts::FRAC_PI_2).abs() < 1e-12 {
                Complex64::new(0.0, 1.0)
            } else {
                let x = tt.cos() / (1.0 - tt.sin());
                crate::conformal::stereo_north_inv(x / lambda)
            }
        })
        .unwrap();
        match degree(&u, DegreeMethods::all()) {
            Err(DegreeError::Unresolved(report)) => {
                assert!(report.max_residual >= RESOLUTION_GUARD);
            }
            Ok(report) => panic!("expected unresolved degree, got {report:?}"),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn jacobian_degree_of_pure_mode() {
        for &k in &[1i64, 2, -3] {
            let u = CircleMap::from_fn(256, true, |t| Complex64::from_polar(1.0, k as f64 * t))
                .unwrap();
            let field = poisson_extend(&u, DEFAULT_RINGS);
            let jac = jacobian_degree(&field);
            assert!((jac - k as f64).abs() < 0.01, "k={k}: jacobian {jac}");
        }
    }

    #[test]
    fn rotation_invariance_of_degree_routes() {
        let mut rng = seeded_rng(59);
        let u = random_smooth_circle_map(&mut rng, 256, 8);
        let r = u.rotate_nodes(37);
        let (a, _) = hilbert_pairing_degree(&u);
        let (b, _) = hilbert_pairing_degree(&r);
        assert!((a - b).abs() < 1e-9);
    }
}

