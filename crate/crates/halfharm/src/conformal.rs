//! Stereographic coordinates, the disk ↔ half-plane Möbius pair, and the two
//! closed-form trace families: scaled stereographic injections g_λ and
//! half-plane Blaschke products.
//!
//! Conventions: the circle sits in the plane, Π₊ projects from the north pole
//! i onto the real axis, Φ(z) = (z−i)/(1−iz) maps the closed upper half-plane
//! onto the closed disk with Φ|_ℝ = Π₊⁻¹, and Ψ = Φ⁻¹. On the unit circle Ψ
//! agrees with Π₊.

use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
// Used by the no_std build; the test build links std and shadows it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::spectral::{theta, CircleMap, SpectralError};

#[derive(Debug, Clone, PartialEq)]
pub enum ConformalError {
    /// Stereographic projection evaluated at (or too near) its pole.
    PoleSingularity,
    /// Scale parameter must be positive and finite.
    InvalidLambda { lambda: f64 },
    /// Blaschke poles must lie strictly in the upper half-plane.
    InvalidPole { index: usize },
    /// Grid/sample construction failed.
    Spectral(SpectralError),
}

impl fmt::Display for ConformalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConformalError::PoleSingularity => write!(f, "stereographic projection at its pole"),
            ConformalError::InvalidLambda { lambda } => {
                write!(f, "scale parameter must be positive and finite, got {lambda}")
            }
            ConformalError::InvalidPole { index } => {
                write!(f, "Blaschke pole {index} is not strictly in the upper half-plane")
            }
            ConformalError::Spectral(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConformalError {}

impl From<SpectralError> for ConformalError {
    fn from(e: SpectralError) -> Self {
        ConformalError::Spectral(e)
    }
}

/// How close to the projection pole a point may come before erroring.
pub const POLE_TOL: f64 = 1e-12;

/// Stereographic projection from the north pole i: (x, y) ↦ x/(1−y).
pub fn stereo_north(p: Complex64) -> Result<f64, ConformalError> {
    if (p - Complex64::new(0.0, 1.0)).norm() < POLE_TOL {
        return Err(ConformalError::PoleSingularity);
    }
    Ok(p.re / (1.0 - p.im))
}

/// Inverse of [`stereo_north`]: x ↦ (2x, x²−1)/(1+x²). Infinite input maps to
/// the pole i itself.
pub fn stereo_north_inv(x: f64) -> Complex64 {
    if x.is_infinite() {
        return Complex64::new(0.0, 1.0);
    }
    let d = 1.0 + x * x;
    Complex64::new(2.0 * x / d, (x * x - 1.0) / d)
}

/// Stereographic projection from the south pole −i: (x, y) ↦ x/(1+y).
pub fn stereo_south(p: Complex64) -> Result<f64, ConformalError> {
    if (p + Complex64::new(0.0, 1.0)).norm() < POLE_TOL {
        return Err(ConformalError::PoleSingularity);
    }
    Ok(p.re / (1.0 + p.im))
}

/// Inverse of [`stereo_south`]: x ↦ (2x, 1−x²)/(1+x²).
pub fn stereo_south_inv(x: f64) -> Complex64 {
    if x.is_infinite() {
        return Complex64::new(0.0, -1.0);
    }
    let d = 1.0 + x * x;
    Complex64::new(2.0 * x / d, (1.0 - x * x) / d)
}

/// Möbius map Φ(z) = (z−i)/(1−iz) from the closed upper half-plane onto the
/// closed unit disk; on the real axis it coincides with [`stereo_north_inv`].
/// Its only pole is at z = −i, outside the domain.
pub fn phi_map(z: Complex64) -> Complex64 {
    (z - Complex64::new(0.0, 1.0)) / (Complex64::new(1.0, 0.0) - Complex64::new(0.0, 1.0) * z)
}

/// Inverse Möbius map Ψ(z) = −i(z+i)/(z−i) from the closed disk onto the
/// closed upper half-plane; pole at the north pole i. Near the south pole,
/// Ψ(z) = (z+i)/2 + O((z+i)²).
pub fn psi_map(z: Complex64) -> Complex64 {
    Complex64::new(0.0, -1.0) * (z + Complex64::new(0.0, 1.0)) / (z - Complex64::new(0.0, 1.0))
}

/// Anti-holomorphic bubble Φ̄(z) = (z̄+i)/(1+iz̄); on the real axis it is
/// [`stereo_south_inv`], the clockwise-oriented stereographic trace.
pub fn phi_bar_map(z: Complex64) -> Complex64 {
    let zc = z.conj();
    (zc + Complex64::new(0.0, 1.0)) / (Complex64::new(1.0, 0.0) + Complex64::new(0.0, 1.0) * zc)
}

/// Scale datum for the g_λ boundary-value family. The boundary condition
/// lives on the closed upper arc (the image of ℝ∖(−1,1) under Π₊⁻¹); the
/// free region is the open lower arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaDatum {
    lambda: f64,
}

impl LambdaDatum {
    pub fn new(lambda: f64) -> Result<Self, ConformalError> {
        if lambda.is_finite() && lambda > 0.0 {
            Ok(LambdaDatum { lambda })
        } else {
            Err(ConformalError::InvalidLambda { lambda })
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Node range (start, len) of the closed upper arc θ ∈ [0, π] at grid
    /// size n — the nodes carrying the boundary condition.
    pub fn fixed_arc(n: usize) -> (usize, usize) {
        (0, n / 2 + 1)
    }
}

/// Trace of the scaled stereographic map g_λ(x) = Π₊⁻¹(x/λ) on the grid:
/// θ ↦ g_λ(Π₊(e^{iθ})), with the north-pole node filled in by continuity
/// (g_λ fixes the pole). At λ = 1 this is exactly the identity trace e^{iθ};
/// for every λ the trace winds once and carries energy 2π.
pub fn g_lambda_trace(datum: &LambdaDatum, n: usize) -> Result<CircleMap, ConformalError> {
    let lambda = datum.lambda;
    let values: Vec<Complex64> = (0..n)
        .map(|j| {
            if 4 * j == n {
                // θ = π/2: the north pole, fixed point of every g_λ.
                Complex64::new(0.0, 1.0)
            } else {
                let t = theta(j, n);
                let x = t.cos() / (1.0 - t.sin());
                stereo_north_inv(x / lambda)
            }
        })
        .collect();
    Ok(CircleMap::from_samples(values, true)?)
}

/// Parameters of a half-plane Blaschke product
/// e^{iθ₀} Π_j (z−β_j)/(z−β̄_j), Im β_j > 0, optionally conjugated.
/// The trace has degree +(number of poles), or minus that when conjugated,
/// and is an energy minimizer in its degree class.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeParams {
    theta0: f64,
    poles: Vec<Complex64>,
    conjugated: bool,
}

impl BlaschkeParams {
    pub fn new(theta0: f64, poles: Vec<Complex64>, conjugated: bool) -> Result<Self, ConformalError> {
        for (index, b) in poles.iter().enumerate() {
            if !(b.im > 0.0) || !b.re.is_finite() || !b.im.is_finite() {
                return Err(ConformalError::InvalidPole { index });
            }
        }
        Ok(BlaschkeParams { theta0, poles, conjugated })
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn conjugated(&self) -> bool {
        self.conjugated
    }

    /// Signed degree of the trace.
    pub fn degree(&self) -> i64 {
        let k = self.poles.len() as i64;
        if self.conjugated {
            -k
        } else {
            k
        }
    }

    /// Evaluates the product at a real boundary coordinate.
    pub fn eval_real(&self, x: f64) -> Complex64 {
        let mut w = Complex64::from_polar(1.0, self.theta0);
        for b in &self.poles {
            w *= (Complex64::new(x, 0.0) - b) / (Complex64::new(x, 0.0) - b.conj());
        }
        if self.conjugated {
            w.conj()
        } else {
            w
        }
    }
}

/// Trace of a half-plane Blaschke product on the grid: θ ↦ h(Π₊(e^{iθ})),
/// north-pole node by continuity (the product tends to e^{iθ₀} at ∞).
pub fn blaschke_trace(params: &BlaschkeParams, n: usize) -> Result<CircleMap, ConformalError> {
    let at_infinity = {
        let w = Complex64::from_polar(1.0, params.theta0);
        if params.conjugated {
            w.conj()
        } else {
            w
        }
    };
    let values: Vec<Complex64> = (0..n)
        .map(|j| {
            if 4 * j == n {
                at_infinity
            } else {
                let t = theta(j, n);
                let x = t.cos() / (1.0 - t.sin());
                params.eval_real(x)
            }
        })
        .collect();
    Ok(CircleMap::from_samples(values, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{seeded_rng, unwrap_degree};
    use crate::TWO_PI;
    use alloc::vec;
    use rand::Rng;

    #[test]
    fn stereo_north_worked_example() {
        let x = stereo_north(Complex64::new(0.6, 0.8)).unwrap();
        assert!((x - 3.0).abs() < 1e-12);
    }

    #[test]
    fn stereo_north_round_trip() {
        for &x in &[-5.0, -1.0, -0.3, 0.0, 0.7, 2.0, 40.0] {
            let p = stereo_north_inv(x);
            assert!((p.norm() - 1.0).abs() < 1e-12);
            assert!((stereo_north(p).unwrap() - x).abs() < 1e-9 * x.abs().max(1.0));
        }
    }

    #[test]
    fn stereo_north_pole_rejected() {
        assert_eq!(stereo_north(Complex64::new(0.0, 1.0)), Err(ConformalError::PoleSingularity));
    }

    #[test]
    fn stereo_south_round_trip() {
        for &x in &[-3.0, 0.0, 0.25, 8.0] {
            let p = stereo_south_inv(x);
            assert!((p.norm() - 1.0).abs() < 1e-12);
            assert!((stereo_south(p).unwrap() - x).abs() < 1e-9 * x.abs().max(1.0));
        }
    }

    #[test]
    fn phi_matches_north_inverse_on_reals() {
        for &x in &[-10.0, -2.0, 0.0, 0.5, 3.0] {
            let a = phi_map(Complex64::new(x, 0.0));
            let b = stereo_north_inv(x);
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn psi_inverts_phi_on_upper_half_plane() {
        let mut rng = seeded_rng(31);
        for _ in 0..50 {
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.01..3.0));
            let back = psi_map(phi_map(z));
            assert!((back - z).norm() < 1e-10 * z.norm().max(1.0));
        }
    }

    #[test]
    fn psi_is_real_on_circle_and_matches_stereo() {
        for j in 0..64usize {
            if j == 16 {
                continue; // north pole
            }
            let t = theta(j, 64);
            let z = Complex64::from_polar(1.0, t);
            let w = psi_map(z);
            assert!(w.im.abs() < 1e-12, "Ψ not real on circle at θ={t}");
            let x = t.cos() / (1.0 - t.sin());
            assert!((w.re - x).abs() < 1e-9 * x.abs().max(1.0));
        }
    }

    #[test]
    fn psi_linearization_at_south_pole() {
        for &h in &[1e-3, 1e-4] {
            for &dir in &[Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.7)] {
                let w = dir * h;
                let z = Complex64::new(0.0, -1.0) + w;
                let lin = w / 2.0;
                assert!((psi_map(z) - lin).norm() < 2.0 * h * h, "h={h}");
            }
        }
    }

    #[test]
    fn phi_bar_matches_south_inverse_on_reals() {
        for &x in &[-4.0, -0.5, 0.0, 1.5, 9.0] {
            assert!((phi_bar_map(Complex64::new(x, 0.0)) - stereo_south_inv(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn phi_bar_asymptotics_on_small_circles() {
        // Φ̄(z/λ) = −i + 2λ/z̄ + O(ε²) on |z| = ε with λ = ε².
        let eps = 1e-2;
        let lambda = eps * eps;
        for j in 0..12 {
            let ang = TWO_PI * j as f64 / 12.0;
            let z = Complex64::from_polar(eps, ang);
            let exact = phi_bar_map(z / lambda);
            let asymp = Complex64::new(0.0, -1.0) + 2.0 * lambda / z.conj();
            assert!((exact - asymp).norm() < 10.0 * eps * eps, "angle {ang}");
        }
    }

    #[test]
    fn g_lambda_identity_at_unit_scale() {
        let datum = LambdaDatum::new(1.0).unwrap();
        let g = g_lambda_trace(&datum, 256).unwrap();
        for (j, v) in g.samples().iter().enumerate() {
            let want = Complex64::from_polar(1.0, theta(j, 256));
            assert!((v - want).norm() < 1e-12, "node {j}");
        }
    }

    #[test]
    fn g_lambda_energy_is_two_pi_for_all_scales() {
        for &lambda in &[0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let datum = LambdaDatum::new(lambda).unwrap();
            let g = g_lambda_trace(&datum, 512).unwrap();
            let e = g.spectral_energy();
            assert!((e - TWO_PI).abs() < 1e-8, "λ={lambda}: energy {e}");
            assert!((g.fourier_degree() - 1.0).abs() < 1e-8, "λ={lambda}");
            assert_eq!(unwrap_degree(&g), 1);
        }
    }

    #[test]
    fn invalid_lambda_rejected() {
        assert!(LambdaDatum::new(0.0).is_err());
        assert!(LambdaDatum::new(-1.0).is_err());
        assert!(LambdaDatum::new(f64::NAN).is_err());
    }

    #[test]
    fn blaschke_energy_quantization() {
        // Energy of a degree-k Blaschke trace is exactly 2πk; the sampled
        // trace reproduces it to spectral accuracy.
        let pole_sets: Vec<Vec<Complex64>> = vec![
            vec![Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 2.0)],
            vec![Complex64::new(-0.5, 1.0), Complex64::new(0.5, 1.0), Complex64::new(0.0, 3.0)],
        ];
        for poles in pole_sets {
            let k = poles.len() as f64;
            let params = BlaschkeParams::new(0.3, poles, false).unwrap();
            let h = blaschke_trace(&params, 512).unwrap();
            let e = h.spectral_energy();
            assert!((e - TWO_PI * k).abs() < 1e-8, "k={k}: energy {e}");
            assert!((h.fourier_degree() - k).abs() < 1e-8);
        }
    }

    #[test]
    fn blaschke_degree_sign_flips_under_conjugation() {
        let poles = vec![Complex64::new(0.0, 1.0), Complex64::new(0.4, 1.5)];
        let params = BlaschkeParams::new(-0.2, poles.clone(), true).unwrap();
        assert_eq!(params.degree(), -2);
        let h = blaschke_trace(&params, 512).unwrap();
        assert!((h.fourier_degree() + 2.0).abs() < 1e-8);
        assert_eq!(unwrap_degree(&h), -2);
        assert!((h.spectral_energy() - 2.0 * TWO_PI).abs() < 1e-8);
    }

    #[test]
    fn blaschke_trace_spectrum_is_one_sided() {
        let params =
            BlaschkeParams::new(0.0, vec![Complex64::new(0.3, 1.2), Complex64::new(0.0, 0.9)], false)
                .unwrap();
        let h = blaschke_trace(&params, 256).unwrap();
        for k in 1..=128i64 {
            assert!(h.coeff(-k).norm() < 1e-9, "negative mode {k} present");
        }
    }

    #[test]
    fn empty_blaschke_is_constant_phase() {
        let params = BlaschkeParams::new(1.1, vec![], false).unwrap();
        let h = blaschke_trace(&params, 64).unwrap();
        assert_eq!(params.degree(), 0);
        assert!(h.spectral_energy() < 1e-12);
        for v in h.samples() {
            assert!((v - Complex64::from_polar(1.0, 1.1)).norm() < 1e-12);
        }
    }

    #[test]
    fn lower_half_plane_pole_rejected() {
        let err = BlaschkeParams::new(0.0, vec![Complex64::new(0.0, -1.0)], false).unwrap_err();
        assert_eq!(err, ConformalError::InvalidPole { index: 0 });
    }
}
