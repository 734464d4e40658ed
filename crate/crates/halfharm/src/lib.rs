//! Spectral machinery for circle-valued maps of the circle: fractional
//! Dirichlet energy, Brouwer degree, Blaschke and Möbius traces, surgery and
//! bubble insertion, and constrained energy minimization.
//!
//! Maps live on the uniform grid θ_j = 2πj/n and are band-limited by their
//! samples; every operator acts on the Fourier side with the normalization
//!
//! ```text
//! u(e^{iθ}) = (2π)^{-1/2} Σ_k a_k e^{ikθ},   a_k = (2π)^{-1/2} ∫ u e^{-ikθ} dθ,
//! ```
//!
//! so that the energy of e^{ikθ} is exactly 2π|k| and every degree-k energy
//! minimizer has energy 2π|k|.
//!
//! The crate is `no_std` + `alloc`; everything that needs IO lives in the
//! companion CLI crate.

#![no_std]
// Guards written as `!(x > 0.0)` are NaN-rejecting on purpose; the
// un-negated form would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bubble;
pub mod conformal;
pub mod degree;
pub mod fft;
pub mod minimize;
pub mod poisson;
pub mod profiles;
pub mod spectral;
pub mod surgery;

#[cfg(test)]
pub(crate) mod testutil;

pub use num_complex::Complex64;

pub use bubble::{bubble_insert, matching_coefficients, BubbleError, BubbleParams, MatchingCoefficients};
pub use conformal::{
    blaschke_trace, g_lambda_trace, phi_bar_map, phi_map, psi_map, stereo_north,
    stereo_north_inv, stereo_south, stereo_south_inv, BlaschkeParams, ConformalError, LambdaDatum,
};
pub use degree::{degree, DegreeError, DegreeMethods, DegreeReport};
pub use minimize::{
    half_harmonic_residual, half_harmonic_residual_full, initial_guess, minimize_from,
    minimize_in_class, reflection_competitor, ArcConstraint, ClassJump, MinimizeConfig,
    MinimizeError, MinimizeResult,
};
pub use poisson::{dirichlet_energy, poisson_extend, DiskField};
pub use profiles::{
    cut_trace, default_levels, grid_seminorm, profile_scan, profile_trace, profile_value,
    ProfileKind, ProfileScanRow,
};
pub use spectral::{CircleMap, EnergyMethods, EnergyReport, SpectralError};
pub use surgery::{
    degree_additivity_check, glue_reflect, glue_replace, HalfArcMap, SurgeryError,
};

/// 2π, the ambient constant of the whole crate: the energy of one full turn.
pub const TWO_PI: f64 = 2.0 * core::f64::consts::PI;
