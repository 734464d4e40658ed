//! Bubble insertion: grafting a concentrated reverse winding into a circle
//! map at the strict energy cost of one degree.
//!
//! Around an insertion node with real-line coordinate `x0 = Π₊(u(e^{iθ_0}))`
//! the map is rewritten, in the frame rotated so `u(x0) = −i`, as
//!
//! * the rescaled anti-holomorphic bubble `Φ̄(t/λ)` for `|t| ≤ ε`,
//! * a Möbius interpolation layer `Φ(A|t| + B)` for `ε < |t| ≤ 2ε`, and
//! * the original map outside,
//!
//! with `t = x − x0`, `λ = με²`, and `A, B` solved exactly per side so the
//! trace is continuous to machine precision. The construction lowers the
//! degree by the local orientation and raises the energy by strictly less
//! than `2π`, with a deficit of order `ε²`.
//!
//! The bubble carries frequency content far beyond the grid band limit, so
//! the rewritten span is sampled on a 4× finer grid and decimated back
//! through a windowed-sinc low-pass; nodes outside the span keep their
//! original samples bit for bit.

use alloc::vec::Vec;

use num_complex::Complex64;
// Used by the no_std build; the test build links std and shadows it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::conformal::{phi_bar_map, phi_map, psi_map};
use crate::spectral::{theta, CircleMap, SpectralError, MODULUS_FLOOR};

/// Below this tangential speed the local frame (and hence the bubble
/// orientation) is numerically undefined.
pub const FRAME_TOL: f64 = 1e-6;

/// Half-width, in fine samples, of the windowed-sinc decimation kernel.
const KERNEL_HALF_WIDTH: usize = 32;

/// Oversampling factor for the rewritten span.
const OVERSAMPLE: usize = 4;

/// Errors produced by the bubble construction.
#[derive(Debug, Clone, PartialEq)]
pub enum BubbleError {
    /// The insertion node does not exist or sits at the north pole, where
    /// the real-line coordinate degenerates.
    BadNode { node: usize, n: usize },
    /// The tangential derivative at the insertion point is too small to
    /// orient the bubble.
    FrameDegenerate { a: f64 },
    /// The scale is non-positive, spans less than two grid nodes, wraps
    /// more than half the circle, or sends a matching endpoint through the
    /// north pole.
    ScaleError { eps: f64, detail: &'static str },
    /// Decimation drove a sample's modulus below the renormalization floor;
    /// the bubble is too concentrated for this grid.
    ModulusCollapse { index: usize, modulus: f64 },
    /// The rewritten samples failed spectral validation.
    Spectral(SpectralError),
}

impl core::fmt::Display for BubbleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BubbleError::BadNode { node, n } => {
                write!(f, "node {node} is not an interior insertion point on a {n}-node grid")
            }
            BubbleError::FrameDegenerate { a } => {
                write!(f, "tangential speed {a:e} is below {FRAME_TOL:e}; no local frame")
            }
            BubbleError::ScaleError { eps, detail } => {
                write!(f, "scale {eps} is unusable: {detail}")
            }
            BubbleError::ModulusCollapse { index, modulus } => write!(
                f,
                "sample {index} collapsed to modulus {modulus:.3} under decimation; \
                 the bubble is below grid resolution"
            ),
            BubbleError::Spectral(e) => write!(f, "rewritten trace rejected: {e}"),
        }
    }
}

impl core::error::Error for BubbleError {}

impl From<SpectralError> for BubbleError {
    fn from(e: SpectralError) -> Self {
        BubbleError::Spectral(e)
    }
}

/// Local data of a bubble insertion at a grid node.
///
/// `a` is the tangential speed `|u′(x0)|` in the real-line coordinate and
/// `b` the inward-normal derivative of the harmonic extension there, both in
/// the frame rotated so `u(x0) = −i`; the concentration is `μ = max(a, b)/2`
/// and the bubble scale `λ = με²`. `orientation` is the sign of
/// `u(x0) ∧ u′(x0)`: `+1` where the map winds counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct BubbleParams {
    pub node: usize,
    pub eps: f64,
    pub a: f64,
    pub b: f64,
    pub mu: f64,
    pub orientation: i8,
}

impl BubbleParams {
    /// Measures the local frame of `u` at a grid node and packages it with
    /// the scale `eps`.
    ///
    /// The tangential speed uses the spectral derivative with the conformal
    /// factor `dθ/dx = 1 − sin θ`; the normal component comes from the
    /// half-Laplacian via `∂_y ũ(x,0) = −(−Δ)^{1/2}u` and the same factor.
    pub fn probe(u: &CircleMap, node: usize, eps: f64) -> Result<Self, BubbleError> {
        let n = u.n_samples();
        if node >= n {
            return Err(BubbleError::BadNode { node, n });
        }
        let t0 = theta(node, n);
        let factor = 1.0 - t0.sin();
        if factor < 1e-9 {
            return Err(BubbleError::BadNode { node, n });
        }
        if !(eps > 0.0) {
            return Err(BubbleError::ScaleError { eps, detail: "scale must be positive" });
        }
        let u0 = u.samples()[node];
        let du = u.eval_derivative(t0);
        let a = du.norm() * factor;
        if a < FRAME_TOL {
            return Err(BubbleError::FrameDegenerate { a });
        }
        let half_lap = u.frac_laplacian_half().samples()[node];
        let b = factor * (u0.conj() * half_lap).re;
        let orientation = if (u0.conj() * du).im >= 0.0 { 1 } else { -1 };
        Ok(BubbleParams { node, eps, a, b, mu: a.max(b) / 2.0, orientation })
    }

    /// The bubble scale λ = με².
    pub fn lambda_scale(&self) -> f64 {
        self.mu * self.eps * self.eps
    }
}

/// Exactly solved Möbius interpolation coefficients of the matching layer,
/// sampled at half-plane angles `θ ∈ [0, π]`.
///
/// At radius `r ∈ [ε, 2ε]` from the insertion point the comparison field is
/// `Φ((A₁ + iA₂)r + (B₁ + iB₂))`; on the two boundary rays `θ = 0, π` the
/// coefficients are real (`A₂ = B₂ = 0`), which makes the inserted trace
/// circle-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingCoefficients {
    pub thetas: Vec<f64>,
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
    pub b1: Vec<f64>,
    pub b2: Vec<f64>,
}

/// Local frame: rotation taking `u(x0)` to `−i`, with an optional reflection
/// `z ↦ −z̄` (fixing `±i`) that makes the tangential direction positive.
#[derive(Clone, Copy)]
struct Frame {
    rot: Complex64,
    reflect: bool,
}

impl Frame {
    fn for_params(u: &CircleMap, params: &BubbleParams) -> Self {
        let u0 = u.samples()[params.node];
        Frame { rot: Complex64::new(0.0, -1.0) / u0, reflect: params.orientation < 0 }
    }

    fn apply(self, z: Complex64) -> Complex64 {
        let w = self.rot * z;
        if self.reflect {
            -w.conj()
        } else {
            w
        }
    }

    fn invert(self, w: Complex64) -> Complex64 {
        let w = if self.reflect { -w.conj() } else { w };
        w * self.rot.conj()
    }
}

/// Real-line coordinate of the grid angle `t`, lifted to the branch
/// `(π/2, π/2 + 2π)` on which `x` is increasing.
fn x_of_theta(t: f64) -> f64 {
    t.cos() / (1.0 - t.sin())
}

/// Branch-lifted angle of the real-line coordinate `x`: the argument of
/// `Π₊⁻¹(x)` shifted into `(π/2, π/2 + 2π)`.
fn theta_of_x(x: f64) -> f64 {
    let raw = (x * x - 1.0).atan2(2.0 * x);
    if raw <= core::f64::consts::FRAC_PI_2 {
        raw + 2.0 * core::f64::consts::PI
    } else {
        raw
    }
}

/// The per-side matching data of the boundary trace.
struct BoundaryMatch {
    /// Coefficients of `Φ(A|t| + B)` on the right (`t > 0`) ray.
    right: (f64, f64),
    /// Coefficients on the left (`t < 0`) ray.
    left: (f64, f64),
}

fn psi_real(z: Complex64, eps: f64) -> Result<f64, BubbleError> {
    if (z - Complex64::new(0.0, 1.0)).norm() < 1e-9 {
        return Err(BubbleError::ScaleError {
            eps,
            detail: "a matching endpoint sits at the north pole",
        });
    }
    Ok(psi_map(z).re)
}

fn boundary_match(
    u: &CircleMap,
    frame: &Frame,
    x0: f64,
    params: &BubbleParams,
) -> Result<BoundaryMatch, BubbleError> {
    let eps = params.eps;
    let lambda = params.lambda_scale();
    let mut sides = [(0.0, 0.0); 2];
    for (i, sign) in [1.0, -1.0].iter().enumerate() {
        // Inner endpoint: the bubble at t = ±ε, whose Ψ-coordinate is
        // exactly ±λ/ε; evaluated through the maps to keep one code path.
        let q_in = psi_real(phi_bar_map(Complex64::new(sign * eps / lambda, 0.0)), eps)?;
        let outer = frame.apply(u.eval(theta_of_x(x0 + sign * 2.0 * eps)));
        let q_out = psi_real(outer, eps)?;
        sides[i] = ((q_out - q_in) / eps, 2.0 * q_in - q_out);
    }
    Ok(BoundaryMatch { right: sides[0], left: sides[1] })
}

/// Solves the two-point Möbius matching exactly at `angles + 1` half-plane
/// angles `θ_i = iπ/angles`, returning the sampled coefficient functions.
///
/// The inner condition matches the rescaled bubble on the half-circle of
/// radius `ε`, the outer one the harmonic extension of `u` (transported to
/// the disk through Φ) on the half-circle of radius `2ε`.
pub fn matching_coefficients(
    u: &CircleMap,
    params: &BubbleParams,
    angles: usize,
) -> Result<MatchingCoefficients, BubbleError> {
    let n = u.n_samples();
    if params.node >= n {
        return Err(BubbleError::BadNode { node: params.node, n });
    }
    let frame = Frame::for_params(u, params);
    let t0 = theta(params.node, n);
    let x0 = x_of_theta(t0);
    let eps = params.eps;
    let lambda = params.lambda_scale();
    let m = angles.max(1);
    let mut out = MatchingCoefficients {
        thetas: Vec::with_capacity(m + 1),
        a1: Vec::with_capacity(m + 1),
        a2: Vec::with_capacity(m + 1),
        b1: Vec::with_capacity(m + 1),
        b2: Vec::with_capacity(m + 1),
    };
    for i in 0..=m {
        let ang = core::f64::consts::PI * i as f64 / m as f64;
        let dir = Complex64::from_polar(1.0, ang);
        let inner = phi_bar_map(dir * (eps / lambda));
        let outer = frame.apply(u.eval_extension(phi_map(Complex64::new(x0, 0.0) + dir * (2.0 * eps))));
        for z in [inner, outer] {
            if (z - Complex64::new(0.0, 1.0)).norm() < 1e-9 {
                return Err(BubbleError::ScaleError {
                    eps,
                    detail: "a matching endpoint sits at the north pole",
                });
            }
        }
        let q_in = psi_map(inner);
        let q_out = psi_map(outer);
        let w = (q_out - q_in) / eps;
        let s = 2.0 * q_in - q_out;
        out.thetas.push(ang);
        out.a1.push(w.re);
        out.a2.push(w.im);
        out.b1.push(s.re);
        out.b2.push(s.im);
    }
    Ok(out)
}

/// The inserted boundary trace in the local frame, as a function of the
/// real-line offset `t = x − x0`.
fn frame_trace(
    u: &CircleMap,
    frame: &Frame,
    x0: f64,
    eps: f64,
    lambda: f64,
    matched: &BoundaryMatch,
    t: f64,
) -> Complex64 {
    let r = t.abs();
    if r <= eps {
        phi_bar_map(Complex64::new(t / lambda, 0.0))
    } else if r <= 2.0 * eps {
        let (a, b) = if t > 0.0 { matched.right } else { matched.left };
        phi_map(Complex64::new(a * r + b, 0.0))
    } else {
        frame.apply(u.eval(theta_of_x(x0 + t)))
    }
}

/// Blackman-windowed sinc decimation kernel for the 4× oversampled span,
/// cut off just below the coarse Nyquist rate and normalized to unit DC
/// gain.
fn decimation_kernel() -> Vec<f64> {
    let m = KERNEL_HALF_WIDTH as isize;
    let cutoff = 0.9 * core::f64::consts::PI / OVERSAMPLE as f64;
    let mut taps = Vec::with_capacity(2 * KERNEL_HALF_WIDTH + 1);
    for i in -m..=m {
        let sinc = if i == 0 {
            cutoff / core::f64::consts::PI
        } else {
            (cutoff * i as f64).sin() / (core::f64::consts::PI * i as f64)
        };
        let phase = core::f64::consts::PI * i as f64 / m as f64;
        let window = 0.42 + 0.5 * phase.cos() + 0.08 * (2.0 * phase).cos();
        taps.push(sinc * window);
    }
    let total: f64 = taps.iter().sum();
    for tap in &mut taps {
        *tap /= total;
    }
    taps
}

/// Grafts the bubble described by `params` into `u`.
///
/// Samples inside the rewritten span `|x − x0| < 2ε` are replaced by the
/// low-passed piecewise trace and renormalized onto the circle; all other
/// samples are returned bit-identical. The degree drops by
/// `params.orientation`.
pub fn bubble_insert(u: &CircleMap, params: &BubbleParams) -> Result<CircleMap, BubbleError> {
    let n = u.n_samples();
    if params.node >= n {
        return Err(BubbleError::BadNode { node: params.node, n });
    }
    let t0 = theta(params.node, n);
    if 1.0 - t0.sin() < 1e-9 {
        return Err(BubbleError::BadNode { node: params.node, n });
    }
    let eps = params.eps;
    if !(eps > 0.0) {
        return Err(BubbleError::ScaleError { eps, detail: "scale must be positive" });
    }
    let x0 = x_of_theta(t0);
    let theta_lo = theta_of_x(x0 - 2.0 * eps);
    let theta_hi = theta_of_x(x0 + 2.0 * eps);
    if theta_hi - theta_lo > core::f64::consts::PI {
        return Err(BubbleError::ScaleError {
            eps,
            detail: "the rewritten span would cover more than half the circle",
        });
    }

    // Contiguous block of grid nodes strictly inside the span, in the
    // branch-lifted angular order.
    let lifted = |j: usize| {
        let t = theta(j, n);
        if t <= core::f64::consts::FRAC_PI_2 {
            t + 2.0 * core::f64::consts::PI
        } else {
            t
        }
    };
    let affected: Vec<usize> = {
        let mut nodes: Vec<usize> =
            (0..n).filter(|&j| lifted(j) > theta_lo && lifted(j) < theta_hi).collect();
        nodes.sort_by(|&p, &q| lifted(p).partial_cmp(&lifted(q)).unwrap());
        nodes
    };
    if affected.len() < 2 {
        return Err(BubbleError::ScaleError {
            eps,
            detail: "the span covers fewer than two grid nodes",
        });
    }

    let frame = Frame::for_params(u, params);
    let lambda = params.lambda_scale();
    let matched = boundary_match(u, &frame, x0, params)?;

    // 4× oversampled angular grid anchored on the affected nodes, with one
    // kernel half-width of margin on each side; the margin taps fall on the
    // piecewise formula, which agrees with u beyond the span.
    let fine_step = 2.0 * core::f64::consts::PI / (n * OVERSAMPLE) as f64;
    let first = lifted(affected[0]);
    let fine_len = OVERSAMPLE * (affected.len() - 1) + 2 * KERNEL_HALF_WIDTH + 1;
    let fine: Vec<Complex64> = (0..fine_len)
        .map(|i| {
            let ang = first + (i as f64 - KERNEL_HALF_WIDTH as f64) * fine_step;
            let t = x_of_theta(ang) - x0;
            frame_trace(u, &frame, x0, eps, lambda, &matched, t)
        })
        .collect();

    let kernel = decimation_kernel();
    let mut samples = u.samples().to_vec();
    for (k, &j) in affected.iter().enumerate() {
        let center = KERNEL_HALF_WIDTH + OVERSAMPLE * k;
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, tap) in kernel.iter().enumerate() {
            acc += tap * fine[center + m - KERNEL_HALF_WIDTH];
        }
        let modulus = acc.norm();
        if !(modulus >= MODULUS_FLOOR) {
            return Err(BubbleError::ModulusCollapse { index: j, modulus });
        }
        let w = frame.invert(acc / modulus);
        // Guard the frame round trip against rounding drift off the circle.
        samples[j] = w / w.norm();
    }
    Ok(CircleMap::from_trusted_samples(samples))
}
