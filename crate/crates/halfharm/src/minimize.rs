//! Constrained energy minimization: projected gradient descent over
//! circle-valued maps with prescribed values on a closed arc, with class
//! monitoring and a half-harmonicity residual certificate.
//!
//! The discrete energy `E(u) = Σ|k||a_k|²` is quadratic in the samples; its
//! gradient at node `j` is `(2π/n)·[(−Δ)^{1/2}u]_j`, which descent projects
//! onto the tangent line `i·u_j` of the target circle. The homotopy class is
//! maintained by initialization and monitored rather than constrained: a
//! class escape costs ≈ 2π of energy and is logged as a [`ClassJump`], not
//! treated as failure.

use alloc::vec::Vec;

use num_complex::Complex64;
// Used by the no_std build; the test build links std and shadows it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::conformal::{g_lambda_trace, ConformalError, LambdaDatum};
use crate::spectral::{CircleMap, SpectralError, CIRCLE_TOL, MIN_GRID, MODULUS_FLOOR};
use crate::surgery::{glue_reflect, HalfArcMap, SurgeryError};
use crate::TWO_PI;

/// Maximum phase jump between adjacent fixed samples that still lifts
/// unambiguously.
pub const LIFT_TOL: f64 = core::f64::consts::FRAC_PI_2;

/// Errors of constraint construction and minimization.
#[derive(Debug, Clone, PartialEq)]
pub enum MinimizeError {
    /// The grid size is not a power of two of at least [`MIN_GRID`] nodes.
    BadGrid { n: usize },
    /// The arc does not leave enough room: it needs at least 2 fixed nodes
    /// and at least 8 free nodes.
    BadArc { fixed: usize, free: usize },
    /// A prescribed value is not finite or not on the unit circle.
    OffCircle { index: usize, modulus: f64 },
    /// The initial map does not live on this constraint's grid, or is not
    /// marked on-circle.
    BadInitial { detail: &'static str },
    /// Adjacent fixed samples jump by more than [`LIFT_TOL`] in phase; the
    /// boundary data cannot be lifted on this grid.
    LiftFailure { index: usize },
    /// The requested class cannot be represented: the linear phase fill
    /// would need more than half a turn per node.
    DegreeUnreachable { k: i64 },
    /// Renormalization kept failing after many step halvings.
    ModulusCollapse { iteration: usize },
    /// A spectral operation failed.
    Spectral(SpectralError),
    /// A conformal datum was invalid.
    Conformal(ConformalError),
    /// A surgery operation failed.
    Surgery(SurgeryError),
}

impl core::fmt::Display for MinimizeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MinimizeError::BadGrid { n } => {
                write!(f, "grid size {n} is not a power of two >= {MIN_GRID}")
            }
            MinimizeError::BadArc { fixed, free } => {
                write!(f, "arc with {fixed} fixed and {free} free nodes; need >= 2 and >= 8")
            }
            MinimizeError::OffCircle { index, modulus } => {
                write!(f, "prescribed value {index} has modulus {modulus:e}, not on the circle")
            }
            MinimizeError::BadInitial { detail } => write!(f, "unusable initial map: {detail}"),
            MinimizeError::LiftFailure { index } => write!(
                f,
                "fixed values jump by more than a quarter turn at node {index}; no phase lift"
            ),
            MinimizeError::DegreeUnreachable { k } => {
                write!(f, "class {k} is not representable on this grid and arc")
            }
            MinimizeError::ModulusCollapse { iteration } => {
                write!(f, "renormalization floor hit persistently at iteration {iteration}")
            }
            MinimizeError::Spectral(e) => write!(f, "spectral failure: {e}"),
            MinimizeError::Conformal(e) => write!(f, "conformal failure: {e}"),
            MinimizeError::Surgery(e) => write!(f, "surgery failure: {e}"),
        }
    }
}

impl core::error::Error for MinimizeError {}

impl From<SpectralError> for MinimizeError {
    fn from(e: SpectralError) -> Self {
        MinimizeError::Spectral(e)
    }
}

impl From<ConformalError> for MinimizeError {
    fn from(e: ConformalError) -> Self {
        MinimizeError::Conformal(e)
    }
}

impl From<SurgeryError> for MinimizeError {
    fn from(e: SurgeryError) -> Self {
        MinimizeError::Surgery(e)
    }
}

/// Dirichlet data on a closed contiguous arc of grid nodes.
///
/// Node `start + i (mod n)` is fixed to `values[i]` for `i < len`; all other
/// nodes are free. The arc must keep at least 2 fixed and 8 free nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcConstraint {
    n: usize,
    start: usize,
    len: usize,
    values: Vec<Complex64>,
}

impl ArcConstraint {
    /// Validates and wraps prescribed arc values; they are renormalized
    /// exactly onto the circle.
    pub fn new(
        n: usize,
        start: usize,
        len: usize,
        values: Vec<Complex64>,
    ) -> Result<Self, MinimizeError> {
        if n < MIN_GRID || !n.is_power_of_two() {
            return Err(MinimizeError::BadGrid { n });
        }
        if start >= n || len < 2 || n - len < 8 || values.len() != len {
            return Err(MinimizeError::BadArc { fixed: len.min(values.len()), free: n.saturating_sub(len) });
        }
        let mut values = values;
        for (i, z) in values.iter_mut().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MinimizeError::OffCircle { index: i, modulus: f64::NAN });
            }
            let m = z.norm();
            if (m - 1.0).abs() > CIRCLE_TOL {
                return Err(MinimizeError::OffCircle { index: i, modulus: m });
            }
            *z /= m;
        }
        Ok(ArcConstraint { n, start, len, values })
    }

    /// Freezes an existing map's samples on the arc `start..start+len`.
    pub fn from_map(u: &CircleMap, start: usize, len: usize) -> Result<Self, MinimizeError> {
        let n = u.n_samples();
        if start >= n || len > n {
            return Err(MinimizeError::BadArc { fixed: len, free: n.saturating_sub(len) });
        }
        let values = (0..len).map(|i| u.samples()[(start + i) % n]).collect();
        ArcConstraint::new(n, start, len, values)
    }

    /// The canonical boundary condition: the g_λ trace frozen on the closed
    /// upper arc (nodes `0..=n/2`), free on the open lower arc.
    pub fn g_lambda(datum: &LambdaDatum, n: usize) -> Result<Self, MinimizeError> {
        let trace = g_lambda_trace(datum, n)?;
        let (start, len) = LambdaDatum::fixed_arc(n);
        ArcConstraint::from_map(&trace, start, len)
    }

    /// Grid size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// First fixed node.
    pub fn start(&self) -> usize {
        self.start
    }

    /// Number of fixed nodes — at least 2 by construction, so there is no
    /// `is_empty` companion.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Prescribed values, in arc order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Whether node `j` is fixed by the constraint.
    pub fn is_fixed(&self, j: usize) -> bool {
        (j + self.n - self.start) % self.n < self.len
    }

    /// Overwrites the fixed nodes of a sample vector with the prescribed
    /// values, bit for bit.
    pub fn apply(&self, samples: &mut [Complex64]) {
        for (i, &v) in self.values.iter().enumerate() {
            samples[(self.start + i) % self.n] = v;
        }
    }

    /// Free node indices in ascending order.
    pub fn free_nodes(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| !self.is_fixed(j)).collect()
    }
}

/// Descent configuration. `step0` of `None` uses the default `0.1/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeConfig {
    pub max_iter: usize,
    pub step0: Option<f64>,
    pub tol_residual: f64,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig { max_iter: 20_000, step0: None, tol_residual: 1e-4 }
    }
}

/// A monitored change of the rounded degree during descent.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassJump {
    pub iteration: usize,
    pub old_degree: i64,
    pub new_degree: i64,
    /// Energy at the monitoring tick that detected the jump (post-drop).
    pub energy: f64,
}

/// Outcome of a constrained minimization.
#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub map: CircleMap,
    pub energy: f64,
    /// Rounded Fourier degree of the final map.
    pub degree: i64,
    /// Max over free nodes of |⟨(−Δ)^{1/2}u, iu⟩|, the Euler–Lagrange
    /// certificate.
    pub residual: f64,
    pub iterations: usize,
    pub class_jumps: Vec<ClassJump>,
    /// Whether the residual dropped below tolerance within the budget.
    pub converged: bool,
    /// Diagnostic: false if some monitored iterate with a tightly resolved
    /// degree m (|fourier − m| ≤ 0.02) had energy below 2π|m| − 0.05.
    pub lower_bound_respected: bool,
}

/// Tangential component ⟨(−Δ)^{1/2}u, iu⟩ at every node.
fn tangential(u: &CircleMap) -> Vec<f64> {
    let hl = u.frac_laplacian_half();
    u.samples()
        .iter()
        .zip(hl.samples())
        .map(|(&s, &h)| ((Complex64::new(0.0, 1.0) * s).conj() * h).re)
        .collect()
}

/// Max over the constraint's free nodes of the Euler–Lagrange pairing
/// |⟨(−Δ)^{1/2}u, iu⟩|.
pub fn half_harmonic_residual(u: &CircleMap, constraint: &ArcConstraint) -> f64 {
    let tau = tangential(u);
    (0..u.n_samples())
        .filter(|&j| !constraint.is_fixed(j))
        .map(|j| tau[j].abs())
        .fold(0.0, f64::max)
}

/// The same certificate over the whole circle, for unconstrained critical
/// points such as Blaschke traces.
pub fn half_harmonic_residual_full(u: &CircleMap) -> f64 {
    tangential(u).iter().fold(0.0, |acc, t| acc.max(t.abs()))
}

/// A representative of the class: fixed nodes carry the prescribed values
/// bit for bit, and the free arc is filled by linear phase interpolation
/// adding exactly the winding that makes the total degree `k`.
pub fn initial_guess(constraint: &ArcConstraint, k: i64) -> Result<CircleMap, MinimizeError> {
    let n = constraint.n;
    let len = constraint.len;
    // Lift the fixed phases along the arc.
    let mut phases = Vec::with_capacity(len);
    phases.push(constraint.values[0].arg());
    for i in 1..len {
        let step = (constraint.values[i] / constraint.values[i - 1]).arg();
        if step.abs() > LIFT_TOL + 1e-12 {
            return Err(MinimizeError::LiftFailure { index: (constraint.start + i) % n });
        }
        phases.push(phases[i - 1] + step);
    }
    let delta_arc = phases[len - 1] - phases[0];
    let delta_free = k as f64 * TWO_PI - delta_arc;
    let gaps = (n - len + 1) as f64;
    if delta_free.abs() / gaps > core::f64::consts::PI * 0.95 {
        return Err(MinimizeError::DegreeUnreachable { k });
    }
    let mut samples = alloc::vec![Complex64::new(0.0, 0.0); n];
    constraint.apply(&mut samples);
    for i in 1..(n - len + 1) {
        let j = (constraint.start + len - 1 + i) % n;
        samples[j] = Complex64::from_polar(1.0, phases[len - 1] + delta_free * i as f64 / gaps);
    }
    // The construction winds exactly k times by design; verify the sampled
    // loop agrees before handing it to descent.
    let winding: f64 = (0..n)
        .map(|j| (samples[(j + 1) % n] / samples[j]).arg())
        .sum::<f64>()
        / TWO_PI;
    if (winding - k as f64).abs() > 0.25 {
        return Err(MinimizeError::DegreeUnreachable { k });
    }
    Ok(CircleMap::from_trusted_samples(samples))
}

/// Minimizes the energy from a caller-supplied starting map.
///
/// The start must be on-circle and on the constraint's grid; its fixed nodes
/// are overwritten with the prescribed values before descent. Termination on
/// `max_iter` is reported through `converged = false`, not as an error.
pub fn minimize_from(
    initial: &CircleMap,
    constraint: &ArcConstraint,
    cfg: MinimizeConfig,
) -> Result<MinimizeResult, MinimizeError> {
    let n = constraint.n;
    if initial.n_samples() != n {
        return Err(MinimizeError::BadInitial { detail: "grid size differs from the constraint" });
    }
    if !initial.on_circle() {
        return Err(MinimizeError::BadInitial { detail: "map is not marked on-circle" });
    }
    let free = constraint.free_nodes();
    let mut samples = initial.samples().to_vec();
    constraint.apply(&mut samples);
    let mut u = CircleMap::from_trusted_samples(samples);
    let mut energy = u.spectral_energy();

    let mut class_jumps = Vec::new();
    let mut lower_bound_respected = true;
    let mut last_degree = {
        let fourier = u.fourier_degree();
        fourier.round() as i64
    };
    let monitor = |u: &CircleMap, energy: f64, iteration: usize, last: &mut i64, jumps: &mut Vec<ClassJump>, bound_ok: &mut bool| {
        let fourier = u.fourier_degree();
        let rounded = fourier.round() as i64;
        if rounded != *last {
            jumps.push(ClassJump {
                iteration,
                old_degree: *last,
                new_degree: rounded,
                energy,
            });
            *last = rounded;
        }
        if (fourier - rounded as f64).abs() <= 0.02
            && energy < TWO_PI * rounded.unsigned_abs() as f64 - 0.05
        {
            *bound_ok = false;
        }
    };
    monitor(&u, energy, 0, &mut last_degree, &mut class_jumps, &mut lower_bound_respected);

    let mut iterations = 0;
    let mut converged = false;
    // Previous accepted state for the Barzilai–Borwein step estimate.
    let mut prev_step: Option<(Vec<Complex64>, Vec<Complex64>, f64)> = None;

    for iter in 0..cfg.max_iter {
        iterations = iter;
        let tau = tangential(&u);
        let residual = free.iter().map(|&j| tau[j].abs()).fold(0.0, f64::max);
        if residual < cfg.tol_residual {
            converged = true;
            break;
        }

        // Projected descent direction and the squared norm driving Armijo.
        let mut direction = alloc::vec![Complex64::new(0.0, 0.0); n];
        let mut m2 = 0.0;
        for &j in &free {
            direction[j] = -tau[j] * Complex64::new(0.0, 1.0) * u.samples()[j];
            m2 += tau[j] * tau[j];
        }
        let slope = -(2.0 * TWO_PI / n as f64) * m2;

        let mut alpha = match &prev_step {
            None => cfg.step0.unwrap_or(0.1 / n as f64),
            Some((ds, dd, fallback)) => {
                // BB1 with the gradient difference y = −Δdirection.
                let mut num = 0.0;
                let mut den = 0.0;
                for &j in &free {
                    num += (ds[j].conj() * ds[j]).re;
                    den -= (ds[j].conj() * dd[j]).re;
                }
                if den > 0.0 && num.is_finite() {
                    (num / den).clamp(1e-12, 1e9)
                } else {
                    *fallback
                }
            }
        };

        let mut accepted = None;
        let mut modulus_trouble = false;
        for _ in 0..60 {
            let mut candidate = u.samples().to_vec();
            let mut floored = false;
            for &j in &free {
                let z = candidate[j] + alpha * direction[j];
                let m = z.norm();
                if !(m >= MODULUS_FLOOR) {
                    floored = true;
                    break;
                }
                candidate[j] = z / m;
            }
            if floored {
                modulus_trouble = true;
                alpha *= 0.5;
                continue;
            }
            let cand_map = CircleMap::from_trusted_samples(candidate);
            let cand_energy = cand_map.spectral_energy();
            if cand_energy <= energy + 1e-4 * alpha * slope {
                accepted = Some((cand_map, cand_energy, alpha));
                break;
            }
            alpha *= 0.5;
        }

        let (next, next_energy, used_alpha) = match accepted {
            Some(t) => t,
            None if modulus_trouble => {
                return Err(MinimizeError::ModulusCollapse { iteration: iter })
            }
            // Rounding floor of the quadratic model: no decrease is
            // available; stop with the current certificate.
            None => break,
        };

        // Store the accepted displacement and direction change for BB.
        let ds: Vec<Complex64> = (0..n)
            .map(|j| next.samples()[j] - u.samples()[j])
            .collect();
        let next_tau = tangential(&next);
        let dd: Vec<Complex64> = (0..n)
            .map(|j| {
                let dj = if constraint.is_fixed(j) {
                    Complex64::new(0.0, 0.0)
                } else {
                    -next_tau[j] * Complex64::new(0.0, 1.0) * next.samples()[j]
                };
                dj - direction[j]
            })
            .collect();
        prev_step = Some((ds, dd, used_alpha));

        u = next;
        energy = next_energy;
        if (iter + 1) % 10 == 0 {
            monitor(&u, energy, iter + 1, &mut last_degree, &mut class_jumps, &mut lower_bound_respected);
        }
    }

    if !converged && iterations + 1 == cfg.max_iter {
        iterations = cfg.max_iter;
    }
    let tau = tangential(&u);
    let residual = free.iter().map(|&j| tau[j].abs()).fold(0.0, f64::max);
    if residual < cfg.tol_residual {
        converged = true;
    }
    monitor(&u, energy, iterations, &mut last_degree, &mut class_jumps, &mut lower_bound_respected);

    let degree = u.fourier_degree().round() as i64;
    Ok(MinimizeResult {
        map: u,
        energy,
        degree,
        residual,
        iterations,
        class_jumps,
        converged,
        lower_bound_respected,
    })
}

/// Minimizes the energy over the class-`k` maps satisfying the constraint,
/// starting from the linear-phase representative.
pub fn minimize_in_class(
    constraint: &ArcConstraint,
    k: i64,
    cfg: MinimizeConfig,
) -> Result<MinimizeResult, MinimizeError> {
    let initial = initial_guess(constraint, k)?;
    minimize_from(&initial, constraint, cfg)
}

/// The degree-0 competitor sharing the g_λ boundary data: the g_λ trace on
/// the upper arc glued to its own reflection on the lower arc.
///
/// Its energy lies strictly below 2π (the reflected extension is not
/// harmonic), certifying that the class-0 infimum beats the class-1 value at
/// this λ.
pub fn reflection_competitor(lambda: f64, n: usize) -> Result<CircleMap, MinimizeError> {
    let datum = LambdaDatum::new(lambda)?;
    let g = g_lambda_trace(&datum, n)?;
    let arc = HalfArcMap::from_map(&g);
    Ok(glue_reflect(&arc, &g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::blaschke_trace;
    use crate::conformal::BlaschkeParams;
    use crate::testutil::{random_smooth_circle_map, seeded_rng, unwrap_degree};
    use rand::Rng;

    fn g1_constraint(n: usize) -> ArcConstraint {
        ArcConstraint::g_lambda(&LambdaDatum::new(1.0).unwrap(), n).unwrap()
    }

    #[test]
    fn constant_boundary_gives_constant_guess() {
        let n = 64;
        let c = ArcConstraint::new(
            n,
            0,
            n / 2 + 1,
            alloc::vec![Complex64::new(0.0, 1.0); n / 2 + 1],
        )
        .unwrap();
        let u = initial_guess(&c, 0).unwrap();
        for s in u.samples() {
            assert!((s - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        }
        assert!(u.spectral_energy() < 1e-18);
    }

    #[test]
    fn initial_guess_hits_requested_classes() {
        let n = 256;
        let c = g1_constraint(n);
        for k in [-1i64, 0, 1, 3] {
            let u = initial_guess(&c, k).unwrap();
            assert_eq!(unwrap_degree(&u), k, "k = {k}");
            assert!(u.spectral_energy().is_finite());
            // Fixed nodes bit-identical to the prescription.
            for (i, &v) in c.values().iter().enumerate() {
                assert_eq!(u.samples()[(c.start() + i) % n], v);
            }
        }
    }

    #[test]
    fn lift_failure_on_scrambled_boundary() {
        let n = 64;
        let values = (0..=n / 2)
            .map(|i| {
                if i % 2 == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::from_polar(1.0, 2.0)
                }
            })
            .collect::<Vec<_>>();
        let c = ArcConstraint::new(n, 0, n / 2 + 1, values).unwrap();
        match initial_guess(&c, 0) {
            Err(MinimizeError::LiftFailure { .. }) => {}
            other => panic!("expected a lift failure, got {other:?}"),
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        // The energy is quadratic in the samples, so the centered difference
        // is exact up to rounding; this pins the 2π/n gradient scale.
        let mut rng = seeded_rng(41);
        let n = 64;
        let u = random_smooth_circle_map(&mut rng, n, 6);
        let hl = u.frac_laplacian_half();
        let h = 1e-5;
        for _ in 0..20 {
            let delta: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let analytic: f64 = (0..n)
                .map(|j| {
                    let g = (TWO_PI / n as f64) * hl.samples()[j];
                    2.0 * (g.conj() * delta[j]).re
                })
                .sum();
            let shift = |sign: f64| {
                let moved: Vec<Complex64> =
                    (0..n).map(|j| u.samples()[j] + sign * h * delta[j]).collect();
                CircleMap::from_samples(moved, false).unwrap().spectral_energy()
            };
            let numeric = (shift(1.0) - shift(-1.0)) / (2.0 * h);
            assert!(
                (analytic - numeric).abs() <= 1e-6 * numeric.abs().max(1.0),
                "analytic {analytic} vs numeric {numeric}"
            );
        }
    }

    #[test]
    fn blaschke_traces_are_half_harmonic() {
        let params = BlaschkeParams::new(
            0.4,
            alloc::vec![Complex64::new(0.3, 0.9), Complex64::new(-0.2, 1.4)],
            false,
        )
        .unwrap();
        let b = blaschke_trace(&params, 512).unwrap();
        assert!(half_harmonic_residual_full(&b) < 1e-6);
        // A smooth non-critical map fails the certificate by a wide margin.
        let mut rng = seeded_rng(43);
        let w = random_smooth_circle_map(&mut rng, 512, 5);
        assert!(half_harmonic_residual_full(&w) > 0.01);
    }

    #[test]
    fn reflection_competitor_energy_and_degree() {
        let v = reflection_competitor(1.0, 512).unwrap();
        assert_eq!(unwrap_degree(&v), 0);
        // Exact energy of the glued identity/reflection trace.
        let target = core::f64::consts::PI + 4.0 / core::f64::consts::PI;
        assert!((v.spectral_energy() - target).abs() < 1e-3);
        assert!(v.spectral_energy() < TWO_PI);
        // λ below 1 keeps the strict bound.
        let w = reflection_competitor(0.5, 512).unwrap();
        assert!(w.spectral_energy() < TWO_PI);
    }

    #[test]
    fn class_one_descent_recovers_the_minimizer() {
        let n = 128;
        let c = g1_constraint(n);
        let result = minimize_in_class(&c, 1, MinimizeConfig::default()).unwrap();
        assert!(result.converged, "residual {}", result.residual);
        assert!(result.residual < 1e-4);
        assert!((result.energy - TWO_PI).abs() < 0.01 * TWO_PI);
        assert_eq!(result.degree, 1);
        assert!(result.class_jumps.is_empty());
        assert!(result.lower_bound_respected);
        // The unique minimizer is the identity trace.
        let g = g_lambda_trace(&LambdaDatum::new(1.0).unwrap(), n).unwrap();
        let dist = result
            .map
            .samples()
            .iter()
            .zip(g.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(dist < 0.02, "sup distance {dist}");
        // Fixed nodes never moved.
        for (i, &v) in c.values().iter().enumerate() {
            assert_eq!(result.map.samples()[(c.start() + i) % n], v);
        }
    }

    #[test]
    fn class_zero_beats_two_pi() {
        let n = 128;
        let c = g1_constraint(n);
        let result = minimize_in_class(&c, 0, MinimizeConfig::default()).unwrap();
        assert!(result.converged, "residual {}", result.residual);
        assert!(result.energy < TWO_PI - 0.05, "energy {}", result.energy);
        assert_eq!(result.degree, 0);
        assert!(result.class_jumps.is_empty());
    }

    #[test]
    fn constant_boundary_class_one_collapses() {
        let n = 128;
        let c = ArcConstraint::new(
            n,
            0,
            n / 2 + 1,
            alloc::vec![Complex64::new(1.0, 0.0); n / 2 + 1],
        )
        .unwrap();
        let result = minimize_in_class(&c, 1, MinimizeConfig::default()).unwrap();
        assert_eq!(result.degree, 0);
        assert!(result.energy < 0.2, "energy {}", result.energy);
        let jump = result
            .class_jumps
            .iter()
            .find(|j| j.old_degree == 1 && j.new_degree == 0)
            .expect("the collapse must be logged");
        assert!(jump.energy < TWO_PI, "post-drop energy {}", jump.energy);
    }
}
