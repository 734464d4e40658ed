//! Cut-and-glue surgery on half-arcs.
//!
//! A [`HalfArcMap`] carries unimodular values on the closed upper arc
//! (grid nodes `0..=n/2`, i.e. angles `0..=π`). Two gluings against a full
//! circle map `u` are provided:
//!
//! * [`glue_replace`] — `v&u`: the arc values on the upper arc, `u` kept on
//!   the lower arc;
//! * [`glue_reflect`] — `v#u`: the arc values on the upper arc, the
//!   reflection `θ ↦ u(−θ)` on the lower arc.
//!
//! Whenever all three degrees resolve, they satisfy the additivity law
//! `deg(v&u) = deg(u) + deg(v#u)`, which [`degree_additivity_check`]
//! verifies and reports.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::degree::{degree, DegreeError, DegreeMethods};
use crate::spectral::{CircleMap, SpectralError, CIRCLE_TOL, MIN_GRID};

/// Errors produced by the surgery operations.
#[derive(Debug, Clone, PartialEq)]
pub enum SurgeryError {
    /// The supplied arc values do not cover the closed upper arc of an
    /// admissible grid (power of two, at least [`MIN_GRID`] nodes).
    BadArcLength { expected: usize, got: usize },
    /// The underlying grid size is not an admissible circle grid.
    BadGrid { n: usize },
    /// An arc value is not finite or not on the unit circle.
    OffCircle { index: usize, modulus: f64 },
    /// The arc and the circle map live on different grids.
    GridMismatch { arc_n: usize, map_n: usize },
    /// A glued map failed spectral validation.
    Spectral(SpectralError),
    /// A degree evaluation failed or did not resolve.
    Degree(DegreeError),
    /// The additivity law `deg(v&u) = deg(u) + deg(v#u)` failed on resolved
    /// degrees. This indicates an unresolvable input slipping past the
    /// guard and is reported rather than silently returned.
    AdditivityViolation { glued: i64, base: i64, reflected: i64 },
}

impl core::fmt::Display for SurgeryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SurgeryError::BadArcLength { expected, got } => {
                write!(f, "half-arc needs {expected} node values, got {got}")
            }
            SurgeryError::BadGrid { n } => {
                write!(f, "grid size {n} is not a power of two >= {MIN_GRID}")
            }
            SurgeryError::OffCircle { index, modulus } => {
                write!(f, "arc value {index} has modulus {modulus:e}, not on the unit circle")
            }
            SurgeryError::GridMismatch { arc_n, map_n } => {
                write!(f, "arc grid {arc_n} does not match map grid {map_n}")
            }
            SurgeryError::Spectral(e) => write!(f, "glued map rejected: {e}"),
            SurgeryError::Degree(e) => write!(f, "degree evaluation failed: {e}"),
            SurgeryError::AdditivityViolation { glued, base, reflected } => write!(
                f,
                "degree additivity violated: deg(v&u) = {glued} but deg(u) + deg(v#u) = {base} + {reflected}"
            ),
        }
    }
}

impl core::error::Error for SurgeryError {}

impl From<SpectralError> for SurgeryError {
    fn from(e: SpectralError) -> Self {
        SurgeryError::Spectral(e)
    }
}

impl From<DegreeError> for SurgeryError {
    fn from(e: DegreeError) -> Self {
        SurgeryError::Degree(e)
    }
}

/// Unimodular values on the closed upper arc of an `n`-node circle grid.
///
/// Entry `j` sits at angle `θ_j = 2πj/n` for `j = 0..=n/2`, so the arc holds
/// `n/2 + 1` values and shares its endpoint nodes (`1` and `−1`) with the
/// lower arc.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfArcMap {
    n: usize,
    values: Vec<Complex64>,
}

impl HalfArcMap {
    /// Validates and wraps arc values for an `n`-node grid.
    ///
    /// Requires `n` to be a power of two with at least [`MIN_GRID`] nodes
    /// and exactly `n/2 + 1` finite values of unit modulus (within
    /// [`CIRCLE_TOL`]); the values are renormalized exactly onto the circle.
    pub fn new(n: usize, values: Vec<Complex64>) -> Result<Self, SurgeryError> {
        if n < MIN_GRID || !n.is_power_of_two() {
            return Err(SurgeryError::BadGrid { n });
        }
        if values.len() != n / 2 + 1 {
            return Err(SurgeryError::BadArcLength { expected: n / 2 + 1, got: values.len() });
        }
        let mut values = values;
        for (j, z) in values.iter_mut().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(SurgeryError::OffCircle { index: j, modulus: f64::NAN });
            }
            let m = z.norm();
            if (m - 1.0).abs() > CIRCLE_TOL {
                return Err(SurgeryError::OffCircle { index: j, modulus: m });
            }
            *z /= m;
        }
        Ok(HalfArcMap { n, values })
    }

    /// Restricts a circle map to its closed upper arc.
    pub fn from_map(u: &CircleMap) -> Self {
        let n = u.n_samples();
        HalfArcMap { n, values: u.samples()[..=n / 2].to_vec() }
    }

    /// Samples `f` at the upper-arc angles `θ_j = 2πj/n`, `j = 0..=n/2`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self, SurgeryError> {
        if n < MIN_GRID || !n.is_power_of_two() {
            return Err(SurgeryError::BadGrid { n });
        }
        let values =
            (0..=n / 2).map(|j| f(crate::spectral::theta(j, n))).collect::<Vec<_>>();
        HalfArcMap::new(n, values)
    }

    /// Grid size of the full circle this arc belongs to.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The `n/2 + 1` arc values, node `0` first.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

fn check_grids(v: &HalfArcMap, u: &CircleMap) -> Result<(), SurgeryError> {
    if v.n != u.n_samples() {
        return Err(SurgeryError::GridMismatch { arc_n: v.n, map_n: u.n_samples() });
    }
    Ok(())
}

/// The gluing `v&u`: arc values on the closed upper arc, `u` on the open
/// lower arc.
///
/// No continuity is enforced at the seams; a mismatched seam shows up as a
/// large (grid-dependent) spectral energy of the result rather than as an
/// error.
pub fn glue_replace(v: &HalfArcMap, u: &CircleMap) -> Result<CircleMap, SurgeryError> {
    check_grids(v, u)?;
    let n = v.n;
    let mut samples = Vec::with_capacity(n);
    samples.extend_from_slice(&v.values);
    samples.extend_from_slice(&u.samples()[n / 2 + 1..]);
    Ok(CircleMap::from_samples(samples, true)?)
}

/// The gluing `v#u`: arc values on the closed upper arc, the reflection
/// `θ ↦ u(−θ)` on the open lower arc.
///
/// On the grid the reflection is exact: lower node `j` receives the sample
/// of `u` at node `n − j`.
pub fn glue_reflect(v: &HalfArcMap, u: &CircleMap) -> Result<CircleMap, SurgeryError> {
    check_grids(v, u)?;
    let n = v.n;
    let mut samples = Vec::with_capacity(n);
    samples.extend_from_slice(&v.values);
    for j in n / 2 + 1..n {
        samples.push(u.samples()[n - j]);
    }
    Ok(CircleMap::from_samples(samples, true)?)
}

/// Evaluates `(deg(v&u), deg(u), deg(v#u))` and verifies the additivity law
/// `deg(v&u) = deg(u) + deg(v#u)`.
///
/// All three degrees use the Fourier route with the resolution guard; an
/// unresolved degree propagates as [`SurgeryError::Degree`], and a violation
/// of the law on resolved degrees is reported as
/// [`SurgeryError::AdditivityViolation`] instead of being returned.
pub fn degree_additivity_check(
    v: &HalfArcMap,
    u: &CircleMap,
) -> Result<(i64, i64, i64), SurgeryError> {
    let glued = degree(&glue_replace(v, u)?, DegreeMethods::fourier_only())?.rounded;
    let base = degree(u, DegreeMethods::fourier_only())?.rounded;
    let reflected = degree(&glue_reflect(v, u)?, DegreeMethods::fourier_only())?.rounded;
    if glued != base + reflected {
        return Err(SurgeryError::AdditivityViolation { glued, base, reflected });
    }
    Ok((glued, base, reflected))
}
