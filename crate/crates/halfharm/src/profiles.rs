//! Borderline regularity demos: circle maps whose membership in the
//! half-integer energy space is decided by logarithmic hairs.
//!
//! Two real profiles on the line are pulled back to the circle through the
//! south-pole chart `x = Π₋(e^{iθ}) = cosθ/(1 + sinθ)` and exponentiated to
//! phases:
//!
//! * `sqrt_log`: `φ(x) = (log 1/|x|)^{-1/2}` near 0 — continuous, finite
//!   seminorm; truncating it to one side of 0 makes the seminorm diverge.
//! * `loglog`: `ψ(x) = log log 1/|x|` near 0 — unbounded, yet with finite
//!   seminorm.
//!
//! The demo quantity is a truncated grid seminorm: the double sum
//! `(1/π)·(2π/n)²·Σ_{j≠l} |u_j − u_l|²/|e^{iθ_j} − e^{iθ_l}|²` over the
//! half-offset grid `θ_j = 2π(j + 1/2)/n`, which blinds the sum to scales
//! below the grid. As the grid refines dyadically the sum converges for
//! members of the space and keeps climbing for non-members.
//!
//! These vectors are deliberately *not* [`crate::CircleMap`]s: the offset
//! grid dodges both the singular point `i` and the chart pole `−i`, and no
//! spectral machinery is involved.

use alloc::vec::Vec;

use num_complex::Complex64;
// Used by the no_std build; the test build links std and shadows it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::TWO_PI;

/// Radius below which the defining formulas hold exactly.
pub const PROFILE_INNER: f64 = 0.25;

/// Which borderline profile to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// `(log 1/|x|)^{-1/2}`: continuous, in the space; its one-sided cut is
    /// not.
    SqrtLog,
    /// `log log 1/|x|`: unbounded, still in the space.
    LogLog,
}

impl ProfileKind {
    /// Radius where the support ends; the profile fades smoothly to zero
    /// between [`PROFILE_INNER`] and this.
    pub fn outer(self) -> f64 {
        match self {
            ProfileKind::SqrtLog => 0.5,
            ProfileKind::LogLog => 1.0,
        }
    }
}

/// Quintic fade from 1 at `t = 0` to 0 at `t = 1`, flat at both ends.
fn smooth_fade(t: f64) -> f64 {
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
    }
}

/// The real profile on the line. Even in `x`, supported in
/// `|x| ≤ kind.outer()`, given by the defining formula inside
/// [`PROFILE_INNER`] and faded smoothly in between.
pub fn profile_value(kind: ProfileKind, x: f64) -> f64 {
    let r = x.abs();
    let outer = kind.outer();
    if r >= outer {
        return 0.0;
    }
    let formula = |r: f64| -> f64 {
        match kind {
            ProfileKind::SqrtLog => {
                if r == 0.0 {
                    0.0
                } else {
                    1.0 / (1.0 / r).ln().sqrt()
                }
            }
            ProfileKind::LogLog => (1.0 / r).ln().ln(),
        }
    };
    if r <= PROFILE_INNER {
        formula(r)
    } else {
        let t = (r - PROFILE_INNER) / (outer - PROFILE_INNER);
        let fade = smooth_fade(t);
        if fade == 0.0 {
            // Avoid evaluating loglog at the support edge, where the raw
            // formula is singular but the faded product tends to 0.
            0.0
        } else {
            fade * formula(r)
        }
    }
}

/// Half-offset grid angle `2π(j + 1/2)/n`; no node hits the singular point
/// `θ = π/2` or the chart pole `θ = 3π/2`.
pub fn offset_theta(j: usize, n: usize) -> f64 {
    TWO_PI * (j as f64 + 0.5) / n as f64
}

/// The chart coordinate `Π₋(e^{iθ}) = cosθ/(1 + sinθ)`.
pub fn pullback_coordinate(theta: f64) -> f64 {
    theta.cos() / (1.0 + theta.sin())
}

/// Samples `e^{i·profile(Π₋(e^{iθ}))}` on the half-offset grid.
pub fn profile_trace(kind: ProfileKind, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let x = pullback_coordinate(offset_theta(j, n));
            Complex64::from_polar(1.0, profile_value(kind, x))
        })
        .collect()
}

/// The one-sided truncation: the trace with every node on the `x > 0` side
/// of the singular point replaced by the constant 1.
pub fn cut_trace(kind: ProfileKind, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let x = pullback_coordinate(offset_theta(j, n));
            if x > 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, profile_value(kind, x))
            }
        })
        .collect()
}

/// Truncated grid seminorm of half-offset-grid samples:
/// `(1/π)·(2π/n)²·Σ_{j≠l} |u_j − u_l|²/|e^{iθ_j} − e^{iθ_l}|²`.
///
/// For maps in the space this converges under dyadic refinement to the
/// squared Gagliardo seminorm (twice the spectral energy); outside the space
/// it grows without bound as the grid resolves ever finer scales.
pub fn grid_seminorm(samples: &[Complex64]) -> f64 {
    let n = samples.len();
    let mut sum = 0.0;
    // |e^{iθ_j} − e^{iθ_l}|² = 4 sin²(π(j−l)/n) depends only on j − l.
    let mut inv_chord_sq = Vec::with_capacity(n);
    inv_chord_sq.push(0.0);
    for d in 1..n {
        let s = (core::f64::consts::PI * d as f64 / n as f64).sin();
        inv_chord_sq.push(1.0 / (4.0 * s * s));
    }
    for j in 0..n {
        for l in (j + 1)..n {
            sum += (samples[j] - samples[l]).norm_sqr() * inv_chord_sq[l - j];
        }
    }
    let h = TWO_PI / n as f64;
    2.0 * sum * h * h / core::f64::consts::PI
}

/// One refinement level of the demo.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileScanRow {
    /// Grid size of this level.
    pub n: usize,
    /// Truncated seminorm of the full profile trace.
    pub seminorm_full: f64,
    /// Truncated seminorm of the one-sided cut trace.
    pub seminorm_cut: f64,
}

/// Runs the truncated seminorm at each grid size.
pub fn profile_scan(kind: ProfileKind, levels: &[usize]) -> Vec<ProfileScanRow> {
    levels
        .iter()
        .map(|&n| ProfileScanRow {
            n,
            seminorm_full: grid_seminorm(&profile_trace(kind, n)),
            seminorm_cut: grid_seminorm(&cut_trace(kind, n)),
        })
        .collect()
}

/// The default dyadic refinement ladder for the demo.
pub fn default_levels() -> Vec<usize> {
    alloc::vec![256, 512, 1024, 2048]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::stereo_south;
    use crate::spectral::CircleMap;

    #[test]
    fn chart_matches_the_conformal_module() {
        let n = 64;
        for j in 0..n {
            let theta = offset_theta(j, n);
            let p = Complex64::from_polar(1.0, theta);
            let direct = pullback_coordinate(theta);
            let via_chart = stereo_south(p).unwrap();
            assert!((direct - via_chart).abs() < 1e-12);
        }
    }

    #[test]
    fn profiles_match_their_formulas_inside_the_core() {
        assert!((profile_value(ProfileKind::SqrtLog, 0.1) - 1.0 / 0.1f64.recip().ln().sqrt()).abs() < 1e-15);
        assert!((profile_value(ProfileKind::LogLog, -0.1) - 0.1f64.recip().ln().ln()).abs() < 1e-15);
        assert_eq!(profile_value(ProfileKind::SqrtLog, 0.0), 0.0);
        assert_eq!(profile_value(ProfileKind::SqrtLog, 0.6), 0.0);
        assert_eq!(profile_value(ProfileKind::LogLog, 1.0), 0.0);
        // Continuity across the fade boundaries.
        for kind in [ProfileKind::SqrtLog, ProfileKind::LogLog] {
            let inner = PROFILE_INNER;
            assert!((profile_value(kind, inner - 1e-9) - profile_value(kind, inner + 1e-9)).abs() < 1e-6);
            let outer = kind.outer();
            assert!(profile_value(kind, outer - 1e-9).abs() < 1e-6);
        }
    }

    #[test]
    fn seminorm_agrees_with_spectral_energy_on_a_smooth_map() {
        // On a band-limited map the truncated double sum reproduces twice
        // the spectral energy once the grid resolves the band.
        let n = 1024;
        let samples: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, 0.7 * (3.0 * offset_theta(j, n)).sin()))
            .collect();
        let s = grid_seminorm(&samples);
        // The same map on the standard grid, through the spectral route.
        let u = CircleMap::from_fn(n, true, |t| {
            Complex64::from_polar(1.0, 0.7 * (3.0 * t).sin())
        })
        .unwrap();
        let e2 = 2.0 * u.spectral_energy();
        assert!(
            (s - e2).abs() < 0.02 * e2,
            "double sum {s} vs twice spectral energy {e2}"
        );
    }

    #[test]
    fn full_profiles_settle_under_refinement() {
        // Both full profiles converge: every dyadic refinement moves the
        // truncated seminorm by less than 5% of its value.
        for kind in [ProfileKind::SqrtLog, ProfileKind::LogLog] {
            let rows = profile_scan(kind, &default_levels());
            for w in rows.windows(2) {
                let step = (w[1].seminorm_full - w[0].seminorm_full) / w[1].seminorm_full;
                assert!(
                    step.abs() < 0.05,
                    "{kind:?} full step {step} between n {} and {}",
                    w[0].n,
                    w[1].n
                );
            }
        }
    }

    #[test]
    fn one_sided_cut_keeps_climbing() {
        // The cut continuous profile leaves the space: its truncated
        // seminorm climbs at every refinement and the increments refuse to
        // collapse, while the full profile's increments die geometrically.
        let rows = profile_scan(ProfileKind::SqrtLog, &default_levels());
        let mut cut_inc = Vec::new();
        let mut full_inc = Vec::new();
        for w in rows.windows(2) {
            assert!(
                w[1].seminorm_cut > w[0].seminorm_cut,
                "cut seminorm fell between n {} and {}",
                w[0].n,
                w[1].n
            );
            cut_inc.push(w[1].seminorm_cut - w[0].seminorm_cut);
            full_inc.push(w[1].seminorm_full - w[0].seminorm_full);
        }
        let cut_persistence = cut_inc.last().unwrap() / cut_inc[0];
        let full_persistence = full_inc.last().unwrap() / full_inc[0];
        assert!(cut_persistence >= 0.6, "cut increments collapsed: {cut_persistence}");
        assert!(full_persistence <= 0.45, "full increments persist: {full_persistence}");
        for (c, f) in cut_inc.iter().zip(&full_inc) {
            assert!(c > &(2.0 * f), "cut increment {c} not dominating full increment {f}");
        }
    }
}
