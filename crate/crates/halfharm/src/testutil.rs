//! Shared test-only helpers: seeded corpus generators and the brute-force
//! winding-number oracle the spectral degree formulas are checked against.

use alloc::vec::Vec;
use num_complex::Complex64;
// Used by the no_std build; the test build links std and shadows it.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::spectral::CircleMap;
use crate::TWO_PI;

pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smooth circle-valued map with the given winding and a random trigonometric
/// phase perturbation with 1/k^{3/2}-decaying coefficients.
pub(crate) fn random_phase_map(
    rng: &mut impl Rng,
    n: usize,
    winding: i64,
    kmax: usize,
    amp: f64,
) -> CircleMap {
    let coeffs: Vec<(f64, f64)> =
        (1..=kmax).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    CircleMap::from_fn(n, true, |t| {
        let mut phase = winding as f64 * t;
        for (k, (c, s)) in coeffs.iter().enumerate() {
            let k1 = (k + 1) as f64;
            phase += amp * (c * (k1 * t).cos() + s * (k1 * t).sin()) / k1.powf(1.5);
        }
        Complex64::from_polar(1.0, phase)
    })
    .expect("valid grid")
}

/// Smooth circle map with a random small winding.
pub(crate) fn random_smooth_circle_map(rng: &mut impl Rng, n: usize, kmax: usize) -> CircleMap {
    let winding = rng.gen_range(-2..=2);
    random_phase_map(rng, n, winding, kmax, 0.6)
}

/// Brute-force degree by phase unwrapping along the sample polyline — the
/// continuous-maps oracle, independent of every spectral formula. Fails only
/// if adjacent samples are exactly antipodal.
pub(crate) fn unwrap_degree(u: &CircleMap) -> i64 {
    let s = u.samples();
    let n = s.len();
    let mut total = 0.0;
    for j in 0..n {
        let step = (s[(j + 1) % n] / s[j]).arg();
        total += step;
    }
    let turns = total / TWO_PI;
    let rounded = turns.round();
    assert!(
        (turns - rounded).abs() < 1e-6,
        "phase unwrapping did not close up to an integer: {turns}"
    );
    rounded as i64
}
