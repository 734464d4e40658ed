//! The experiment commands: each builds its rows through the library and
//! returns typed records; CSV conversion is a separate, thin step.

use anyhow::{anyhow, bail, Context};
use rayon::prelude::*;

use halfharm::{
    blaschke_trace, bubble_insert, degree, g_lambda_trace, minimize_in_class, stereo_north,
    stereo_north_inv, ArcConstraint, BlaschkeParams, BubbleParams, CircleMap, Complex64,
    DegreeMethods, LambdaDatum, MinimizeResult, ProfileKind, ProfileScanRow, TWO_PI,
};
use rand::Rng;

use crate::corpus::corpus_rng;
use crate::csvio::{fmt_float, fmt_int};
use crate::ExperimentConfig;

// ── blaschke-energy ──────────────────────────────────────────────────

/// One Blaschke product per pole count, with its measured energy.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeRow {
    pub k: usize,
    pub energy: f64,
    pub degree: i64,
    /// energy − 2πk: the distance above the class-k floor.
    pub deviation: f64,
}

/// Builds seeded random Blaschke traces for k = 1..=k_max and measures the
/// energy floor 2πk.
pub fn blaschke_energy(k_max: usize, cfg: &ExperimentConfig) -> anyhow::Result<Vec<BlaschkeRow>> {
    if k_max < 1 {
        bail!("k_max must be at least 1, got {k_max}");
    }
    let mut rng = corpus_rng(cfg.seed);
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let theta0 = rng.gen_range(0.0..TWO_PI);
        let conjugated = rng.gen_bool(0.5);
        let poles: Vec<Complex64> = (0..k)
            .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(0.35..2.5)))
            .collect();
        let params = BlaschkeParams::new(theta0, poles, conjugated)
            .map_err(|e| anyhow!("blaschke parameters: {e}"))?;
        let trace = blaschke_trace(&params, cfg.n).map_err(|e| anyhow!("blaschke trace: {e}"))?;
        let energy = trace.spectral_energy();
        let deg = degree(&trace, DegreeMethods::fourier_only())
            .map_err(|e| anyhow!("blaschke degree at k = {k}: {e}"))?
            .rounded;
        rows.push(BlaschkeRow { k, energy, degree: deg, deviation: energy - TWO_PI * k as f64 });
    }
    Ok(rows)
}

pub const BLASCHKE_HEADER: &[&str] = &["k", "energy", "degree", "deviation"];

pub fn blaschke_csv(rows: &[BlaschkeRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                format!("{}", r.k),
                fmt_float(r.energy),
                fmt_int(r.degree),
                fmt_float(r.deviation),
            ]
        })
        .collect()
}

// ── bubble-sweep ─────────────────────────────────────────────────────

/// One bubble insertion at a given scale.
#[derive(Debug, Clone, PartialEq)]
pub struct BubbleRow {
    pub eps: f64,
    pub e_before: f64,
    pub e_after: f64,
    /// E(after) − E(before) − 2π: the strict-insertion margin.
    pub gap_minus_2pi: f64,
    pub degree_before: i64,
    pub degree_after: i64,
}

/// Inserts a bubble at the south-pole node of the g_λ trace at each ε.
pub fn bubble_sweep(
    lambda: f64,
    eps_list: &[f64],
    cfg: &ExperimentConfig,
) -> anyhow::Result<Vec<BubbleRow>> {
    if eps_list.is_empty() {
        bail!("the sweep needs at least one eps");
    }
    let datum = LambdaDatum::new(lambda).map_err(|e| anyhow!("lambda datum: {e}"))?;
    let u = g_lambda_trace(&datum, cfg.n).map_err(|e| anyhow!("boundary trace: {e}"))?;
    let node = 3 * cfg.n / 4;
    let e_before = u.spectral_energy();
    let degree_before = degree(&u, DegreeMethods::fourier_only())
        .map_err(|e| anyhow!("degree before insertion: {e}"))?
        .rounded;
    let mut rows = eps_list
        .par_iter()
        .map(|&eps| -> anyhow::Result<BubbleRow> {
            let params = BubbleParams::probe(&u, node, eps)
                .map_err(|e| anyhow!("probe at eps = {eps}: {e}"))?;
            let v = bubble_insert(&u, &params).map_err(|e| anyhow!("insert at eps = {eps}: {e}"))?;
            let e_after = v.spectral_energy();
            let degree_after = degree(&v, DegreeMethods::fourier_only())
                .map_err(|e| anyhow!("degree after insertion at eps = {eps}: {e}"))?
                .rounded;
            Ok(BubbleRow {
                eps,
                e_before,
                e_after,
                gap_minus_2pi: e_after - e_before - TWO_PI,
                degree_before,
                degree_after,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.eps.total_cmp(&b.eps));
    Ok(rows)
}

pub const BUBBLE_HEADER: &[&str] =
    &["eps", "E_before", "E_after", "gap_minus_2pi", "degree_before", "degree_after"];

pub fn bubble_csv(rows: &[BubbleRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                fmt_float(r.eps),
                fmt_float(r.e_before),
                fmt_float(r.e_after),
                fmt_float(r.gap_minus_2pi),
                fmt_int(r.degree_before),
                fmt_int(r.degree_after),
            ]
        })
        .collect()
}

/// Least-squares slope of gap vs ε² over the sweep, with intercept.
pub fn gap_slope(rows: &[BubbleRow]) -> f64 {
    let m = rows.len() as f64;
    let sx: f64 = rows.iter().map(|r| r.eps * r.eps).sum();
    let sy: f64 = rows.iter().map(|r| r.gap_minus_2pi).sum();
    let sxx: f64 = rows.iter().map(|r| (r.eps * r.eps) * (r.eps * r.eps)).sum();
    let sxy: f64 = rows.iter().map(|r| (r.eps * r.eps) * r.gap_minus_2pi).sum();
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

// ── lambda-sweep ─────────────────────────────────────────────────────

/// Constrained minima in classes 0 and 1 at one λ.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaRow {
    pub lambda: f64,
    pub e_class0: f64,
    pub e_class1: f64,
    pub residual0: f64,
    pub residual1: f64,
    /// Whether both minimizations met the residual tolerance in budget.
    pub converged: bool,
}

/// The default λ grid: 0.25 to 8 in 30 logarithmic steps.
pub fn default_lambda_grid() -> Vec<f64> {
    let (lo, hi, steps) = (0.25f64, 8.0f64, 30usize);
    (0..steps)
        .map(|i| lo * (hi / lo).powf(i as f64 / (steps - 1) as f64))
        .collect()
}

/// Minimizes the energy in classes 0 and 1 under the g_λ boundary data for
/// every λ in the grid.
pub fn lambda_sweep(grid: &[f64], cfg: &ExperimentConfig) -> anyhow::Result<Vec<LambdaRow>> {
    if grid.iter().any(|&l| !(l > 0.0)) {
        bail!("every lambda must be positive");
    }
    let mut rows = grid
        .par_iter()
        .map(|&lambda| -> anyhow::Result<LambdaRow> {
            let datum = LambdaDatum::new(lambda).map_err(|e| anyhow!("lambda datum: {e}"))?;
            let constraint = ArcConstraint::g_lambda(&datum, cfg.n)
                .map_err(|e| anyhow!("constraint at lambda = {lambda}: {e}"))?;
            let r0 = minimize_in_class(&constraint, 0, cfg.minimize_config())
                .map_err(|e| anyhow!("class-0 descent at lambda = {lambda}: {e}"))?;
            let r1 = minimize_in_class(&constraint, 1, cfg.minimize_config())
                .map_err(|e| anyhow!("class-1 descent at lambda = {lambda}: {e}"))?;
            Ok(LambdaRow {
                lambda,
                e_class0: r0.energy,
                e_class1: r1.energy,
                residual0: r0.residual,
                residual1: r1.residual,
                converged: r0.converged && r1.converged,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    Ok(rows)
}

pub const LAMBDA_HEADER: &[&str] =
    &["lambda", "E_class0", "E_class1", "residual0", "residual1"];

pub fn lambda_csv(rows: &[LambdaRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                fmt_float(r.lambda),
                fmt_float(r.e_class0),
                fmt_float(r.e_class1),
                fmt_float(r.residual0),
                fmt_float(r.residual1),
            ]
        })
        .collect()
}

/// The first grid λ where the class-0 minimum exceeds 2π — an estimate of
/// the crossing scale, not a proven constant.
pub fn crossing_estimate(rows: &[LambdaRow]) -> Option<f64> {
    rows.iter().find(|r| r.e_class0 > TWO_PI).map(|r| r.lambda)
}

// ── unattained-class ─────────────────────────────────────────────────

/// One event in the multi-bubble descent trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct UnattainedRow {
    /// "competitor", "jump", or "final".
    pub event: &'static str,
    pub iteration: usize,
    pub degree: i64,
    pub energy: f64,
}

/// The full outcome: trajectory rows plus the raw descent result.
#[derive(Debug, Clone)]
pub struct UnattainedOutcome {
    pub rows: Vec<UnattainedRow>,
    pub competitor_energy: f64,
    pub result: MinimizeResult,
}

/// Smooth bump `exp(1 − 1/(1−t²))` with hard compact support.
fn bump(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - t * t)).exp()
    }
}

/// Builds the class-k competitor: the g_λ trace, phase-dented at k−1 points
/// of the free arc until the local winding turns backwards, then a bubble
/// inserted at each dent. Each insertion raises the degree by one and the
/// energy by just under 2π, landing the competitor in class k with energy
/// close to the 2πk floor. Descent from there must escape the class.
pub fn unattained_class(
    lambda: f64,
    k: i64,
    rho: f64,
    eps: f64,
    cfg: &ExperimentConfig,
) -> anyhow::Result<UnattainedOutcome> {
    if k < 2 {
        bail!("the unattained construction needs k >= 2, got {k}");
    }
    if !(rho > 0.0 && eps > 0.0) {
        bail!("rho and eps must be positive");
    }
    let n = cfg.n;
    let datum = LambdaDatum::new(lambda).map_err(|e| anyhow!("lambda datum: {e}"))?;
    let base = g_lambda_trace(&datum, n).map_err(|e| anyhow!("boundary trace: {e}"))?;
    let constraint =
        ArcConstraint::g_lambda(&datum, n).map_err(|e| anyhow!("boundary constraint: {e}"))?;

    // Dent centers spread over the free (lower) arc, clear of the seam.
    let centers: Vec<f64> = (0..k - 1)
        .map(|j| core::f64::consts::PI * (1.0 + (j as f64 + 1.0) / k as f64))
        .collect();
    // Local phase slope of the base trace bounds the dent amplitude needed
    // to turn the winding backwards.
    let slope = |theta: f64| {
        let u0 = base.eval(theta);
        let du = base.eval_derivative(theta);
        (u0.conj() * du).im
    };
    let max_slope = centers
        .iter()
        .map(|&c| slope(c).abs())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let amp = 1.1 * rho * max_slope;
    let dented: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = TWO_PI * j as f64 / n as f64;
            let mut phase = 0.0;
            for &c in &centers {
                phase -= amp * bump((theta - c) / rho);
            }
            base.samples()[j] * Complex64::from_polar(1.0, phase)
        })
        .collect();
    let mut competitor =
        CircleMap::from_samples(dented, true).map_err(|e| anyhow!("dented trace: {e}"))?;

    // Insert one backwards bubble per dent, at the node where the dent
    // turns the winding around most strongly.
    for &c in &centers {
        let lo = ((c - rho) / TWO_PI * n as f64).ceil() as usize;
        let hi = ((c + rho) / TWO_PI * n as f64).floor() as usize;
        let node = (lo..=hi)
            .min_by(|&a, &b| {
                let sa = slope_at(&competitor, a);
                let sb = slope_at(&competitor, b);
                sa.total_cmp(&sb)
            })
            .ok_or_else(|| anyhow!("dent at {c} covers no grid node; raise n or rho"))?;
        if slope_at(&competitor, node) >= 0.0 {
            bail!("dent at {c} failed to turn the winding backwards; raise rho");
        }
        let params = BubbleParams::probe(&competitor, node, eps)
            .map_err(|e| anyhow!("probe at dent {c}: {e}"))?;
        if params.orientation != -1 {
            bail!("dent at {c} did not flip the orientation");
        }
        competitor =
            bubble_insert(&competitor, &params).map_err(|e| anyhow!("insert at dent {c}: {e}"))?;
    }

    let competitor_energy = competitor.spectral_energy();
    let competitor_degree = degree(&competitor, DegreeMethods::fourier_only())
        .map_err(|e| anyhow!("competitor degree: {e}"))?
        .rounded;
    let mut rows = vec![UnattainedRow {
        event: "competitor",
        iteration: 0,
        degree: competitor_degree,
        energy: competitor_energy,
    }];

    let result = halfharm::minimize_from(&competitor, &constraint, cfg.minimize_config())
        .map_err(|e| anyhow!("descent from the competitor: {e}"))?;
    for jump in &result.class_jumps {
        rows.push(UnattainedRow {
            event: "jump",
            iteration: jump.iteration,
            degree: jump.new_degree,
            energy: jump.energy,
        });
    }
    rows.push(UnattainedRow {
        event: "final",
        iteration: result.iterations,
        degree: result.degree,
        energy: result.energy,
    });
    Ok(UnattainedOutcome { rows, competitor_energy, result })
}

fn slope_at(u: &CircleMap, node: usize) -> f64 {
    let theta = TWO_PI * node as f64 / u.n_samples() as f64;
    let u0 = u.samples()[node];
    let du = u.eval_derivative(theta);
    (u0.conj() * du).im
}

pub const UNATTAINED_HEADER: &[&str] = &["event", "iteration", "degree", "energy"];

pub fn unattained_csv(rows: &[UnattainedRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.event.to_string(),
                format!("{}", r.iteration),
                fmt_int(r.degree),
                fmt_float(r.energy),
            ]
        })
        .collect()
}

// ── concentration-demo ───────────────────────────────────────────────

/// One λ of the concentration demo.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationRow {
    pub lambda: f64,
    /// None when the degree guard refuses to round.
    pub resolved_degree: Option<i64>,
    pub energy: f64,
}

/// The default sequence: dyadic decay to well below grid scale at n = 512,
/// ending in a fully collapsed spike.
pub fn default_lambda_sequence() -> Vec<f64> {
    vec![1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 1e-4]
}

/// Samples the g_λ family at fixed resolution down a decreasing λ sequence.
///
/// The grid is offset by half a node (a rotation of the datum, an exact
/// symmetry of the family), because every g_λ fixes the north pole: on the
/// plain grid that fixed point pins the shrinking transition to a sample
/// node and the grid never loses it. Every member truly has energy 2π and
/// degree 1; the rows report what the fixed grid still sees. Once the
/// transition falls below grid scale the degree guard refuses to round
/// (`NA`) or resolves to 0, and the measured energy loses the 2π quantum.
pub fn concentration_demo(
    seq: &[f64],
    cfg: &ExperimentConfig,
) -> anyhow::Result<Vec<ConcentrationRow>> {
    if seq.is_empty() {
        bail!("the demo needs at least one lambda");
    }
    if seq.iter().any(|&l| !(l > 0.0)) {
        bail!("every lambda must be positive");
    }
    if seq.windows(2).any(|w| w[1] >= w[0]) {
        bail!("the lambda sequence must be strictly decreasing");
    }
    let shift = core::f64::consts::PI / cfg.n as f64;
    seq.par_iter()
        .map(|&lambda| -> anyhow::Result<ConcentrationRow> {
            LambdaDatum::new(lambda).map_err(|e| anyhow!("lambda datum: {e}"))?;
            let trace = CircleMap::from_fn(cfg.n, true, |theta| {
                let z = Complex64::from_polar(1.0, theta + shift);
                let x = stereo_north(z).expect("the offset grid avoids the pole");
                stereo_north_inv(lambda * x)
            })
            .map_err(|e| anyhow!("trace at {lambda}: {e}"))?;
            let energy = trace.spectral_energy();
            let resolved_degree = degree(&trace, DegreeMethods::fourier_only())
                .map(|r| r.rounded)
                .ok();
            Ok(ConcentrationRow { lambda, resolved_degree, energy })
        })
        .collect::<anyhow::Result<Vec<_>>>()
}

pub const CONCENTRATION_HEADER: &[&str] = &["lambda", "resolved_degree", "energy"];

pub fn concentration_csv(rows: &[ConcentrationRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                fmt_float(r.lambda),
                r.resolved_degree.map_or_else(|| "NA".to_string(), fmt_int),
                fmt_float(r.energy),
            ]
        })
        .collect()
}

// ── pathological ─────────────────────────────────────────────────────

/// Runs the truncated-seminorm scan after validating the dyadic ladder.
pub fn pathological(kind: ProfileKind, levels: &[usize]) -> anyhow::Result<Vec<ProfileScanRow>> {
    if levels.len() < 2 {
        bail!("need at least two refinement levels");
    }
    if levels[0] < 16 {
        bail!("the coarsest level must have at least 16 nodes");
    }
    for w in levels.windows(2) {
        if w[1] != 2 * w[0] {
            bail!("levels must refine dyadically: {} does not double {}", w[1], w[0]);
        }
    }
    let rows: Vec<ProfileScanRow> = levels
        .par_iter()
        .map(|&n| {
            halfharm::profile_scan(kind, &[n])
                .pop()
                .context("profile scan returned no row")
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(rows)
}

pub const PATHOLOGICAL_HEADER: &[&str] = &["level", "seminorm_full", "seminorm_cut"];

pub fn pathological_csv(rows: &[ProfileScanRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![format!("{}", r.n), fmt_float(r.seminorm_full), fmt_float(r.seminorm_cut)]
        })
        .collect()
}
