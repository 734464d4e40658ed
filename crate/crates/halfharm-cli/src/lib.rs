//! Experiment driver around the `halfharm` library: seeded map corpora,
//! parameter sweeps, and CSV emission for every quantitative claim the
//! library's machinery supports.
//!
//! The binary in this crate is a thin argument-parsing shell; all behavior
//! lives here so tests can call it directly.

// Guards written as `!(x > 0.0)` are NaN-rejecting on purpose; the
// un-negated form would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod corpus;
pub mod csvio;

use anyhow::bail;

/// Shared experiment knobs, resolved from the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    /// Grid resolution; a power of two of at least 64 nodes.
    pub n: usize,
    /// Residual tolerance handed to the minimizer.
    pub tol_residual: f64,
    /// Iteration budget handed to the minimizer.
    pub max_iter: usize,
    /// Seed for every randomized corpus.
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig { n: 512, tol_residual: 1e-4, max_iter: 20_000, seed: 7 }
    }
}

impl ExperimentConfig {
    /// Rejects grids the spectral core cannot host.
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.n < 64 || !self.n.is_power_of_two() {
            bail!("--n must be a power of two >= 64, got {}", self.n);
        }
        if !(self.tol_residual > 0.0) {
            bail!("--tol must be positive, got {}", self.tol_residual);
        }
        if self.max_iter == 0 {
            bail!("--max-iter must be positive");
        }
        Ok(())
    }

    /// The minimizer configuration these knobs describe.
    pub fn minimize_config(&self) -> halfharm::MinimizeConfig {
        halfharm::MinimizeConfig {
            max_iter: self.max_iter,
            step0: None,
            tol_residual: self.tol_residual,
        }
    }
}
