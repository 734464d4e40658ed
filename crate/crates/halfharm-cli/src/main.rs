use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use halfharm::ProfileKind;
use halfharm_cli::commands::{self, UnattainedOutcome};
use halfharm_cli::csvio::{render_csv, write_output, write_plot_data};
use halfharm_cli::ExperimentConfig;

#[derive(Parser, Debug)]
#[command(
    name = "halfharm",
    version,
    about = "Spectral experiments for half-harmonic circle maps",
    long_about = "Numerical experiments around the fractional Dirichlet energy of \
circle-valued maps: Blaschke energy floors, bubble insertion, constrained \
minimization over degree classes, energy concentration, and borderline \
regularity profiles. Every command prints a CSV table (or writes it with \
--out) and is deterministic for a fixed seed."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Grid size, a power of two of at least 64. Defaults to 2048 for
    /// bubble-sweep and unattained-class, 512 otherwise.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Residual tolerance for the constrained descent.
    #[arg(long, global = true, default_value_t = 1e-4)]
    tol: f64,

    /// Iteration budget for the constrained descent.
    #[arg(long, global = true, default_value_t = 20_000)]
    max_iter: usize,

    /// Seed for every randomized construction.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Write the CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Next to --out, also write one (x, y) pair file per numeric column.
    #[arg(long, global = true)]
    plot_data: bool,

    /// Worker threads for the sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random degree-k Blaschke traces and their distance to the 2πk floor.
    BlaschkeEnergy {
        /// Largest pole count; one row per k = 1..=k_max.
        #[arg(long, default_value_t = 5)]
        k_max: usize,
    },
    /// Insert one bubble into the g_λ trace at several scales ε.
    BubbleSweep {
        /// Boundary datum parameter.
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Bubble scales ε (repeatable).
        #[arg(
            long = "eps",
            num_args = 1..,
            default_values_t = vec![0.05, 0.075, 0.1, 0.125, 0.15, 0.2]
        )]
        eps: Vec<f64>,
    },
    /// Constrained minima in classes 0 and 1 across a λ grid.
    LambdaSweep {
        /// λ values (repeatable); defaults to 0.25..8 in 30 log steps.
        #[arg(long = "lambda", num_args = 1..)]
        lambda: Vec<f64>,
    },
    /// Build a low-energy class-k competitor and watch descent leave the class.
    UnattainedClass {
        /// Boundary datum parameter.
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Target degree class (at least 2).
        #[arg(long, default_value_t = 2)]
        k: i64,
        /// Half-width of each phase dent.
        #[arg(long, default_value_t = 0.05)]
        rho: f64,
        /// Bubble scale at each dent.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
    },
    /// Sample g_λ at fixed resolution down a decreasing λ sequence.
    ConcentrationDemo {
        /// λ sequence, strictly decreasing (repeatable); has a default.
        #[arg(long = "lambda", num_args = 1..)]
        lambda: Vec<f64>,
    },
    /// Truncated-seminorm scan of a borderline-regularity profile.
    Pathological {
        /// Which profile to scan.
        #[arg(long, value_enum)]
        profile: Profile,
        /// Dyadic refinement ladder (repeatable); defaults to 256..2048.
        #[arg(long = "levels", num_args = 1..)]
        levels: Vec<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Profile {
    /// Inverse-square-root-log profile: bounded, borderline trace.
    SqrtLog,
    /// Iterated-log profile: unbounded with finite energy.
    LogLog,
}

impl From<Profile> for ProfileKind {
    fn from(p: Profile) -> Self {
        match p {
            Profile::SqrtLog => ProfileKind::SqrtLog,
            Profile::LogLog => ProfileKind::LogLog,
        }
    }
}

/// Header, CSV rows, and an optional (header, rows) override for the
/// plot-data pair files when the CSV's own first column is not numeric.
type CommandOutput =
    (&'static [&'static str], Vec<Vec<String>>, Option<(Vec<&'static str>, Vec<Vec<String>>)>);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is a
            // usage error.
            use clap::error::ErrorKind;
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(2),
        Ok(false) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

/// Executes the chosen command; `Ok(true)` means the CSV was written but at
/// least one row is flagged as non-converged.
fn run(cli: Cli) -> anyhow::Result<bool> {
    if cli.plot_data && cli.out.is_none() {
        bail!("--plot-data needs --out to know where the pair files go");
    }
    if let Some(workers) = cli.workers {
        if workers == 0 {
            bail!("--workers must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .context("building the worker pool")?;
    }
    let n = cli.n.unwrap_or(match cli.command {
        Command::BubbleSweep { .. } | Command::UnattainedClass { .. } => 2048,
        _ => 512,
    });
    let cfg = ExperimentConfig {
        n,
        tol_residual: cli.tol,
        max_iter: cli.max_iter,
        seed: cli.seed,
    };
    cfg.validate()?;

    let mut flagged = false;
    let (header, rows, plot): CommandOutput =
        match cli.command {
            Command::BlaschkeEnergy { k_max } => {
                let rows = commands::blaschke_energy(k_max, &cfg)?;
                (commands::BLASCHKE_HEADER, commands::blaschke_csv(&rows), None)
            }
            Command::BubbleSweep { lambda, eps } => {
                let rows = commands::bubble_sweep(lambda, &eps, &cfg)?;
                (commands::BUBBLE_HEADER, commands::bubble_csv(&rows), None)
            }
            Command::LambdaSweep { lambda } => {
                let grid = if lambda.is_empty() {
                    commands::default_lambda_grid()
                } else {
                    lambda
                };
                let rows = commands::lambda_sweep(&grid, &cfg)?;
                let stuck: Vec<f64> =
                    rows.iter().filter(|r| !r.converged).map(|r| r.lambda).collect();
                if !stuck.is_empty() {
                    flagged = true;
                    eprintln!(
                        "note: descent did not meet tolerance within budget at lambda = {stuck:?}"
                    );
                }
                (commands::LAMBDA_HEADER, commands::lambda_csv(&rows), None)
            }
            Command::UnattainedClass { lambda, k, rho, eps } => {
                let UnattainedOutcome { rows, result, .. } =
                    commands::unattained_class(lambda, k, rho, eps, &cfg)?;
                if !result.converged {
                    flagged = true;
                    eprintln!("note: descent did not meet tolerance within budget");
                }
                let csv = commands::unattained_csv(&rows);
                // The event column is text; plot pairs use iteration as x.
                let plot_rows: Vec<Vec<String>> =
                    csv.iter().map(|r| r[1..].to_vec()).collect();
                (
                    commands::UNATTAINED_HEADER,
                    csv,
                    Some((vec!["iteration", "degree", "energy"], plot_rows)),
                )
            }
            Command::ConcentrationDemo { lambda } => {
                let seq = if lambda.is_empty() {
                    commands::default_lambda_sequence()
                } else {
                    lambda
                };
                let rows = commands::concentration_demo(&seq, &cfg)?;
                (commands::CONCENTRATION_HEADER, commands::concentration_csv(&rows), None)
            }
            Command::Pathological { profile, levels } => {
                let levels = if levels.is_empty() {
                    halfharm::default_levels()
                } else {
                    levels
                };
                let rows = commands::pathological(profile.into(), &levels)?;
                (commands::PATHOLOGICAL_HEADER, commands::pathological_csv(&rows), None)
            }
        };

    let csv = render_csv(header, &rows);
    write_output(cli.out.as_deref(), &csv)?;
    if cli.plot_data {
        let out = cli.out.as_ref().expect("checked above");
        let written = match &plot {
            Some((plot_header, plot_rows)) => write_plot_data(out, plot_header, plot_rows)?,
            None => write_plot_data(out, header, &rows)?,
        };
        for path in written {
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(flagged)
}
