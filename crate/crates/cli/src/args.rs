use std::path::PathBuf;

use blockcs::bounds::NoiseModel;
use blockcs::experiments::presets::Figure;
use blockcs::experiments::SolverMode;
use blockcs::Normalization;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "blockcs", version, about = "Block-sparse recovery by l2/l1 - alpha l2 minimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Penalized,
    Constrained,
}

impl From<ModeArg> for SolverMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Penalized => SolverMode::Penalized,
            ModeArg::Constrained => SolverMode::Constrained,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    L2,
    Dantzig,
}

impl From<ModelArg> for NoiseModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::L2 => NoiseModel::L2,
            ModelArg::Dantzig => NoiseModel::DantzigSelector,
        }
    }
}

fn parse_figure(s: &str) -> Result<Figure, String> {
    s.parse().map_err(|_| "expected one of 1a, 1b, 2a, 2b, 3a, 3b, 4".to_string())
}

fn parse_normalization(s: &str) -> Result<Normalization, String> {
    s.parse().map_err(|_| "expected raw, unit-columns or block-orthonormal".to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block and classical coherence of a matrix, with recovery-condition verdicts.
    Analyze {
        matrix: PathBuf,
        #[arg(long, short = 'd')]
        block_size: usize,
        /// Normalize the matrix before analysis.
        #[arg(long, default_value = "raw", value_parser = parse_normalization)]
        normalization: Normalization,
    },
    /// Stable-recovery error bound for given parameters.
    Bound {
        #[arg(long, value_enum, default_value = "l2")]
        model: ModelArg,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alpha: f64,
        /// Block mutual coherence.
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        eps: f64,
        /// Defaults to `eps`.
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Recover a block-sparse vector from a matrix and measurements.
    Solve {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, short = 'd')]
        block_size: usize,
        #[arg(long, value_enum, default_value = "constrained")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0.8)]
        alpha: f64,
        /// Penalty weight for the penalized program.
        #[arg(long)]
        lambda: Option<f64>,
        /// Residual radius for the constrained program.
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Write the estimate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a recovery sweep and write CSV (and optionally SVG).
    Experiment {
        /// Experiment spec JSON; omit to use the preset of `--figure`.
        spec: Option<PathBuf>,
        #[arg(long, value_parser = parse_figure)]
        figure: Option<Figure>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        svg: bool,
        /// Use the full-size preset (128 x 1024) instead of 64 x 256.
        #[arg(long)]
        paper_scale: bool,
        /// Override the number of trials per point.
        #[arg(long)]
        trials: Option<usize>,
        /// Print the effective spec as JSON and exit.
        #[arg(long)]
        dump_spec: bool,
    },
    /// Coherence-based and RIC-based bounds on delta_2s for s = 1..s-max.
    Conditions {
        #[arg(long)]
        s_max: usize,
        #[arg(long, short = 'd', default_value_t = 1)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
