//! Seeded synthetic instances and Monte-Carlo recovery sweeps.
//!
//! Every trial owns a ChaCha8 generator seeded from a hash of the sweep seed,
//! the data-generating coordinates of its axis point (`N`, `M`, `d`, `s`, `σ`)
//! and the trial index. Results are therefore independent of scheduling and
//! of the order in which axis points are listed, and points that differ only
//! in `α` share their random instances.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blockmodel::{BlockPartition, BlockSignal};
use crate::bounds::{theorem1_coefficient, BoundInput, BoundReport};
use crate::coherence::{block_mutual_coherence, cone_constraint_residual, Normalization, SensingMatrix};
use crate::error::{Error, Result};
use crate::solver::{solve_constrained, solve_penalized, SolverConfig, SolverResult};

pub type ExperimentRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ExperimentRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a sequence of words into one seed.
pub fn derive_seed(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x243F_6A88_85A3_08D3, |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// Block `s`-sparse signal: `s` distinct blocks chosen uniformly, filled with
/// i.i.d. standard normal entries; everything else exactly zero.
pub fn gen_block_sparse_signal<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize, s: usize) -> Result<BlockSignal> {
    if s > n {
        return Err(Error::InvalidParameter(format!(
            "block sparsity {s} exceeds the number of blocks {n}"
        )));
    }
    let partition = BlockPartition::new(n * d, d)?;
    let mut chosen = index::sample(rng, n, s).into_vec();
    chosen.sort_unstable();
    let mut values = DVector::zeros(n * d);
    for b in chosen {
        for k in 0..d {
            values[b * d + k] = rng.sample(StandardNormal);
        }
    }
    BlockSignal::new(values, partition)
}

/// `M × N` matrix with i.i.d. `N(0, 1)` entries, then `normalization` applied.
pub fn gen_gaussian_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    d: usize,
    normalization: Normalization,
) -> Result<SensingMatrix> {
    if m == 0 {
        return Err(Error::NonPositive { what: "M" });
    }
    BlockPartition::new(n, d)?;
    // filled column by column
    let entries = DMatrix::from_fn(m, n, |_, _| rng.sample(StandardNormal));
    SensingMatrix::new(entries, d)?.normalized(normalization)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoisyMeasurement {
    pub y: DVector<f64>,
    pub noise: DVector<f64>,
    /// `‖z‖₂`.
    pub eps_l2: f64,
    /// `‖Φᵀz‖∞`.
    pub eps_ds: f64,
}

/// `y = clean + z` with `z ~ N(0, σ² I)`; `σ = 0` returns `clean` unchanged.
pub fn add_noise<R: Rng + ?Sized>(
    rng: &mut R,
    clean: &DVector<f64>,
    sigma: f64,
    phi: &SensingMatrix,
) -> Result<NoisyMeasurement> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("noise sigma = {sigma} must be non-negative")));
    }
    if clean.len() != phi.rows() {
        return Err(Error::LengthMismatch {
            what: "clean measurements",
            got: clean.len(),
            expected: phi.rows(),
        });
    }
    let noise = if sigma == 0.0 {
        DVector::zeros(clean.len())
    } else {
        DVector::from_fn(clean.len(), |_, _| sigma * rng.sample::<f64, _>(StandardNormal))
    };
    Ok(NoisyMeasurement {
        y: clean + &noise,
        eps_l2: noise.norm(),
        eps_ds: phi.entries().tr_mul(&noise).amax(),
        noise,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMode {
    Penalized,
    Constrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    Block,
    Nonblock,
    Both,
}

impl Comparison {
    pub fn block(self) -> bool {
        matches!(self, Comparison::Block | Comparison::Both)
    }

    pub fn nonblock(self) -> bool {
        matches!(self, Comparison::Nonblock | Comparison::Both)
    }
}

/// Sparsity levels, either as block counts `s` or nonzero counts `K = s·d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SparsityAxis {
    #[serde(rename = "s")]
    Blocks(Vec<usize>),
    #[serde(rename = "K")]
    Entries(Vec<usize>),
}

impl SparsityAxis {
    fn values(&self) -> &[usize] {
        match self {
            SparsityAxis::Blocks(v) | SparsityAxis::Entries(v) => v,
        }
    }
}

fn default_normalization() -> Normalization {
    Normalization::BlockOrthonormal
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub d: usize,
    pub sparsity: SparsityAxis,
    pub alpha: Vec<f64>,
    /// Optional sweep over `M`; defaults to `[M]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurements: Option<Vec<usize>>,
    /// Optional sweep over `d`; defaults to `[d]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_sizes: Option<Vec<usize>>,
    pub noise_sigma: f64,
    pub trials: usize,
    pub seed: u64,
    pub solver_mode: SolverMode,
    pub comparison: Comparison,
    #[serde(default = "default_normalization")]
    pub normalization: Normalization,
    /// Solver settings; `alpha` is replaced per point and `eta` per trial.
    #[serde(default)]
    pub solver: SolverConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPoint {
    #[serde(rename = "M")]
    pub m: usize,
    pub d: usize,
    pub s: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub alpha: f64,
}

impl fmt::Display for ExperimentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M={} d={} s={} K={} alpha={}",
            self.m, self.d, self.s, self.k, self.alpha
        )
    }
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn measurement_axis(&self) -> Vec<usize> {
        self.measurements.clone().unwrap_or_else(|| vec![self.m])
    }

    pub fn block_size_axis(&self) -> Vec<usize> {
        self.block_sizes.clone().unwrap_or_else(|| vec![self.d])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.n == 0 || self.m == 0 || self.d == 0 {
            return bad("N, M and d must be positive".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return bad(format!("noise_sigma = {} must be non-negative", self.noise_sigma));
        }
        if self.alpha.is_empty() || self.sparsity.values().is_empty() {
            return bad("alpha and sparsity axes must be non-empty".into());
        }
        if let Some(a) = self.alpha.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return bad(format!("alpha = {a} outside [0, 1]"));
        }
        let ms = self.measurement_axis();
        let ds = self.block_size_axis();
        if ms.is_empty() || ds.is_empty() {
            return bad("measurement and block-size axes must be non-empty".into());
        }
        if ms.contains(&0) {
            return bad("every M must be positive".into());
        }
        for &d in &ds {
            if d == 0 || !self.n.is_multiple_of(d) {
                return bad(format!("block size {d} does not divide N = {}", self.n));
            }
            if self.normalization == Normalization::BlockOrthonormal {
                if let Some(&m) = ms.iter().find(|&&m| m < d) {
                    return bad(format!("M = {m} is smaller than block size {d}"));
                }
            }
            let n_blocks = self.n / d;
            if n_blocks < 2 {
                return bad(format!("block size {d} leaves fewer than two blocks"));
            }
            for &v in self.sparsity.values() {
                let s = match self.sparsity {
                    SparsityAxis::Blocks(_) => v,
                    SparsityAxis::Entries(_) => {
                        if !v.is_multiple_of(d) {
                            return bad(format!("K = {v} is not a multiple of d = {d}"));
                        }
                        v / d
                    }
                };
                if s == 0 || s > n_blocks {
                    return bad(format!("block sparsity {s} outside 1..={n_blocks} for d = {d}"));
                }
            }
        }
        self.solver.validate()?;
        Ok(())
    }

    /// All axis points, ordered by `d`, then `M`, then sparsity, then `α`.
    pub fn points(&self) -> Vec<ExperimentPoint> {
        let mut out = Vec::new();
        for d in self.block_size_axis() {
            for m in self.measurement_axis() {
                for &v in self.sparsity.values() {
                    let (s, k) = match self.sparsity {
                        SparsityAxis::Blocks(_) => (v, v * d),
                        SparsityAxis::Entries(_) => (v / d, v),
                    };
                    for &alpha in &self.alpha {
                        out.push(ExperimentPoint { m, d, s, k, alpha });
                    }
                }
            }
        }
        out
    }

    fn trial_seed(&self, point: &ExperimentPoint, trial_index: usize) -> u64 {
        derive_seed(&[
            self.seed,
            self.n as u64,
            point.m as u64,
            point.d as u64,
            point.s as u64,
            self.noise_sigma.to_bits(),
            trial_index as u64,
        ])
    }
}

/// Diagnostics of one recovery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Recovery {
    /// `‖x̂ − x₀‖₂ / ‖x₀‖₂`.
    pub rel_error: f64,
    /// `‖x̂ − x₀‖₂`.
    pub abs_error: f64,
    pub iterations: usize,
    pub converged: bool,
    pub data_residual: f64,
    pub objective: f64,
    pub refit: bool,
    /// Cone-constraint residual of `x̂ − x₀` on the support of `x₀`.
    pub cone_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub point: ExperimentPoint,
    pub trial_index: usize,
    pub seed: u64,
    pub mu_block: f64,
    pub eps_l2: f64,
    pub eps_ds: f64,
    pub signal_norm: f64,
    /// ℓ2-noise bound with `ε = η = ‖z‖₂`.
    pub bound: std::result::Result<BoundReport, Error>,
    pub block: Option<std::result::Result<Recovery, Error>>,
    pub nonblock: Option<std::result::Result<Recovery, Error>>,
}

impl TrialResult {
    /// A trial fails when any requested recovery errored.
    pub fn failed(&self) -> bool {
        [&self.block, &self.nonblock]
            .into_iter()
            .any(|r| matches!(r, Some(Err(_))))
    }
}

fn recover(
    phi: &SensingMatrix,
    y: &DVector<f64>,
    x0: &BlockSignal,
    mode: SolverMode,
    cfg: &SolverConfig,
    alpha: f64,
) -> Result<Recovery> {
    let result: SolverResult = match mode {
        SolverMode::Penalized => solve_penalized(phi, y, cfg)?,
        SolverMode::Constrained => solve_constrained(phi, y, cfg)?,
    };
    let diff = result.x_hat.values() - x0.values();
    let abs_error = diff.norm();
    let x0_in = x0.with_block_size(phi.block_size())?;
    let h = BlockSignal::new(diff, *phi.partition())?;
    let cone_residual = cone_constraint_residual(&h, &x0_in.support(), alpha)?;
    Ok(Recovery {
        rel_error: abs_error / x0.norm_l2(),
        abs_error,
        iterations: result.iterations,
        converged: result.converged,
        data_residual: result.data_residual,
        objective: result.objective,
        refit: result.refit,
        cone_residual,
    })
}

/// Generates `Φ`, `x₀` and `z` for one trial and recovers `x₀` with the
/// requested solvers. Solver failures are recorded, not returned.
pub fn run_trial(spec: &ExperimentSpec, point: &ExperimentPoint, trial_index: usize) -> Result<TrialResult> {
    let seed = spec.trial_seed(point, trial_index);
    let mut rng = rng_from_seed(seed);
    let n_blocks = spec.n / point.d;
    let phi = gen_gaussian_matrix(&mut rng, point.m, spec.n, point.d, spec.normalization)?;
    let x0 = gen_block_sparse_signal(&mut rng, n_blocks, point.d, point.s)?;
    let clean = phi.entries() * x0.values();
    let noisy = add_noise(&mut rng, &clean, spec.noise_sigma, &phi)?;

    let mu_block = block_mutual_coherence(&phi).map_or(f64::NAN, |r| r.mu_block);
    let bound = theorem1_coefficient(&BoundInput {
        s: point.s,
        d: point.d,
        alpha: point.alpha,
        mu_block,
        eps: noisy.eps_l2,
        eta: noisy.eps_l2,
    });

    let mut cfg = spec.solver;
    cfg.alpha = point.alpha;
    cfg.eta = noisy.eps_l2;

    let block = spec
        .comparison
        .block()
        .then(|| recover(&phi, &noisy.y, &x0, spec.solver_mode, &cfg, point.alpha));
    let nonblock = spec.comparison.nonblock().then(|| {
        let phi1 = phi.with_block_size(1)?;
        recover(&phi1, &noisy.y, &x0, spec.solver_mode, &cfg, point.alpha)
    });

    Ok(TrialResult {
        point: *point,
        trial_index,
        seed,
        mu_block,
        eps_l2: noisy.eps_l2,
        eps_ds: noisy.eps_ds,
        signal_norm: x0.norm_l2(),
        bound,
        block,
        nonblock,
    })
}

/// Averages of one recovery series at one axis point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesStats {
    pub mean_rel_error: f64,
    pub mean_abs_error: f64,
    pub successes: usize,
    pub failures: usize,
    pub converged: usize,
}

impl SeriesStats {
    fn from_trials<'a>(results: impl Iterator<Item = &'a std::result::Result<Recovery, Error>>) -> Self {
        let (mut rel, mut abs, mut ok, mut failed, mut conv) = (0.0, 0.0, 0usize, 0usize, 0usize);
        for r in results {
            match r {
                Ok(rec) => {
                    rel += rec.rel_error;
                    abs += rec.abs_error;
                    ok += 1;
                    conv += rec.converged as usize;
                }
                Err(_) => failed += 1,
            }
        }
        let denom = if ok == 0 { f64::NAN } else { ok as f64 };
        SeriesStats {
            mean_rel_error: rel / denom,
            mean_abs_error: abs / denom,
            successes: ok,
            failures: failed,
            converged: conv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub point: ExperimentPoint,
    pub trials: usize,
    pub block: Option<SeriesStats>,
    pub nonblock: Option<SeriesStats>,
    /// Mean ℓ2-noise bound over the trials where it could be evaluated.
    pub mean_bound: f64,
    pub bound_valid: usize,
    /// True when `μτ < 1/(3sd)` held in every trial.
    pub condition_ok: bool,
    pub mean_mu_block: f64,
    pub failed_trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub seed: u64,
    pub trials: usize,
    pub points: Vec<PointSummary>,
}

fn summarize(point: ExperimentPoint, trials: &[TrialResult]) -> Result<PointSummary> {
    let failed = trials.iter().filter(|t| t.failed()).count();
    if failed == trials.len() {
        return Err(Error::AllTrialsFailed {
            point: point.to_string(),
            trials: trials.len(),
        });
    }
    let block = trials[0]
        .block
        .is_some()
        .then(|| SeriesStats::from_trials(trials.iter().filter_map(|t| t.block.as_ref())));
    let nonblock = trials[0]
        .nonblock
        .is_some()
        .then(|| SeriesStats::from_trials(trials.iter().filter_map(|t| t.nonblock.as_ref())));
    let bounds: Vec<f64> = trials
        .iter()
        .filter_map(|t| t.bound.as_ref().ok().map(|b| b.bound))
        .collect();
    let mean_bound = if bounds.is_empty() {
        f64::NAN
    } else {
        bounds.iter().sum::<f64>() / bounds.len() as f64
    };
    let condition_ok = trials.iter().all(|t| {
        t.mu_block < 1.0 / (3.0 * t.point.s as f64 * t.point.d as f64)
    });
    Ok(PointSummary {
        point,
        trials: trials.len(),
        block,
        nonblock,
        mean_bound,
        bound_valid: bounds.len(),
        condition_ok,
        mean_mu_block: trials.iter().map(|t| t.mu_block).sum::<f64>() / trials.len() as f64,
        failed_trials: failed,
    })
}

/// Runs every trial of every axis point and keeps the raw trial results,
/// grouped by point in axis order.
pub fn run_trials(spec: &ExperimentSpec) -> Result<Vec<Vec<TrialResult>>> {
    spec.validate()?;
    let points = spec.points();
    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|p| (0..spec.trials).map(move |t| (p, t)))
        .collect();
    let results: Vec<TrialResult> = jobs
        .par_iter()
        .map(|&(p, t)| run_trial(spec, &points[p], t))
        .collect::<Result<_>>()?;
    let mut grouped: Vec<Vec<TrialResult>> = Vec::with_capacity(points.len());
    let mut iter = results.into_iter();
    for _ in 0..points.len() {
        grouped.push(iter.by_ref().take(spec.trials).collect());
    }
    Ok(grouped)
}

/// Sweeps the axis and averages trial results per point. Deterministic for a
/// fixed spec regardless of the thread count.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let grouped = run_trials(spec)?;
    let points = spec
        .points()
        .into_iter()
        .zip(&grouped)
        .map(|(p, trials)| summarize(p, trials))
        .collect::<Result<_>>()?;
    Ok(ExperimentResult {
        seed: spec.seed,
        trials: spec.trials,
        points,
    })
}

/// [`run_experiment`] on a dedicated pool of at most `threads` workers.
pub fn run_experiment_with_threads(spec: &ExperimentSpec, threads: usize) -> Result<ExperimentResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| run_experiment(spec))
}

pub mod presets {
    //! Sweep definitions for the recovery figures, at desk scale
    //! (`64 × 256`) by default or at the original `128 × 1024`.

    use std::fmt;
    use std::str::FromStr;

    use super::{Comparison, ExperimentSpec, SolverMode, SparsityAxis};
    use crate::coherence::Normalization;
    use crate::error::Error;
    use crate::solver::SolverConfig;

    pub const DEFAULT_SEED: u64 = 20_200_601;
    pub const DEFAULT_SIGMA: f64 = 0.01;
    pub const DEFAULT_TRIALS: usize = 50;

    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
    pub enum Figure {
        /// Error versus α, `d = 4`, `s = 8`.
        AlphaSweep,
        /// Block versus non-block error versus `K`.
        BlockVsNonblock,
        /// Bound and error versus `s`, `d = 4`.
        BoundVsSparsity,
        /// Bound and error versus `d`, `K = 16`.
        BoundVsBlockSize,
        /// Error versus α for several `d`, `K = 32`.
        AlphaByBlockSize,
        /// Error versus `K` for several `d`, `α = 0.8`.
        SparsityByBlockSize,
        /// Error versus `M` for several `d`, `K = 16`, `α = 0.8`.
        MeasurementsByBlockSize,
    }

    impl Figure {
        pub const ALL: [Figure; 7] = [
            Figure::AlphaSweep,
            Figure::BlockVsNonblock,
            Figure::BoundVsSparsity,
            Figure::BoundVsBlockSize,
            Figure::AlphaByBlockSize,
            Figure::SparsityByBlockSize,
            Figure::MeasurementsByBlockSize,
        ];

        pub fn label(self) -> &'static str {
            match self {
                Figure::AlphaSweep => "1a",
                Figure::BlockVsNonblock => "1b",
                Figure::BoundVsSparsity => "2a",
                Figure::BoundVsBlockSize => "2b",
                Figure::AlphaByBlockSize => "3a",
                Figure::SparsityByBlockSize => "3b",
                Figure::MeasurementsByBlockSize => "4",
            }
        }
    }

    impl fmt::Display for Figure {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str(self.label())
        }
    }

    impl FromStr for Figure {
        type Err = Error;

        fn from_str(s: &str) -> Result<Self, Error> {
            Figure::ALL
                .into_iter()
                .find(|f| f.label() == s)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown figure '{s}'")))
        }
    }

    fn alpha_grid(start: f64) -> Vec<f64> {
        let mut v = vec![start];
        v.extend((1..=10).map(|k| k as f64 / 10.0).filter(|&a| a > start));
        v
    }

    pub fn preset(figure: Figure, paper_scale: bool) -> ExperimentSpec {
        let (n, m) = if paper_scale { (1024, 128) } else { (256, 64) };
        let base = ExperimentSpec {
            n,
            m,
            d: 4,
            sparsity: SparsityAxis::Blocks(vec![8]),
            alpha: vec![0.8],
            measurements: None,
            block_sizes: None,
            noise_sigma: DEFAULT_SIGMA,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            solver_mode: SolverMode::Constrained,
            comparison: Comparison::Block,
            normalization: Normalization::BlockOrthonormal,
            solver: SolverConfig::default(),
        };
        let dims = vec![1, 2, 4, 8];
        match figure {
            Figure::AlphaSweep => ExperimentSpec {
                alpha: alpha_grid(0.01),
                ..base
            },
            Figure::BlockVsNonblock => ExperimentSpec {
                sparsity: SparsityAxis::Entries(vec![8, 16, 24, 32]),
                comparison: Comparison::Both,
                ..base
            },
            Figure::BoundVsSparsity => ExperimentSpec {
                sparsity: SparsityAxis::Blocks((1..=8).collect()),
                ..base
            },
            Figure::BoundVsBlockSize => ExperimentSpec {
                sparsity: SparsityAxis::Entries(vec![16]),
                block_sizes: Some(vec![1, 2, 4, 8, 16]),
                ..base
            },
            Figure::AlphaByBlockSize => ExperimentSpec {
                sparsity: SparsityAxis::Entries(vec![32]),
                alpha: alpha_grid(0.1),
                block_sizes: Some(dims),
                ..base
            },
            Figure::SparsityByBlockSize => ExperimentSpec {
                sparsity: SparsityAxis::Entries(vec![8, 16, 24, 32, 40, 48]),
                block_sizes: Some(dims),
                ..base
            },
            Figure::MeasurementsByBlockSize => ExperimentSpec {
                sparsity: SparsityAxis::Entries(vec![16]),
                measurements: Some(if paper_scale {
                    vec![48, 64, 80, 96, 112, 128, 160, 192, 256]
                } else {
                    vec![32, 40, 48, 56, 64, 80, 96]
                }),
                block_sizes: Some(dims),
                ..base
            },
        }
    }
}
