use std::fmt::Write;
use std::path::{Path, PathBuf};

use blockcs::bounds::{coefficient, BoundInput, NoiseModel};
use blockcs::coherence::{block_mutual_coherence, recovery_condition, ric_condition_bounds};
use blockcs::experiments::presets::{preset, Figure};
use blockcs::experiments::{run_experiment, run_experiment_with_threads, ExperimentResult, ExperimentSpec, SolverMode};
use blockcs::solver::{solve_constrained, solve_penalized};
use blockcs::{Normalization, SensingMatrix, SolverConfig};
use nalgebra::DVector;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::figures::{provenance, tabulate, Layout};
use crate::io::{format_vector, read_matrix, read_text, read_vector, write_atomic};
use crate::svg::emit_svg;
use crate::table::{format_number, Table};

pub fn analyze_matrix(phi: &SensingMatrix) -> CliResult<String> {
    let report = block_mutual_coherence(phi)?;
    let mut out = String::new();
    let _ = writeln!(out, "# {} x {}, block size {}", phi.rows(), phi.cols(), phi.block_size());
    let _ = writeln!(out, "mu_block: {}", format_number(report.mu_block));
    let _ = writeln!(out, "mu_classical: {}", format_number(report.mu_classical));
    let _ = writeln!(out, "argmax_pair: {} {}", report.argmax_pair.0, report.argmax_pair.1);
    let _ = writeln!(out, "s,threshold,satisfied,margin");
    for s in 1..=phi.num_blocks().div_ceil(2) {
        let c = recovery_condition(report.mu_block, s, phi.block_size());
        let _ = writeln!(
            out,
            "{s},{},{},{}",
            format_number(c.threshold),
            c.satisfied,
            format_number(c.margin)
        );
    }
    Ok(out)
}

pub fn analyze(path: &Path, block_size: usize, normalization: Normalization) -> CliResult<String> {
    let phi = SensingMatrix::new(read_matrix(path)?, block_size)?.normalized(normalization)?;
    analyze_matrix(&phi)
}

pub fn bound(model: NoiseModel, input: &BoundInput) -> CliResult<String> {
    let r = coefficient(model, input)?;
    Ok(format!(
        "coefficient: {}\nbound: {}\ncase: {}\ncondition_ok: {}\n",
        format_number(r.coefficient),
        format_number(r.bound),
        r.case_used,
        r.condition_ok
    ))
}

pub struct SolveRequest<'a> {
    pub matrix: &'a Path,
    pub y: &'a Path,
    pub block_size: usize,
    pub mode: SolverMode,
    pub config: SolverConfig,
    pub out: Option<&'a Path>,
}

/// Returns what goes to standard output: the estimate, or a summary when the
/// estimate is written to a file.
pub fn solve(req: &SolveRequest<'_>) -> CliResult<String> {
    let phi = SensingMatrix::new(read_matrix(req.matrix)?, req.block_size)?;
    let y: DVector<f64> = read_vector(req.y)?;
    let result = match req.mode {
        SolverMode::Penalized => solve_penalized(&phi, &y, &req.config)?,
        SolverMode::Constrained => solve_constrained(&phi, &y, &req.config)?,
    };
    let estimate = format_vector(result.x_hat.values());
    match req.out {
        None => Ok(estimate),
        Some(path) => {
            write_atomic(path, &estimate)?;
            Ok(format!(
                "iterations: {}\nconverged: {}\nlambda: {}\ndata_residual: {}\nobjective: {}\n",
                result.iterations,
                result.converged,
                format_number(result.lambda),
                format_number(result.data_residual),
                format_number(result.objective)
            ))
        }
    }
}

pub fn conditions(s_max: usize, d: usize) -> CliResult<Table> {
    if s_max == 0 || d == 0 {
        return Err(CliError::Usage("--s-max and --d must be at least 1".into()));
    }
    let mut table = Table::new(vec!["s".into(), "eq26".into(), "eq28".into()]);
    for s in 1..=s_max {
        let (coherence_based, ric_based) = ric_condition_bounds(s, d);
        table.push_row(vec![s as f64, coherence_based, ric_based]);
    }
    Ok(table)
}

/// Process-level overrides read from the environment.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

impl Overrides {
    pub fn from_env() -> CliResult<Self> {
        fn var<T: std::str::FromStr>(name: &str) -> CliResult<Option<T>> {
            match std::env::var(name) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| CliError::Usage(format!("{name}='{v}' is not a valid number"))),
                Err(_) => Ok(None),
            }
        }
        Ok(Overrides {
            seed: var("BLOCKCS_SEED")?,
            threads: var("BLOCKCS_THREADS")?,
        })
    }
}

pub struct ExperimentRequest<'a> {
    pub spec: Option<&'a Path>,
    pub figure: Option<Figure>,
    pub paper_scale: bool,
    pub trials: Option<usize>,
}

/// Effective spec after presets and overrides, validated.
pub fn resolve_spec(req: &ExperimentRequest<'_>, overrides: &Overrides) -> CliResult<ExperimentSpec> {
    let mut spec = match (req.spec, req.figure) {
        (Some(path), _) => {
            if req.paper_scale {
                return Err(CliError::Usage("--paper-scale only applies to figure presets".into()));
            }
            let text = read_text(path)?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: invalid experiment spec: {e}", path.display())))?
        }
        (None, Some(fig)) => preset(fig, req.paper_scale),
        (None, None) => return Err(CliError::Usage("give a spec file or --figure".into())),
    };
    if let Some(t) = req.trials {
        spec.trials = t;
    }
    if let Some(seed) = overrides.seed {
        spec.seed = seed;
    }
    spec.validate()?;
    Ok(spec)
}

pub fn spec_hash(spec: &ExperimentSpec) -> String {
    let json = serde_json::to_string(spec).expect("spec serializes");
    Sha256::digest(json.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn run_sweep(spec: &ExperimentSpec, overrides: &Overrides) -> CliResult<ExperimentResult> {
    Ok(match overrides.threads {
        Some(t) => run_experiment_with_threads(spec, t)?,
        None => run_experiment(spec)?,
    })
}

/// Full CSV table for a finished sweep: provenance, figure notes, data.
pub fn experiment_table(spec: &ExperimentSpec, layout: Layout, result: &ExperimentResult) -> CliResult<Table> {
    let mut table = tabulate(result, layout)?;
    let mut metadata = provenance(spec, layout, &spec_hash(spec), result);
    metadata.append(&mut table.metadata);
    table.metadata = metadata;
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputBundle {
    pub csv_path: PathBuf,
    pub svg_path: Option<PathBuf>,
}

pub fn write_outputs(table: &Table, layout: Layout, dir: &Path, svg: bool) -> CliResult<OutputBundle> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let stem = layout.file_stem();
    let csv_path = dir.join(format!("{stem}.csv"));
    write_atomic(&csv_path, &table.to_csv())?;
    let svg_path = if svg {
        let path = dir.join(format!("{stem}.svg"));
        let title = match layout {
            Layout::Figure(f) => format!("Figure {f}"),
            Layout::Points => "Experiment".into(),
        };
        write_atomic(&path, &emit_svg(table, &title))?;
        Some(path)
    } else {
        None
    };
    Ok(OutputBundle { csv_path, svg_path })
}
