//! Command-line front end for the `blockcs` library.
//!
//! Every command is a thin wrapper around a library call; the functions in
//! [`commands`] return exactly what the binary prints or writes.

pub mod args;
pub mod commands;
pub mod error;
pub mod figures;
pub mod io;
pub mod svg;
pub mod table;

use std::io::Write;

use blockcs::bounds::BoundInput;
use blockcs::SolverConfig;

use crate::args::{Cli, Command};
use crate::commands::{ExperimentRequest, Overrides, SolveRequest};
use crate::error::{CliError, CliResult};
use crate::figures::Layout;

/// Executes one parsed invocation, writing normal output to `stdout`.
pub fn run(cli: &Cli, overrides: &Overrides, stdout: &mut dyn Write) -> CliResult<()> {
    let text = match &cli.command {
        Command::Analyze {
            matrix,
            block_size,
            normalization,
        } => commands::analyze(matrix, *block_size, *normalization)?,
        Command::Bound {
            model,
            s,
            d,
            alpha,
            mu,
            eps,
            eta,
        } => commands::bound(
            (*model).into(),
            &BoundInput {
                s: *s,
                d: *d,
                alpha: *alpha,
                mu_block: *mu,
                eps: *eps,
                eta: eta.unwrap_or(*eps),
            },
        )?,
        Command::Solve {
            matrix,
            y,
            block_size,
            mode,
            alpha,
            lambda,
            eta,
            max_iter,
            out,
        } => {
            let mut config = SolverConfig {
                alpha: *alpha,
                lambda: *lambda,
                eta: *eta,
                ..SolverConfig::default()
            };
            if let Some(n) = max_iter {
                config.max_iter = *n;
            }
            commands::solve(&SolveRequest {
                matrix,
                y,
                block_size: *block_size,
                mode: (*mode).into(),
                config,
                out: out.as_deref(),
            })?
        }
        Command::Experiment {
            spec,
            figure,
            out,
            svg,
            paper_scale,
            trials,
            dump_spec,
        } => {
            let req = ExperimentRequest {
                spec: spec.as_deref(),
                figure: *figure,
                paper_scale: *paper_scale,
                trials: *trials,
            };
            let spec = commands::resolve_spec(&req, overrides)?;
            if *dump_spec {
                format!("{}\n", spec.to_json())
            } else {
                let layout = figure.map_or(Layout::Points, Layout::Figure);
                let result = commands::run_sweep(&spec, overrides)?;
                let table = commands::experiment_table(&spec, layout, &result)?;
                let bundle = commands::write_outputs(&table, layout, out, *svg)?;
                let mut msg = format!("{}\n", bundle.csv_path.display());
                if let Some(p) = bundle.svg_path {
                    msg.push_str(&format!("{}\n", p.display()));
                }
                msg
            }
        }
        Command::Conditions { s_max, d, out } => {
            let csv = commands::conditions(*s_max, *d)?.to_csv();
            match out {
                Some(path) => {
                    io::write_atomic(path, &csv)?;
                    format!("{}\n", path.display())
                }
                None => csv,
            }
        }
    };
    stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}
