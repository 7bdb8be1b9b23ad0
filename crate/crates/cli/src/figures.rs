//! Pivoting sweep summaries into per-figure tables.

use blockcs::experiments::presets::Figure;
use blockcs::experiments::{ExperimentResult, ExperimentSpec, PointSummary, SeriesStats};

use crate::error::{CliError, CliResult};
use crate::table::Table;

/// How a sweep result is laid out as a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Figure(Figure),
    /// One row per axis point, indexed from 1.
    Points,
}

impl Layout {
    pub fn file_stem(self) -> String {
        match self {
            Layout::Figure(f) => format!("fig{}", f.label()),
            Layout::Points => "experiment".into(),
        }
    }
}

fn primary(p: &PointSummary) -> Option<SeriesStats> {
    p.block.or(p.nonblock)
}

fn rel(stats: Option<SeriesStats>) -> f64 {
    stats.map_or(f64::NAN, |s| s.mean_rel_error)
}

struct Pivot {
    x_name: &'static str,
    xs: Vec<f64>,
    series: Vec<String>,
    cells: Vec<(usize, usize, f64)>,
}

impl Pivot {
    fn new(x_name: &'static str) -> Self {
        Pivot {
            x_name,
            xs: Vec::new(),
            series: Vec::new(),
            cells: Vec::new(),
        }
    }

    fn put(&mut self, x: f64, series: String, value: f64) -> CliResult<()> {
        let r = self.xs.iter().position(|&v| v == x).unwrap_or_else(|| {
            self.xs.push(x);
            self.xs.len() - 1
        });
        let c = self.series.iter().position(|s| *s == series).unwrap_or_else(|| {
            self.series.push(series);
            self.series.len() - 1
        });
        if self.cells.iter().any(|&(rr, cc, _)| rr == r && cc == c) {
            return Err(CliError::Usage(format!(
                "layout '{}' needs one axis point per {} = {x} and series '{}'; the experiment sweeps another axis",
                self.x_name, self.x_name, self.series[c]
            )));
        }
        self.cells.push((r, c, value));
        Ok(())
    }

    fn into_table(self) -> Table {
        let mut columns = vec![self.x_name.to_string()];
        columns.extend(self.series.iter().cloned());
        let mut table = Table::new(columns);
        let mut order: Vec<usize> = (0..self.xs.len()).collect();
        order.sort_by(|&a, &b| self.xs[a].total_cmp(&self.xs[b]));
        for r in order {
            let mut row = vec![self.xs[r]];
            row.extend((0..self.series.len()).map(|c| {
                self.cells
                    .iter()
                    .find(|&&(rr, cc, _)| rr == r && cc == c)
                    .map_or(f64::NAN, |&(_, _, v)| v)
            }));
            table.push_row(row);
        }
        table
    }
}

fn by_block_size(points: &[PointSummary], x_name: &'static str, x: impl Fn(&PointSummary) -> f64) -> CliResult<Table> {
    let mut pivot = Pivot::new(x_name);
    for p in points {
        pivot.put(x(p), format!("mean_rel_error_d{}", p.point.d), rel(primary(p)))?;
    }
    Ok(pivot.into_table())
}

fn bound_vs_error(points: &[PointSummary], x_name: &'static str, x: impl Fn(&PointSummary) -> f64) -> CliResult<Table> {
    let mut pivot = Pivot::new(x_name);
    for p in points {
        let err = primary(p).map_or(f64::NAN, |s| s.mean_abs_error);
        pivot.put(x(p), "log10_bound".into(), p.mean_bound.log10())?;
        pivot.put(x(p), "log10_error".into(), err.log10())?;
    }
    let mut table = pivot.into_table();
    for p in points {
        table.metadata.push(format!(
            "condition_ok {}={}: {} (mean mu_block {}, bound evaluated in {} of {} trials)",
            x_name,
            x(p),
            p.condition_ok,
            p.mean_mu_block,
            p.bound_valid,
            p.trials
        ));
    }
    Ok(table)
}

fn point_rows(points: &[PointSummary]) -> Table {
    let mut table = Table::new(
        [
            "point",
            "block_mean_rel_error",
            "nonblock_mean_rel_error",
            "log10_bound",
            "log10_error",
        ]
        .map(String::from)
        .to_vec(),
    );
    for (i, p) in points.iter().enumerate() {
        table.push_row(vec![
            (i + 1) as f64,
            rel(p.block),
            rel(p.nonblock),
            p.mean_bound.log10(),
            primary(p).map_or(f64::NAN, |s| s.mean_abs_error).log10(),
        ]);
        table.metadata.push(format!(
            "point {}: {} condition_ok={} mean_mu_block={}",
            i + 1,
            p.point,
            p.condition_ok,
            p.mean_mu_block
        ));
    }
    table
}

/// Data table for `layout`, without the provenance metadata.
pub fn tabulate(result: &ExperimentResult, layout: Layout) -> CliResult<Table> {
    let pts = &result.points;
    let table = match layout {
        Layout::Points => point_rows(pts),
        Layout::Figure(fig) => match fig {
            Figure::AlphaSweep => {
                let mut pivot = Pivot::new("alpha");
                for p in pts {
                    pivot.put(p.point.alpha, "mean_rel_error".into(), rel(primary(p)))?;
                }
                pivot.into_table()
            }
            Figure::BlockVsNonblock => {
                let mut pivot = Pivot::new("K");
                for p in pts {
                    let k = p.point.k as f64;
                    if p.block.is_some() {
                        pivot.put(k, "block_mean_rel_error".into(), rel(p.block))?;
                    }
                    if p.nonblock.is_some() {
                        pivot.put(k, "nonblock_mean_rel_error".into(), rel(p.nonblock))?;
                    }
                }
                pivot.into_table()
            }
            Figure::BoundVsSparsity => bound_vs_error(pts, "s", |p| p.point.s as f64)?,
            Figure::BoundVsBlockSize => bound_vs_error(pts, "d", |p| p.point.d as f64)?,
            Figure::AlphaByBlockSize => by_block_size(pts, "alpha", |p| p.point.alpha)?,
            Figure::SparsityByBlockSize => by_block_size(pts, "K", |p| p.point.k as f64)?,
            Figure::MeasurementsByBlockSize => by_block_size(pts, "M", |p| p.point.m as f64)?,
        },
    };
    Ok(table)
}

/// Provenance lines placed before the figure's own metadata.
pub fn provenance(spec: &ExperimentSpec, layout: Layout, spec_hash: &str, result: &ExperimentResult) -> Vec<String> {
    let mut lines = vec![
        format!("blockcs {}", env!("CARGO_PKG_VERSION")),
        format!(
            "figure: {}",
            match layout {
                Layout::Figure(f) => f.label().to_string(),
                Layout::Points => "none".into(),
            }
        ),
        format!("seed: {}", spec.seed),
        format!("spec_sha256: {spec_hash}"),
        format!(
            "N: {}  trials: {}  noise_sigma: {}  normalization: {}",
            spec.n, spec.trials, spec.noise_sigma, spec.normalization
        ),
    ];
    for p in &result.points {
        if p.failed_trials > 0 {
            lines.push(format!(
                "failed trials at {}: {} of {}",
                p.point, p.failed_trials, p.trials
            ));
        }
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use blockcs::experiments::ExperimentPoint;

    fn summary(d: usize, k: usize, alpha: f64, err: f64) -> PointSummary {
        let stats = SeriesStats {
            mean_rel_error: err,
            mean_abs_error: 10.0 * err,
            successes: 1,
            failures: 0,
            converged: 1,
        };
        PointSummary {
            point: ExperimentPoint { m: 64, d, s: k / d, k, alpha },
            trials: 1,
            block: Some(stats),
            nonblock: None,
            mean_bound: 100.0,
            bound_valid: 1,
            condition_ok: false,
            mean_mu_block: 0.2,
            failed_trials: 0,
        }
    }

    fn result(points: Vec<PointSummary>) -> ExperimentResult {
        ExperimentResult { seed: 1, trials: 1, points }
    }

    #[test]
    fn block_size_pivot() {
        let r = result(vec![
            summary(1, 8, 0.8, 0.1),
            summary(1, 16, 0.8, 0.2),
            summary(2, 8, 0.8, 0.3),
            summary(2, 16, 0.8, 0.4),
        ]);
        let t = tabulate(&r, Layout::Figure(Figure::SparsityByBlockSize)).unwrap();
        assert_eq!(t.columns, ["K", "mean_rel_error_d1", "mean_rel_error_d2"]);
        assert_eq!(t.rows, vec![vec![8.0, 0.1, 0.3], vec![16.0, 0.2, 0.4]]);
    }

    #[test]
    fn bound_figure_is_log_scaled() {
        let r = result(vec![summary(4, 4, 0.8, 0.01), summary(4, 8, 0.8, 0.1)]);
        let t = tabulate(&r, Layout::Figure(Figure::BoundVsSparsity)).unwrap();
        assert_eq!(t.columns, ["s", "log10_bound", "log10_error"]);
        assert_eq!(t.rows[0], vec![1.0, 2.0, -1.0]);
        assert_eq!(t.metadata.len(), 2);
    }

    #[test]
    fn colliding_points_are_rejected() {
        let r = result(vec![summary(1, 8, 0.8, 0.1), summary(2, 8, 0.8, 0.1)]);
        assert!(tabulate(&r, Layout::Figure(Figure::AlphaSweep)).is_err());
        assert_eq!(tabulate(&r, Layout::Points).unwrap().rows.len(), 2);
    }
}
