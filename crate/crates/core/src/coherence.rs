//! Sensing matrices with a block column partition, block and classical mutual
//! coherence, and the sufficient conditions built on top of them.

use std::fmt;
use std::sync::{Arc, Mutex};

use nalgebra::{DMatrix, DMatrixView};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blockmodel::{BlockPartition, BlockSignal, BlockSupport};
use crate::error::{Error, Result};
use crate::solver::linalg::Factorization;

/// Tolerance for the column / block orthonormality postconditions.
pub const NORMALIZATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    Raw,
    UnitColumns,
    BlockOrthonormal,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::UnitColumns => "unit-columns",
            Normalization::BlockOrthonormal => "block-orthonormal",
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Normalization::Raw),
            "unit-columns" => Ok(Normalization::UnitColumns),
            "block-orthonormal" => Ok(Normalization::BlockOrthonormal),
            other => Err(Error::InvalidParameter(format!(
                "unknown normalization '{other}'"
            ))),
        }
    }
}

/// Dense `M × N` measurement matrix whose columns share a [`BlockPartition`].
///
/// The solver's linear-system factorization is cached on the matrix, keyed by
/// the splitting penalty it was built for.
pub struct SensingMatrix {
    entries: DMatrix<f64>,
    partition: BlockPartition,
    normalization: Normalization,
    factor: Mutex<Option<Arc<Factorization>>>,
}

impl fmt::Debug for SensingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SensingMatrix")
            .field("rows", &self.entries.nrows())
            .field("cols", &self.entries.ncols())
            .field("partition", &self.partition)
            .field("normalization", &self.normalization)
            .finish()
    }
}

impl Clone for SensingMatrix {
    fn clone(&self) -> Self {
        SensingMatrix {
            entries: self.entries.clone(),
            partition: self.partition,
            normalization: self.normalization,
            factor: Mutex::new(self.factor.lock().unwrap().clone()),
        }
    }
}

impl SensingMatrix {
    /// Wraps `entries` as a raw matrix partitioned into column blocks of `block_size`.
    pub fn new(entries: DMatrix<f64>, block_size: usize) -> Result<Self> {
        if entries.nrows() == 0 {
            return Err(Error::NonPositive {
                what: "row count",
            });
        }
        let partition = BlockPartition::new(entries.ncols(), block_size)?;
        Ok(SensingMatrix {
            entries,
            partition,
            normalization: Normalization::Raw,
            factor: Mutex::new(None),
        })
    }

    /// Wraps `entries` and checks that they already satisfy `normalization`.
    pub fn with_normalization(
        entries: DMatrix<f64>,
        block_size: usize,
        normalization: Normalization,
    ) -> Result<Self> {
        let mut phi = Self::new(entries, block_size)?;
        phi.normalization = normalization;
        phi.check_normalization()?;
        Ok(phi)
    }

    /// Applies `normalization` to the entries: column scaling for unit columns,
    /// a thin QR of every block for block-orthonormal.
    pub fn normalized(&self, normalization: Normalization) -> Result<SensingMatrix> {
        let mut entries = self.entries.clone();
        match normalization {
            Normalization::Raw => {}
            Normalization::UnitColumns => {
                for (j, mut col) in entries.column_iter_mut().enumerate() {
                    let norm = col.norm();
                    if norm == 0.0 {
                        return Err(Error::ZeroColumn { index: j + 1 });
                    }
                    col /= norm;
                }
            }
            Normalization::BlockOrthonormal => {
                let d = self.partition.block_size();
                if self.rows() < d {
                    return Err(Error::InvalidParameter(format!(
                        "block-orthonormal needs at least d = {d} rows, got {}",
                        self.rows()
                    )));
                }
                for (i, range) in self.partition.blocks() {
                    let block = entries.columns(range.start, d).into_owned();
                    let qr = block.qr();
                    let r = qr.r();
                    let scale = r.diagonal().amax().max(f64::MIN_POSITIVE);
                    if r.diagonal().iter().any(|v| v.abs() <= 1e-12 * scale) {
                        return Err(Error::RankDeficientBlock { index: i });
                    }
                    entries.columns_mut(range.start, d).copy_from(&qr.q());
                }
            }
        }
        let mut out = SensingMatrix::new(entries, self.partition.block_size())?;
        out.normalization = normalization;
        Ok(out)
    }

    /// Same entries under a different column block size. Unit columns are
    /// preserved by any repartition; block orthonormality only implies unit columns.
    pub fn with_block_size(&self, block_size: usize) -> Result<SensingMatrix> {
        let mut out = SensingMatrix::new(self.entries.clone(), block_size)?;
        out.normalization = match self.normalization {
            Normalization::Raw => Normalization::Raw,
            Normalization::BlockOrthonormal if block_size == self.partition.block_size() => {
                Normalization::BlockOrthonormal
            }
            _ => Normalization::UnitColumns,
        };
        Ok(out)
    }

    fn check_normalization(&self) -> Result<()> {
        match self.normalization {
            Normalization::Raw => Ok(()),
            Normalization::UnitColumns => {
                for (j, col) in self.entries.column_iter().enumerate() {
                    let dev = (col.norm() - 1.0).abs();
                    if dev > NORMALIZATION_TOL {
                        return Err(Error::NormalizationViolated {
                            normalization: "unit-columns",
                            detail: format!("column {} has norm off by {dev:e}", j + 1),
                        });
                    }
                }
                Ok(())
            }
            Normalization::BlockOrthonormal => {
                let d = self.partition.block_size();
                let eye = DMatrix::<f64>::identity(d, d);
                for i in 1..=self.partition.num_blocks() {
                    let b = self.block(i);
                    let dev = (b.tr_mul(&b) - &eye).amax();
                    if dev > NORMALIZATION_TOL {
                        return Err(Error::NormalizationViolated {
                            normalization: "block-orthonormal",
                            detail: format!("block {i} Gram deviates from identity by {dev:e}"),
                        });
                    }
                }
                Ok(())
            }
        }
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn block_size(&self) -> usize {
        self.partition.block_size()
    }

    pub fn num_blocks(&self) -> usize {
        self.partition.num_blocks()
    }

    /// The `M × d` sub-block `Φ[i]`, `index` 1-based.
    pub fn block(&self, index: usize) -> DMatrixView<'_, f64> {
        let range = self.partition.block_range(index);
        self.entries.columns(range.start, range.len())
    }

    /// True when the blocks satisfy `‖Φ[i]‖₂ = 1`, the normalization the
    /// recovery guarantees are stated for.
    pub fn meets_theory_normalization(&self) -> bool {
        self.normalization == Normalization::BlockOrthonormal
    }

    /// Returns the cached factorization for `rho`, building it on first use
    /// or when `rho` changed.
    pub(crate) fn factorization(&self, rho: f64) -> Arc<Factorization> {
        let mut slot = self.factor.lock().unwrap();
        match slot.as_ref() {
            Some(f) if f.rho() == rho => Arc::clone(f),
            _ => {
                let f = Arc::new(Factorization::new(&self.entries, rho));
                *slot = Some(Arc::clone(&f));
                f
            }
        }
    }

    /// Builds the factorization for `rho` now, so concurrent solves share it.
    pub fn prepare(&self, rho: f64) {
        let _ = self.factorization(rho);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    /// Block mutual coherence `μτ`.
    pub mu_block: f64,
    /// Classical (column) mutual coherence `μ`.
    pub mu_classical: f64,
    /// 1-based block pair `(i, j)`, `i < j`, attaining `mu_block`.
    pub argmax_pair: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub mu_block: f64,
    pub s: usize,
    pub d: usize,
    /// `1 / (3 s d)`.
    pub threshold: f64,
    pub satisfied: bool,
    /// `threshold - mu_block`; negative when the condition fails.
    pub margin: f64,
}

/// Spectral norm of a small matrix.
pub(crate) fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[(0, 0)].abs();
    }
    m.singular_values().max()
}

/// Block mutual coherence
///
/// `μτ = max_{i<j} (1/d) ‖Φ[i]ᵀΦ[j]‖₂ / (‖Φ[i]‖₂ ‖Φ[j]‖₂)`, with spectral norms
/// throughout. Ties resolve to the lexicographically smallest pair.
pub fn block_mutual_coherence(phi: &SensingMatrix) -> Result<CoherenceReport> {
    let (mu_block, argmax_pair) = block_coherence_with_pair(phi)?;
    let mu_classical = mutual_coherence(phi)?;
    Ok(CoherenceReport {
        mu_block,
        mu_classical,
        argmax_pair,
    })
}

fn block_coherence_with_pair(phi: &SensingMatrix) -> Result<(f64, (usize, usize))> {
    let n = phi.num_blocks();
    let d = phi.block_size();
    if n < 2 {
        return Err(Error::TooFewBlocks {
            what: "blocks",
            got: n,
        });
    }
    if d == 1 {
        return column_coherence_with_pair(phi.entries());
    }

    let blocks: Vec<DMatrix<f64>> = (1..=n).map(|i| phi.block(i).into_owned()).collect();
    let norms: Vec<f64> = blocks
        .iter()
        .map(|b| spectral_norm(&b.tr_mul(b)).sqrt())
        .collect();
    if let Some(i) = norms.iter().position(|&v| v == 0.0) {
        return Err(Error::ZeroBlock { index: i + 1 });
    }

    let best = (0..n - 1)
        .into_par_iter()
        .map(|i| {
            let mut row_best = (f64::NEG_INFINITY, (0, 0));
            for j in i + 1..n {
                let cross = spectral_norm(&blocks[i].tr_mul(&blocks[j]));
                let value = cross / (norms[i] * norms[j]) / d as f64;
                if value > row_best.0 {
                    row_best = (value, (i + 1, j + 1));
                }
            }
            row_best
        })
        .reduce(|| (f64::NEG_INFINITY, (usize::MAX, usize::MAX)), pick_max);
    Ok(best)
}

fn pick_max(a: (f64, (usize, usize)), b: (f64, (usize, usize))) -> (f64, (usize, usize)) {
    if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
        a
    } else {
        b
    }
}

fn column_coherence_with_pair(entries: &DMatrix<f64>) -> Result<(f64, (usize, usize))> {
    let n = entries.ncols();
    if n < 2 {
        return Err(Error::TooFewBlocks {
            what: "columns",
            got: n,
        });
    }
    let norms: Vec<f64> = entries.column_iter().map(|c| c.dot(&c).sqrt()).collect();
    if let Some(j) = norms.iter().position(|&v| v == 0.0) {
        return Err(Error::ZeroColumn { index: j + 1 });
    }
    let best = (0..n - 1)
        .into_par_iter()
        .map(|i| {
            let ci = entries.column(i);
            let mut row_best = (f64::NEG_INFINITY, (0, 0));
            for j in i + 1..n {
                let value = ci.dot(&entries.column(j)).abs() / (norms[i] * norms[j]);
                if value > row_best.0 {
                    row_best = (value, (i + 1, j + 1));
                }
            }
            row_best
        })
        .reduce(|| (f64::NEG_INFINITY, (usize::MAX, usize::MAX)), pick_max);
    Ok(best)
}

/// Classical mutual coherence `μ = max_{i≠j} |Φᵢᵀ Φⱼ| / (‖Φᵢ‖₂ ‖Φⱼ‖₂)`.
pub fn mutual_coherence(phi: &SensingMatrix) -> Result<f64> {
    column_coherence_with_pair(phi.entries()).map(|(mu, _)| mu)
}

/// Checks `μτ < 1/(3 s d)`.
pub fn recovery_condition(mu_block: f64, s: usize, d: usize) -> ConditionReport {
    let threshold = 1.0 / (3.0 * s as f64 * d as f64);
    ConditionReport {
        mu_block,
        s,
        d,
        threshold,
        satisfied: mu_block < threshold,
        margin: threshold - mu_block,
    }
}

/// Constants `(1 − (s−1)dμτ, 1 + (s−1)dμτ)` bracketing `‖Φx‖₂² / ‖x‖₂²` for
/// block `s`-sparse `x`.
pub fn lemma1_interval(mu_block: f64, s: usize, d: usize) -> (f64, f64) {
    let spread = (s as f64 - 1.0) * d as f64 * mu_block;
    (1.0 - spread, 1.0 + spread)
}

/// Upper bounds on `δ_{2s}` implied by the coherence condition and by the
/// competing restricted-isometry condition: `((2s−1)/(3sd), (√s−1)/(2√s))`.
pub fn ric_condition_bounds(s: usize, d: usize) -> (f64, f64) {
    let sf = s as f64;
    let coherence_based = (2.0 * sf - 1.0) / (3.0 * sf * d as f64);
    let root = sf.sqrt();
    let ric_based = (root - 1.0) / (2.0 * root);
    (coherence_based, ric_based)
}

/// `‖h_{E^c}‖₂,₁ − ‖h_E‖₂,₁ − α‖h‖₂`; non-positive for the error vector of a minimizer.
pub fn cone_constraint_residual(h: &BlockSignal, support: &BlockSupport, alpha: f64) -> Result<f64> {
    support.check_partition(h.partition())?;
    let (mut on, mut off) = (0.0, 0.0);
    for (i, norm) in h.block_norms().into_iter().enumerate() {
        if support.contains(i + 1) {
            on += norm;
        } else {
            off += norm;
        }
    }
    Ok(off - on - alpha * h.norm_l2())
}
