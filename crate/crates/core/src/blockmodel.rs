//! Block partitions of signals, mixed norms and block supports.
//!
//! A length-`N` vector is split into `n` consecutive blocks of equal size
//! `d = N / n`. Block indices are 1-based throughout the public API, so block
//! `i` covers the 0-based positions `(i - 1) * d .. i * d`.

use std::collections::BTreeSet;
use std::ops::Range;

use nalgebra::{DVector, DVectorView};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative factor behind [`default_support_tol`].
pub const DEFAULT_SUPPORT_RTOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockPartition {
    total_len: usize,
    block_size: usize,
    num_blocks: usize,
}

impl BlockPartition {
    pub fn new(total_len: usize, block_size: usize) -> Result<Self> {
        if total_len == 0 {
            return Err(Error::NonPositive { what: "signal length" });
        }
        if block_size == 0 {
            return Err(Error::NonPositive { what: "block size" });
        }
        if !total_len.is_multiple_of(block_size) {
            return Err(Error::IndivisibleLength {
                total_len,
                block_size,
            });
        }
        Ok(BlockPartition {
            total_len,
            block_size,
            num_blocks: total_len / block_size,
        })
    }

    pub fn total_len(&self) -> usize {
        self.total_len
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    /// 0-based positions covered by the 1-based block `index`.
    ///
    /// Panics if `index` is outside `1..=num_blocks`.
    pub fn block_range(&self, index: usize) -> Range<usize> {
        assert!(
            (1..=self.num_blocks).contains(&index),
            "block index {index} outside 1..={}",
            self.num_blocks
        );
        let start = (index - 1) * self.block_size;
        start..start + self.block_size
    }

    /// Iterates `(index, range)` over all blocks, `index` 1-based.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, Range<usize>)> + '_ {
        (1..=self.num_blocks).map(move |i| (i, self.block_range(i)))
    }
}

/// Builds the uniform partition of `total_len` entries into blocks of `block_size`.
pub fn make_partition(total_len: usize, block_size: usize) -> Result<BlockPartition> {
    BlockPartition::new(total_len, block_size)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockSignal {
    values: DVector<f64>,
    partition: BlockPartition,
}

impl BlockSignal {
    pub fn new(values: DVector<f64>, partition: BlockPartition) -> Result<Self> {
        if values.len() != partition.total_len() {
            return Err(Error::LengthMismatch {
                what: "signal",
                got: values.len(),
                expected: partition.total_len(),
            });
        }
        Ok(BlockSignal { values, partition })
    }

    pub fn from_slice(values: &[f64], block_size: usize) -> Result<Self> {
        let partition = BlockPartition::new(values.len(), block_size)?;
        Self::new(DVector::from_column_slice(values), partition)
    }

    pub fn zeros(partition: BlockPartition) -> Self {
        BlockSignal {
            values: DVector::zeros(partition.total_len()),
            partition,
        }
    }

    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn into_values(self) -> DVector<f64> {
        self.values
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// View of the 1-based block `index`.
    pub fn block(&self, index: usize) -> DVectorView<'_, f64> {
        let range = self.partition.block_range(index);
        self.values.rows(range.start, range.len())
    }

    /// `‖x[i]‖₂` for every block, in block order.
    pub fn block_norms(&self) -> Vec<f64> {
        self.values
            .as_slice()
            .chunks_exact(self.partition.block_size())
            .map(|b| b.iter().map(|v| v * v).sum::<f64>().sqrt())
            .collect()
    }

    pub fn norm_l2(&self) -> f64 {
        self.values.norm()
    }

    /// `‖x‖₂,₂`, the ℓ2 norm of the block-norm vector. Equal to `‖x‖₂`.
    pub fn mixed_norm_22(&self) -> f64 {
        self.block_norms().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn mixed_norm_21(&self) -> f64 {
        self.block_norms().iter().sum()
    }

    /// Keeps the blocks in `support` and zeroes the rest (`x_T`).
    pub fn restrict(&self, support: &BlockSupport) -> Result<BlockSignal> {
        support.check_partition(&self.partition)?;
        let mut out = BlockSignal::zeros(self.partition);
        for &i in support.indices() {
            let range = self.partition.block_range(i);
            out.values
                .rows_mut(range.start, range.len())
                .copy_from(&self.values.rows(range.start, range.len()));
        }
        Ok(out)
    }

    /// Same values viewed under a different block size.
    pub fn with_block_size(&self, block_size: usize) -> Result<BlockSignal> {
        let partition = BlockPartition::new(self.len(), block_size)?;
        Ok(BlockSignal {
            values: self.values.clone(),
            partition,
        })
    }

    pub fn support(&self) -> BlockSupport {
        block_support(self, default_support_tol(self))
    }
}

/// Set of 1-based block indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSupport {
    indices: BTreeSet<usize>,
    num_blocks: usize,
}

impl BlockSupport {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I, num_blocks: usize) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > num_blocks) {
            return Err(Error::InvalidParameter(format!(
                "block index {bad} outside 1..={num_blocks}"
            )));
        }
        Ok(BlockSupport {
            indices,
            num_blocks,
        })
    }

    pub fn empty(num_blocks: usize) -> Self {
        BlockSupport {
            indices: BTreeSet::new(),
            num_blocks,
        }
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    /// `E^c` within `1..=num_blocks`.
    pub fn complement(&self) -> BlockSupport {
        BlockSupport {
            indices: (1..=self.num_blocks)
                .filter(|i| !self.indices.contains(i))
                .collect(),
            num_blocks: self.num_blocks,
        }
    }

    pub(crate) fn check_partition(&self, partition: &BlockPartition) -> Result<()> {
        if self.num_blocks != partition.num_blocks() {
            return Err(Error::LengthMismatch {
                what: "block support",
                got: self.num_blocks,
                expected: partition.num_blocks(),
            });
        }
        Ok(())
    }
}

/// `‖x‖₂,₁ = Σᵢ ‖x[i]‖₂`.
pub fn mixed_norm_21(x: &BlockSignal) -> f64 {
    x.mixed_norm_21()
}

/// Number of blocks with `‖x[i]‖₂ > tol`.
pub fn block_sparsity(x: &BlockSignal, tol: f64) -> usize {
    x.block_norms().iter().filter(|&&v| v > tol).count()
}

pub fn block_support(x: &BlockSignal, tol: f64) -> BlockSupport {
    BlockSupport {
        indices: x
            .block_norms()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > tol)
            .map(|(i, _)| i + 1)
            .collect(),
        num_blocks: x.partition().num_blocks(),
    }
}

/// Tolerance used when no explicit support tolerance is given: `1e-8 · max(1, ‖x‖₂)`.
pub fn default_support_tol(x: &BlockSignal) -> f64 {
    DEFAULT_SUPPORT_RTOL * x.norm_l2().max(1.0)
}

/// `‖x‖₂,₁ − α‖x‖₂`, the regularizer being minimized.
pub fn objective_value(x: &BlockSignal, alpha: f64) -> f64 {
    x.mixed_norm_21() - alpha * x.norm_l2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(values: &[f64], d: usize) -> BlockSignal {
        BlockSignal::from_slice(values, d).unwrap()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(make_partition(1024, 4).unwrap().num_blocks(), 256);
        assert_eq!(make_partition(6, 1).unwrap().num_blocks(), 6);
        let err = make_partition(10, 3).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("10") && msg.contains('3'), "{msg}");
        assert!(make_partition(0, 1).is_err());
        assert!(make_partition(4, 0).is_err());
    }

    #[test]
    fn block_ranges_are_one_based() {
        let p = make_partition(6, 2).unwrap();
        assert_eq!(p.block_range(1), 0..2);
        assert_eq!(p.block_range(3), 4..6);
        let all: Vec<_> = p.blocks().map(|(i, r)| (i, r.start)).collect();
        assert_eq!(all, vec![(1, 0), (2, 2), (3, 4)]);
    }

    #[test]
    #[should_panic]
    fn block_zero_is_out_of_range() {
        make_partition(6, 2).unwrap().block_range(0);
    }

    #[test]
    fn mixed_norm_examples() {
        assert_eq!(mixed_norm_21(&sig(&[3.0, 4.0, 0.0, 0.0], 2)), 5.0);
        assert_eq!(mixed_norm_21(&sig(&[1.0, -2.0, 3.0], 1)), 6.0);
        assert_eq!(mixed_norm_21(&sig(&[0.0; 6], 3)), 0.0);
    }

    #[test]
    fn sparsity_examples() {
        assert_eq!(block_sparsity(&sig(&[3.0, 4.0, 0.0, 0.0], 2), 0.0), 1);
        assert_eq!(block_sparsity(&sig(&[0.0; 4], 2), 0.0), 0);
        assert_eq!(block_sparsity(&sig(&[1e-12, 0.0, 0.0, 0.0], 2), 1e-9), 0);
    }

    #[test]
    fn support_examples() {
        let s = block_support(&sig(&[3.0, 4.0, 0.0, 0.0], 2), 0.0);
        assert_eq!(s.indices().iter().copied().collect::<Vec<_>>(), vec![1]);
        let s = block_support(&sig(&[0.0, 0.0, 1.0, 0.0, 0.0, 2.0], 2), 0.0);
        assert_eq!(s.indices().iter().copied().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(s.complement().indices().iter().copied().collect::<Vec<_>>(), vec![1]);
        assert!(block_support(&sig(&[0.0; 4], 2), 0.0).is_empty());
    }

    #[test]
    fn objective_examples() {
        assert_eq!(objective_value(&sig(&[3.0, 4.0, 0.0, 0.0], 2), 1.0), 0.0);
        assert_eq!(objective_value(&sig(&[3.0, 0.0, 0.0, 4.0], 2), 1.0), 2.0);
        assert_eq!(objective_value(&sig(&[3.0, 4.0, 0.0, 0.0], 2), 0.5), 2.5);
    }

    #[test]
    fn restrict_keeps_only_support() {
        let x = sig(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 2);
        let e = BlockSupport::new([2], 3).unwrap();
        assert_eq!(
            x.restrict(&e).unwrap().values().as_slice(),
            &[0.0, 0.0, 3.0, 4.0, 0.0, 0.0]
        );
        assert!(x.restrict(&BlockSupport::empty(2)).is_err());
        assert!(BlockSupport::new([4], 3).is_err());
        assert!(BlockSupport::new([0], 3).is_err());
    }

    #[test]
    fn default_tolerance_scales_with_norm() {
        let x = sig(&[3e3, 4e3, 1e-6, 0.0], 2);
        assert!((default_support_tol(&x) - 5e-5).abs() < 1e-18);
        assert_eq!(x.support().len(), 1);
    }
}
