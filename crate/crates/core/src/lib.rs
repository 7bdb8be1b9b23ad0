//! Block-sparse signal recovery by ℓ2/ℓ1−αℓ2 minimization.
//!
//! - [`blockmodel`]: block partitions, mixed norms, block supports.
//! - [`coherence`]: sensing matrices, block and classical mutual coherence,
//!   recoverability conditions.
//! - [`bounds`]: closed-form stable-recovery error bounds.
//! - [`solver`]: ADMM for the penalized and constrained programs.
//! - [`experiments`]: seeded synthetic instances and Monte-Carlo sweeps.

pub mod blockmodel;
pub mod bounds;
pub mod coherence;
pub mod error;
pub mod experiments;
pub mod solver;

pub use blockmodel::{BlockPartition, BlockSignal, BlockSupport};
pub use coherence::{Normalization, SensingMatrix};
pub use error::{Error, Result};
pub use solver::{SolverConfig, SolverResult};
