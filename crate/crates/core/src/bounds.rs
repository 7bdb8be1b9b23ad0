//! Closed-form stable-recovery error bounds for ℓ2/ℓ1−αℓ2 minimization.
//!
//! Both bounds have the form `‖x̂ − x‖₂ ≤ C · (ε + η)` where the coefficient
//! `C` depends on the block sparsity `s`, block size `d`, `α` and the block
//! mutual coherence `μτ`, with separate expressions for `s = 1`, `s = 2` and
//! `s ≥ 3`. The guarantee holds when `μτ < 1/(3sd)`; the coefficient is still
//! evaluated outside that region so curves can be drawn, and the report
//! carries the flag.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Noise model a bound is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseModel {
    /// `‖z‖₂ ≤ ε`, feasible set `‖y − Φx‖₂ ≤ η`.
    L2,
    /// `‖Φᵀz‖∞ ≤ ε`, feasible set `‖Φᵀ(y − Φx)‖∞ ≤ η`.
    DantzigSelector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SparsityCase {
    #[serde(rename = "s=1")]
    One,
    #[serde(rename = "s=2")]
    Two,
    #[serde(rename = "s>=3")]
    ThreeOrMore,
}

impl SparsityCase {
    pub fn of(s: usize) -> Self {
        match s {
            0 | 1 => SparsityCase::One,
            2 => SparsityCase::Two,
            _ => SparsityCase::ThreeOrMore,
        }
    }
}

impl fmt::Display for SparsityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SparsityCase::One => "s=1",
            SparsityCase::Two => "s=2",
            SparsityCase::ThreeOrMore => "s>=3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    pub s: usize,
    pub d: usize,
    pub alpha: f64,
    pub mu_block: f64,
    /// Actual noise level `ε`.
    pub eps: f64,
    /// Noise level `η` assumed by the solver's feasible set.
    pub eta: f64,
}

impl BoundInput {
    pub fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(Error::NonPositive { what: "s" });
        }
        if self.d == 0 {
            return Err(Error::NonPositive { what: "d" });
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} outside (0, 1]",
                self.alpha
            )));
        }
        if !(self.mu_block >= 0.0 && self.mu_block.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mu_block = {} must be finite and non-negative",
                self.mu_block
            )));
        }
        for (name, v) in [("eps", self.eps), ("eta", self.eta)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} must be finite and non-negative"
                )));
            }
        }
        if self.eps > self.eta {
            return Err(Error::InvalidParameter(format!(
                "eps = {} exceeds eta = {}",
                self.eps, self.eta
            )));
        }
        Ok(())
    }

    /// `μτ < 1/(3sd)`.
    pub fn condition_ok(&self) -> bool {
        self.mu_block < 1.0 / (3.0 * self.s as f64 * self.d as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub coefficient: f64,
    /// `coefficient · (eps + eta)`.
    pub bound: f64,
    pub case_used: SparsityCase,
    pub condition_ok: bool,
}

fn finish(input: &BoundInput, numerator: f64, denominator: f64) -> Result<BoundReport> {
    if !denominator.is_finite() || denominator <= 0.0 {
        return Err(Error::InvalidBound(format!(
            "denominator {denominator} is not positive (s = {}, d = {}, alpha = {}, mu_block = {})",
            input.s, input.d, input.alpha, input.mu_block
        )));
    }
    let coefficient = numerator / denominator;
    if !coefficient.is_finite() || coefficient <= 0.0 {
        return Err(Error::InvalidBound(format!(
            "coefficient {coefficient} is not a positive number (s = {}, d = {}, alpha = {}, mu_block = {})",
            input.s, input.d, input.alpha, input.mu_block
        )));
    }
    Ok(BoundReport {
        coefficient,
        bound: coefficient * (input.eps + input.eta),
        case_used: SparsityCase::of(input.s),
        condition_ok: input.condition_ok(),
    })
}

/// Quadratic denominators shared by the `s = 1` and `s = 2` cases.
fn den_s1(a: f64, x: f64) -> f64 {
    1.0 - (2.0 + a * a) * x + (1.0 - a * a) * x * x
}

fn den_s2(a: f64, x: f64) -> f64 {
    1.0 - (6.0 + a * a) * x + (9.0 - a * a) * x * x
}

fn den_s3(a: f64, x: f64) -> f64 {
    1.0 + (1.0 - 9.0 * a * a) * x
}

/// Coefficient of the bound under ℓ2-bounded noise.
pub fn theorem1_coefficient(input: &BoundInput) -> Result<BoundReport> {
    input.validate()?;
    let a = input.alpha;
    let x = input.d as f64 * input.mu_block;
    let (num, den) = match SparsityCase::of(input.s) {
        SparsityCase::One => (2.0 * (1.0 - x) * (1.0 + 3.0 * a * x), den_s1(a, x)),
        SparsityCase::Two => (
            (1.0 - 3.0 * x) * (25.0 * a * x + 30f64.sqrt()),
            2.0 * den_s2(a, x),
        ),
        SparsityCase::ThreeOrMore => {
            let s = input.s as f64;
            let den = den_s3(a, x);
            (24.0 * (3.0 * s).sqrt() * a * x + (17.0 * den).sqrt(), den)
        }
    };
    finish(input, num, den)
}

/// Coefficient of the bound under Dantzig-selector noise.
pub fn theorem2_coefficient(input: &BoundInput) -> Result<BoundReport> {
    input.validate()?;
    let a = input.alpha;
    let root_d = (input.d as f64).sqrt();
    let x = input.d as f64 * input.mu_block;
    let (num, den) = match SparsityCase::of(input.s) {
        SparsityCase::One => (
            root_d * (1.0 - x) * (3.0 * a + 6f64.sqrt()),
            den_s1(a, x),
        ),
        SparsityCase::Two => (
            root_d * (1.0 - 3.0 * x) * (4.0 * a + 19f64.sqrt()),
            den_s2(a, x),
        ),
        SparsityCase::ThreeOrMore => {
            let s = input.s as f64;
            (root_d * (15.0 * a + 3.0 * (2.0 * s).sqrt()), den_s3(a, x))
        }
    };
    finish(input, num, den)
}

pub fn coefficient(model: NoiseModel, input: &BoundInput) -> Result<BoundReport> {
    match model {
        NoiseModel::L2 => theorem1_coefficient(input),
        NoiseModel::DantzigSelector => theorem2_coefficient(input),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub input: BoundInput,
    pub report: Result<BoundReport>,
}

/// Evaluates a bound at every input, keeping per-point failures as rows.
pub fn bound_curve(model: NoiseModel, axis: &[BoundInput]) -> Result<Vec<BoundRow>> {
    if axis.is_empty() {
        return Err(Error::InvalidParameter("bound curve axis is empty".into()));
    }
    Ok(axis
        .iter()
        .map(|input| BoundRow {
            input: *input,
            report: coefficient(model, input),
        })
        .collect())
}
