//! ℓ2/ℓ1−αℓ2 minimization by two-block ADMM.
//!
//! The penalized problem
//!
//! ```text
//! min_x  λ(‖x‖₂,₁ − α‖x‖₂) + ½‖Φx − y‖₂²
//! ```
//!
//! is split as `x = w`: the x-update solves `(ΦᵀΦ + ρI)x = Φᵀy + ρ(w − u)`
//! with a factorization cached on the [`SensingMatrix`], the w-update is the
//! block prox with step `λ/ρ`, and `u` is the scaled dual. The constrained
//! problem `min ‖x‖₂,₁ − α‖x‖₂ s.t. ‖Φx − y‖₂ ≤ η` is approached by geometric
//! continuation on `λ`. With a block size of 1 the same code solves ℓ1−αℓ2.

pub mod linalg;
pub mod prox;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::blockmodel::{objective_value, BlockSignal};
use crate::coherence::SensingMatrix;
use crate::error::{Error, Result};

pub use prox::{
    block_prox_objective, prox_block_l21_minus_alpha_l2, prox_branch, prox_l1_minus_alpha_l2,
    ProxBranch,
};

/// Default `λ` as a fraction of `‖Φᵀy‖∞`.
pub const DEFAULT_LAMBDA_SCALE: f64 = 1e-2;
/// Default stopping tolerances as a multiple of `√N`.
pub const DEFAULT_TOL_SCALE: f64 = 1e-8;
/// Continuation runs `λ` from `‖Φᵀy‖∞` down to this fraction of it.
pub const CONTINUATION_MIN_RATIO: f64 = 1e-4;
/// Log-scale bisection steps between the last rejected and first accepted `λ`.
pub const CONTINUATION_REFINE_STEPS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub alpha: f64,
    /// Penalty weight; `None` uses `DEFAULT_LAMBDA_SCALE · ‖Φᵀy‖∞`.
    pub lambda: Option<f64>,
    pub rho: f64,
    pub max_iter: usize,
    /// Absolute tolerance on `‖x − w‖₂`; `None` uses `1e-8 · √N`.
    pub tol_primal: Option<f64>,
    /// Absolute tolerance on `ρ‖w − w_prev‖₂`; `None` uses `1e-8 · √N`.
    pub tol_dual: Option<f64>,
    /// Residual level for the constrained solve.
    pub eta: f64,
    pub continuation_steps: usize,
    /// Relative slack on `η` when accepting a continuation step.
    pub slack: f64,
    /// Residual target used instead of `η` when `η` is (near) zero.
    pub eta_floor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            alpha: 0.8,
            lambda: None,
            rho: 1.0,
            max_iter: 5000,
            tol_primal: None,
            tol_dual: None,
            eta: 0.0,
            continuation_steps: 10,
            slack: 0.05,
            eta_floor: 1e-10,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad(format!("alpha = {} outside [0, 1]", self.alpha));
        }
        if let Some(l) = self.lambda {
            if !(l > 0.0 && l.is_finite()) {
                return bad(format!("lambda = {l} must be positive"));
            }
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return bad(format!("rho = {} must be positive", self.rho));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        for (name, tol) in [("tol_primal", self.tol_primal), ("tol_dual", self.tol_dual)] {
            if let Some(t) = tol {
                if !(t > 0.0) {
                    return bad(format!("{name} = {t} must be positive"));
                }
            }
        }
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return bad(format!("eta = {} must be non-negative", self.eta));
        }
        if self.continuation_steps == 0 {
            return bad("continuation_steps must be positive".into());
        }
        if !(self.slack >= 0.0) {
            return bad(format!("slack = {} must be non-negative", self.slack));
        }
        if !(self.eta_floor > 0.0) {
            return bad(format!("eta_floor = {} must be positive", self.eta_floor));
        }
        Ok(())
    }

    fn tolerances(&self, n: usize) -> (f64, f64) {
        let default = DEFAULT_TOL_SCALE * (n as f64).sqrt();
        (
            self.tol_primal.unwrap_or(default),
            self.tol_dual.unwrap_or(default),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub x_hat: BlockSignal,
    /// ADMM iterations, summed over continuation steps.
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    /// `‖Φx̂ − y‖₂`.
    pub data_residual: f64,
    /// `‖x̂‖₂,₁ − α‖x̂‖₂`.
    pub objective: f64,
    pub converged: bool,
    /// Penalty weight of the returned iterate.
    pub lambda: f64,
    /// Whether the returned point is a least-squares refit on the detected support.
    pub refit: bool,
}

struct AdmmState {
    w: DVector<f64>,
    u: DVector<f64>,
}

struct AdmmOutcome {
    iterations: usize,
    primal: f64,
    dual: f64,
    converged: bool,
}

fn check_shapes(phi: &SensingMatrix, y: &DVector<f64>) -> Result<()> {
    if y.len() != phi.rows() {
        return Err(Error::LengthMismatch {
            what: "measurement vector",
            got: y.len(),
            expected: phi.rows(),
        });
    }
    Ok(())
}

fn check_start(phi: &SensingMatrix, start: &DVector<f64>) -> Result<()> {
    if start.len() != phi.cols() {
        return Err(Error::LengthMismatch {
            what: "warm start",
            got: start.len(),
            expected: phi.cols(),
        });
    }
    Ok(())
}

fn run_admm(
    phi: &SensingMatrix,
    phit_y: &DVector<f64>,
    lambda: f64,
    cfg: &SolverConfig,
    state: &mut AdmmState,
) -> Result<AdmmOutcome> {
    let entries = phi.entries();
    let d = phi.block_size();
    let rho = cfg.rho;
    let (tol_p, tol_d) = cfg.tolerances(phi.cols());
    let factor = phi.factorization(rho);
    let step = lambda / rho;

    let n = phi.cols();
    let mut x = DVector::zeros(n);
    let mut v = DVector::zeros(n);
    let mut w_prev = DVector::zeros(n);
    let mut scratch = DVector::zeros(phi.rows());

    let mut outcome = AdmmOutcome {
        iterations: 0,
        primal: f64::INFINITY,
        dual: f64::INFINITY,
        converged: false,
    };
    for k in 1..=cfg.max_iter {
        // x = (ΦᵀΦ + ρI)⁻¹ (Φᵀy + ρ(w − u))
        x.copy_from(phit_y);
        x.axpy(rho, &state.w, 1.0);
        x.axpy(-rho, &state.u, 1.0);
        factor.solve_in_place(entries, &mut x, &mut scratch);

        w_prev.copy_from(&state.w);
        v.copy_from(&x);
        v += &state.u;
        prox::prox_block_in_place(&mut v, d, step, cfg.alpha);
        state.w.copy_from(&v);

        state.u += &x;
        state.u -= &state.w;

        let primal = (&x - &state.w).norm();
        let dual = rho * (&state.w - &w_prev).norm();
        if !primal.is_finite() || !dual.is_finite() {
            return Err(Error::Divergence { iteration: k });
        }
        outcome.iterations = k;
        outcome.primal = primal;
        outcome.dual = dual;
        if primal <= tol_p && dual <= tol_d {
            outcome.converged = true;
            break;
        }
    }
    Ok(outcome)
}

fn data_residual(phi: &SensingMatrix, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    (phi.entries() * x - y).norm()
}

fn finish(
    phi: &SensingMatrix,
    y: &DVector<f64>,
    cfg: &SolverConfig,
    x: DVector<f64>,
    outcome: &AdmmOutcome,
    iterations: usize,
    lambda: f64,
    refit: bool,
) -> SolverResult {
    let x_hat = BlockSignal::new(x, *phi.partition()).expect("solver keeps the signal length");
    SolverResult {
        data_residual: data_residual(phi, x_hat.values(), y),
        objective: objective_value(&x_hat, cfg.alpha),
        x_hat,
        iterations,
        primal_residual: outcome.primal,
        dual_residual: outcome.dual,
        converged: outcome.converged,
        lambda,
        refit,
    }
}

fn zero_result(phi: &SensingMatrix, y: &DVector<f64>, lambda: f64) -> SolverResult {
    SolverResult {
        x_hat: BlockSignal::zeros(*phi.partition()),
        iterations: 0,
        primal_residual: 0.0,
        dual_residual: 0.0,
        data_residual: y.norm(),
        objective: 0.0,
        converged: true,
        lambda,
        refit: false,
    }
}

/// Approximately minimizes `λ(‖x‖₂,₁ − α‖x‖₂) + ½‖Φx − y‖₂²` from `x = 0`.
pub fn solve_penalized(phi: &SensingMatrix, y: &DVector<f64>, cfg: &SolverConfig) -> Result<SolverResult> {
    solve_penalized_impl(phi, y, cfg, None)
}

/// [`solve_penalized`] warm-started at `start`.
pub fn solve_penalized_from(
    phi: &SensingMatrix,
    y: &DVector<f64>,
    cfg: &SolverConfig,
    start: &DVector<f64>,
) -> Result<SolverResult> {
    check_start(phi, start)?;
    solve_penalized_impl(phi, y, cfg, Some(start))
}

fn solve_penalized_impl(
    phi: &SensingMatrix,
    y: &DVector<f64>,
    cfg: &SolverConfig,
    start: Option<&DVector<f64>>,
) -> Result<SolverResult> {
    cfg.validate()?;
    check_shapes(phi, y)?;
    let phit_y = phi.entries().tr_mul(y);
    let scale = phit_y.amax();
    let lambda = match cfg.lambda {
        Some(l) => l,
        None if scale == 0.0 => return Ok(zero_result(phi, y, 0.0)),
        None => DEFAULT_LAMBDA_SCALE * scale,
    };
    let mut state = AdmmState {
        w: start.cloned().unwrap_or_else(|| DVector::zeros(phi.cols())),
        u: DVector::zeros(phi.cols()),
    };
    let outcome = run_admm(phi, &phit_y, lambda, cfg, &mut state)?;
    let iterations = outcome.iterations;
    Ok(finish(phi, y, cfg, state.w, &outcome, iterations, lambda, false))
}

/// Targets `min ‖x‖₂,₁ − α‖x‖₂ s.t. ‖Φx − y‖₂ ≤ η` from `x = 0`.
///
/// `λ` runs geometrically from `‖Φᵀy‖∞` down to `CONTINUATION_MIN_RATIO` of it
/// over `continuation_steps` warm-started penalized solves. The first (largest)
/// `λ` whose iterate satisfies `‖Φx − y‖₂ ≤ η(1 + slack)` is refined by a short
/// log-scale bisection against the previous step and returned. When `η` is at
/// most `eta_floor` (the equality-constrained case) the target becomes
/// `eta_floor`, and each step also tries the least-squares fit of `y` on the
/// iterate's block support, which is the only feasible point with that support
/// when the support columns are independent. If no step meets the target the
/// iterate with the smallest residual is returned with `converged = false`.
pub fn solve_constrained(phi: &SensingMatrix, y: &DVector<f64>, cfg: &SolverConfig) -> Result<SolverResult> {
    solve_constrained_impl(phi, y, cfg, None)
}

/// [`solve_constrained`] warm-started at `start`.
pub fn solve_constrained_from(
    phi: &SensingMatrix,
    y: &DVector<f64>,
    cfg: &SolverConfig,
    start: &DVector<f64>,
) -> Result<SolverResult> {
    check_start(phi, start)?;
    solve_constrained_impl(phi, y, cfg, Some(start))
}

/// Least-squares refit on the block support of `w`, accepted when it meets `target`.
fn support_refit(
    phi: &SensingMatrix,
    y: &DVector<f64>,
    w: &DVector<f64>,
    target: f64,
) -> Option<DVector<f64>> {
    let signal = BlockSignal::new(w.clone(), *phi.partition()).ok()?;
    let support = signal.support();
    let columns: Vec<usize> = support
        .indices()
        .iter()
        .flat_map(|&i| phi.partition().block_range(i))
        .collect();
    let coeffs = linalg::least_squares_on_columns(phi.entries(), &columns, y)?;
    let mut x = DVector::zeros(phi.cols());
    for (&c, &v) in columns.iter().zip(coeffs.iter()) {
        x[c] = v;
    }
    (data_residual(phi, &x, y) <= target).then_some(x)
}

fn solve_constrained_impl(
    phi: &SensingMatrix,
    y: &DVector<f64>,
    cfg: &SolverConfig,
    start: Option<&DVector<f64>>,
) -> Result<SolverResult> {
    cfg.validate()?;
    check_shapes(phi, y)?;
    let exact = cfg.eta <= cfg.eta_floor;
    let target = cfg.eta.max(cfg.eta_floor) * (1.0 + cfg.slack);

    // Zero is feasible and has objective 0, the smallest possible value.
    if y.norm() <= target {
        return Ok(zero_result(phi, y, f64::INFINITY));
    }

    let phit_y = phi.entries().tr_mul(y);
    let lambda_max = phit_y.amax();
    if lambda_max == 0.0 {
        // y is orthogonal to range(Φ); no point does better than zero.
        let mut r = zero_result(phi, y, 0.0);
        r.converged = false;
        return Ok(r);
    }

    let mut state = AdmmState {
        w: start.cloned().unwrap_or_else(|| DVector::zeros(phi.cols())),
        u: DVector::zeros(phi.cols()),
    };
    let never = AdmmOutcome {
        iterations: 0,
        primal: 0.0,
        dual: 0.0,
        converged: true,
    };

    if exact {
        if let Some(x) = start.and_then(|s| support_refit(phi, y, s, target)) {
            return Ok(finish(phi, y, cfg, x, &never, 0, f64::INFINITY, true));
        }
    }

    let steps = cfg.continuation_steps;
    let ratio = if steps > 1 {
        CONTINUATION_MIN_RATIO.powf(1.0 / (steps - 1) as f64)
    } else {
        1.0
    };

    let mut total_iters = 0;
    let mut best: Option<(f64, DVector<f64>, AdmmOutcome, f64)> = None;
    let mut prev_lambda: Option<f64> = None;
    let mut lambda = lambda_max;
    for _ in 0..steps {
        if let Some(prev) = prev_lambda {
            // the scaled dual is proportional to λ at a fixed point
            state.u *= lambda / prev;
        }
        let outcome = run_admm(phi, &phit_y, lambda, cfg, &mut state)?;
        total_iters += outcome.iterations;
        let residual = data_residual(phi, &state.w, y);

        if residual <= target {
            let upper = prev_lambda;
            let (x, outcome, lam, extra) =
                refine(phi, y, &phit_y, cfg, target, upper, lambda, state, outcome)?;
            total_iters += extra;
            return Ok(finish(phi, y, cfg, x, &outcome, total_iters, lam, false));
        }
        if exact {
            if let Some(x) = support_refit(phi, y, &state.w, target) {
                return Ok(finish(phi, y, cfg, x, &outcome, total_iters, lambda, true));
            }
        }
        if best.as_ref().is_none_or(|b| residual < b.0) {
            best = Some((residual, state.w.clone(), outcome, lambda));
        }
        prev_lambda = Some(lambda);
        lambda *= ratio;
    }

    let (_, x, outcome, lam) = best.expect("at least one continuation step");
    let mut result = finish(phi, y, cfg, x, &outcome, total_iters, lam, false);
    result.converged = false;
    Ok(result)
}

/// Log-scale bisection of `λ` between a rejected `upper` and an accepted
/// `lower`, keeping the largest accepted iterate.
#[allow(clippy::too_many_arguments)]
fn refine(
    phi: &SensingMatrix,
    y: &DVector<f64>,
    phit_y: &DVector<f64>,
    cfg: &SolverConfig,
    target: f64,
    upper: Option<f64>,
    lower: f64,
    accepted: AdmmState,
    outcome: AdmmOutcome,
) -> Result<(DVector<f64>, AdmmOutcome, f64, usize)> {
    let Some(mut hi) = upper else {
        return Ok((accepted.w, outcome, lower, 0));
    };
    let mut lo = lower;
    let mut best = (accepted, outcome, lower);
    let mut extra = 0;
    for _ in 0..CONTINUATION_REFINE_STEPS {
        let mid = (hi * lo).sqrt();
        let mut trial = AdmmState {
            w: best.0.w.clone(),
            u: &best.0.u * (mid / best.2),
        };
        let out = run_admm(phi, phit_y, mid, cfg, &mut trial)?;
        extra += out.iterations;
        if data_residual(phi, &trial.w, y) <= target {
            lo = mid;
            best = (trial, out, mid);
        } else {
            hi = mid;
        }
    }
    Ok((best.0.w, best.1, best.2, extra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    #[test]
    fn identity_with_vanishing_penalty_returns_measurements() {
        let phi = SensingMatrix::new(DMatrix::identity(4, 4), 2).unwrap();
        let y = DVector::from_vec(vec![3.0, 4.0, 0.0, 0.0]);
        let cfg = SolverConfig {
            lambda: Some(1e-6),
            ..Default::default()
        };
        let r = solve_penalized(&phi, &y, &cfg).unwrap();
        assert!(r.converged);
        assert!((r.x_hat.values() - &y).amax() < 1e-4);
    }

    #[test]
    fn huge_penalty_gives_zero() {
        let phi = SensingMatrix::new(
            DMatrix::from_fn(3, 6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0),
            2,
        )
        .unwrap();
        let y = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let cfg = SolverConfig {
            lambda: Some(1e6),
            ..Default::default()
        };
        let r = solve_penalized(&phi, &y, &cfg).unwrap();
        assert_eq!(r.x_hat.values().amax(), 0.0);
        assert_eq!(r.objective, 0.0);
    }

    #[test]
    fn rejects_bad_shapes_and_config() {
        let phi = SensingMatrix::new(DMatrix::identity(4, 4), 2).unwrap();
        let y = DVector::zeros(3);
        assert!(matches!(
            solve_penalized(&phi, &y, &SolverConfig::default()),
            Err(Error::LengthMismatch { .. })
        ));
        let y = DVector::zeros(4);
        for cfg in [
            SolverConfig { alpha: 1.5, ..Default::default() },
            SolverConfig { rho: 0.0, ..Default::default() },
            SolverConfig { lambda: Some(-1.0), ..Default::default() },
            SolverConfig { max_iter: 0, ..Default::default() },
            SolverConfig { tol_primal: Some(0.0), ..Default::default() },
            SolverConfig { eta: -1.0, ..Default::default() },
            SolverConfig { continuation_steps: 0, ..Default::default() },
        ] {
            assert!(solve_penalized(&phi, &y, &cfg).is_err());
        }
        assert!(solve_penalized_from(&phi, &y, &SolverConfig::default(), &DVector::zeros(3)).is_err());
    }

    #[test]
    fn zero_measurements_give_zero() {
        let phi = SensingMatrix::new(DMatrix::identity(4, 4), 2).unwrap();
        let y = DVector::zeros(4);
        let r = solve_penalized(&phi, &y, &SolverConfig::default()).unwrap();
        assert_eq!(r.x_hat.values().amax(), 0.0);
        let r = solve_constrained(&phi, &y, &SolverConfig::default()).unwrap();
        assert_eq!(r.x_hat.values().amax(), 0.0);
        assert!(r.converged);
    }

    #[test]
    fn large_eta_admits_zero() {
        let phi = SensingMatrix::new(DMatrix::identity(4, 4), 2).unwrap();
        let y = DVector::from_vec(vec![0.3, 0.4, 0.0, 0.0]);
        let cfg = SolverConfig { eta: 0.5, ..Default::default() };
        let r = solve_constrained(&phi, &y, &cfg).unwrap();
        assert_eq!(r.x_hat.values().amax(), 0.0);
        assert_eq!(r.objective, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn constrained_identity_meets_residual() {
        let phi = SensingMatrix::new(DMatrix::identity(6, 6), 2).unwrap();
        let y = DVector::from_vec(vec![3.0, 4.0, 0.0, 0.0, 0.1, 0.0]);
        let cfg = SolverConfig { eta: 0.2, ..Default::default() };
        let r = solve_constrained(&phi, &y, &cfg).unwrap();
        assert!(r.converged);
        assert!(r.data_residual <= 0.2 * 1.05);
        assert_eq!(r.x_hat.values()[4], 0.0);
    }
}
