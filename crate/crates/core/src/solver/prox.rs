//! Proximal maps of `t(‖u‖₁ − α‖u‖₂)` and its block lift `t(‖u‖₂,₁ − α‖u‖₂)`.

use nalgebra::DVector;

use crate::blockmodel::BlockSignal;

/// Which piece of the closed form produced a prox value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProxBranch {
    /// `‖v‖∞ > t`: soft-threshold, then stretch by `αt` along the result.
    Shrink,
    /// `(1−α)t < ‖v‖∞ ≤ t`: keep only the largest entry.
    OneSparse,
    /// `‖v‖∞ ≤ (1−α)t`: zero.
    Zero,
}

/// Index of the first entry attaining `‖v‖∞`, with that magnitude.
fn first_argmax_abs(v: &[f64]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &x) in v.iter().enumerate() {
        let a = x.abs();
        if best.is_none_or(|(_, b)| a > b) {
            best = Some((i, a));
        }
    }
    best
}

pub fn prox_branch(v: &[f64], t: f64, alpha: f64) -> ProxBranch {
    let vmax = first_argmax_abs(v).map_or(0.0, |(_, a)| a);
    if vmax > t {
        ProxBranch::Shrink
    } else if vmax > (1.0 - alpha) * t {
        ProxBranch::OneSparse
    } else {
        ProxBranch::Zero
    }
}

/// Overwrites `v` with a global minimizer of `½‖u − v‖₂² + t(‖u‖₁ − α‖u‖₂)`.
///
/// Ties in the one-sparse branch keep the lowest index.
pub fn prox_l1_minus_alpha_l2_in_place(v: &mut [f64], t: f64, alpha: f64) -> ProxBranch {
    assert!(t >= 0.0, "prox step must be non-negative, got {t}");
    assert!((0.0..=1.0).contains(&alpha), "alpha must lie in [0, 1], got {alpha}");
    let Some((imax, vmax)) = first_argmax_abs(v) else {
        return ProxBranch::Zero;
    };
    if vmax > t {
        let mut norm_sq = 0.0;
        for x in v.iter_mut() {
            *x = x.signum() * (x.abs() - t).max(0.0);
            norm_sq += *x * *x;
        }
        let norm = norm_sq.sqrt();
        let scale = (norm + alpha * t) / norm;
        v.iter_mut().for_each(|x| *x *= scale);
        ProxBranch::Shrink
    } else if vmax > (1.0 - alpha) * t {
        let kept = v[imax].signum() * (vmax + (alpha - 1.0) * t);
        v.iter_mut().for_each(|x| *x = 0.0);
        v[imax] = kept;
        ProxBranch::OneSparse
    } else {
        v.iter_mut().for_each(|x| *x = 0.0);
        ProxBranch::Zero
    }
}

pub fn prox_l1_minus_alpha_l2(v: &[f64], t: f64, alpha: f64) -> Vec<f64> {
    let mut out = v.to_vec();
    prox_l1_minus_alpha_l2_in_place(&mut out, t, alpha);
    out
}

/// Block prox on a raw vector split into blocks of `block_size`.
pub(crate) fn prox_block_in_place(v: &mut DVector<f64>, block_size: usize, t: f64, alpha: f64) {
    let data = v.as_mut_slice();
    if block_size == 1 {
        prox_l1_minus_alpha_l2_in_place(data, t, alpha);
        return;
    }
    let norms: Vec<f64> = data
        .chunks_exact(block_size)
        .map(|b| b.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let mut shrunk = norms.clone();
    prox_l1_minus_alpha_l2_in_place(&mut shrunk, t, alpha);
    for ((block, &w), &w_new) in data.chunks_exact_mut(block_size).zip(&norms).zip(&shrunk) {
        if w_new == 0.0 || w == 0.0 {
            block.iter_mut().for_each(|x| *x = 0.0);
        } else {
            let scale = w_new / w;
            block.iter_mut().for_each(|x| *x *= scale);
        }
    }
}

/// Minimizer of `½‖u − v‖₂² + t(‖u‖₂,₁ − α‖u‖₂)`.
///
/// The scalar prox is applied to the vector of block norms and every block of
/// `v` is rescaled to its new norm, so `d = 1` is exactly the scalar prox.
pub fn prox_block_l21_minus_alpha_l2(v: &BlockSignal, t: f64, alpha: f64) -> BlockSignal {
    let mut values = v.values().clone();
    prox_block_in_place(&mut values, v.partition().block_size(), t, alpha);
    BlockSignal::new(values, *v.partition()).expect("partition unchanged")
}

/// `½‖u − v‖₂² + t(‖u‖₂,₁ − α‖u‖₂)` for flat slices split into `block_size` blocks.
pub fn block_prox_objective(u: &[f64], v: &[f64], block_size: usize, t: f64, alpha: f64) -> f64 {
    let fit: f64 = u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / 2.0;
    let l21: f64 = u
        .chunks_exact(block_size)
        .map(|b| b.iter().map(|x| x * x).sum::<f64>().sqrt())
        .sum();
    let l2 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    fit + t * (l21 - alpha * l2)
}
