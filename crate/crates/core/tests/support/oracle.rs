//! Independent reference computations for tests.
//!
//! Nothing here calls into the library: norms come from symmetric
//! eigen-decompositions instead of SVDs, prox values from direct numerical
//! search, and bound coefficients from the case formulas written out term by
//! term.
#![allow(dead_code)]

use nalgebra::DMatrix;

/// `‖A‖₂` as the square root of the largest eigenvalue of `AᵀA`.
pub fn spectral_norm_eig(a: &DMatrix<f64>) -> f64 {
    let gram = a.transpose() * a;
    gram.symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &v| m.max(v))
        .sqrt()
}

/// Block mutual coherence by looping over every block pair.
pub fn brute_block_coherence(phi: &DMatrix<f64>, d: usize) -> f64 {
    let n = phi.ncols() / d;
    let block = |i: usize| phi.columns(i * d, d).into_owned();
    let norms: Vec<f64> = (0..n).map(|i| spectral_norm_eig(&block(i))).collect();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let cross = block(i).transpose() * block(j);
            let value = spectral_norm_eig(&cross) / (d as f64 * norms[i] * norms[j]);
            best = best.max(value);
        }
    }
    best
}

/// Classical coherence by looping over every column pair.
pub fn brute_column_coherence(phi: &DMatrix<f64>) -> f64 {
    let mut best = 0.0f64;
    for i in 0..phi.ncols() {
        for j in 0..phi.ncols() {
            if i != j {
                let a = phi.column(i);
                let b = phi.column(j);
                best = best.max(a.dot(&b).abs() / (a.norm() * b.norm()));
            }
        }
    }
    best
}

/// `½‖u − v‖₂² + t(Σ_blocks ‖u_b‖₂ − α‖u‖₂)`.
pub fn prox_objective(u: &[f64], v: &[f64], d: usize, t: f64, alpha: f64) -> f64 {
    let fit: f64 = u.iter().zip(v).map(|(a, b)| 0.5 * (a - b) * (a - b)).sum();
    let mut l21 = 0.0;
    for b in u.chunks(d) {
        l21 += b.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    let l2 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    fit + t * (l21 - alpha * l2)
}

/// Derivative-free compass search from `x`, shrinking the step to `min_step`.
fn compass_search(f: &dyn Fn(&[f64]) -> f64, mut x: Vec<f64>, mut step: f64, min_step: f64) -> (Vec<f64>, f64) {
    let mut fx = f(&x);
    while step > min_step {
        let mut improved = false;
        for k in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[k] += dir * step;
                let fy = f(&y);
                if fy < fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// Smallest prox objective found by searching every block support: for each
/// subset of active blocks, a grid scan of the active coordinates followed by
/// compass refinement from the best grid point and from `v` itself.
pub fn prox_oracle(v: &[f64], d: usize, t: f64, alpha: f64) -> f64 {
    let n_blocks = v.len() / d;
    let radius = v.iter().fold(0.0f64, |m, x| m.max(x.abs())) + t + 1.0;
    let mut best = prox_objective(&vec![0.0; v.len()], v, d, t, alpha);
    for mask in 1u32..(1 << n_blocks) {
        let coords: Vec<usize> = (0..v.len()).filter(|&k| mask & (1 << (k / d)) != 0).collect();
        let embed = |z: &[f64]| {
            let mut u = vec![0.0; v.len()];
            for (&c, &val) in coords.iter().zip(z) {
                u[c] = val;
            }
            u
        };
        let f = |z: &[f64]| prox_objective(&embed(z), v, d, t, alpha);

        let per_axis: usize = match coords.len() {
            1 => 401,
            2 => 81,
            3 => 25,
            _ => 11,
        };
        let mut grid_best = (vec![0.0; coords.len()], f64::INFINITY);
        let total = per_axis.pow(coords.len() as u32);
        let mut z = vec![0.0; coords.len()];
        for idx in 0..total {
            let mut rem = idx;
            for zk in z.iter_mut() {
                let g = rem % per_axis;
                rem /= per_axis;
                *zk = -radius + 2.0 * radius * g as f64 / (per_axis - 1) as f64;
            }
            let fz = f(&z);
            if fz < grid_best.1 {
                grid_best = (z.clone(), fz);
            }
        }
        let spacing = 2.0 * radius / (per_axis - 1) as f64;
        let starts = [grid_best.0, coords.iter().map(|&c| v[c]).collect()];
        for s in starts {
            let (_, fx) = compass_search(&f, s, spacing, 1e-11);
            best = best.min(fx);
        }
    }
    best
}

/// ℓ2-noise bound coefficient, each case written with `d·μ` and `d²·μ²` as
/// separate terms.
pub fn l2_noise_reference(s: usize, d: usize, alpha: f64, mu: f64) -> f64 {
    let d = d as f64;
    let a2 = alpha * alpha;
    match s {
        1 => {
            let num = 2.0 * (1.0 - d * mu) * (1.0 + 3.0 * alpha * d * mu);
            let den = 1.0 - (2.0 + a2) * d * mu + (1.0 - a2) * d * d * mu * mu;
            num / den
        }
        2 => {
            let num = (1.0 - 3.0 * d * mu) * (25.0 * alpha * d * mu + 30f64.sqrt());
            let den = 2.0 * (1.0 - (6.0 + a2) * d * mu + (9.0 - a2) * d * d * mu * mu);
            num / den
        }
        _ => {
            let inner = 1.0 + (1.0 - 9.0 * a2) * d * mu;
            (24.0 * (3.0 * s as f64).sqrt() * alpha * d * mu + (17.0 * inner).sqrt()) / inner
        }
    }
}

/// Dantzig-selector bound coefficient, written like [`l2_noise_reference`].
pub fn dantzig_reference(s: usize, d: usize, alpha: f64, mu: f64) -> f64 {
    let rd = (d as f64).sqrt();
    let d = d as f64;
    let a2 = alpha * alpha;
    match s {
        1 => {
            rd * (1.0 - d * mu) * (3.0 * alpha + 6f64.sqrt())
                / (1.0 - (2.0 + a2) * d * mu + (1.0 - a2) * d * d * mu * mu)
        }
        2 => {
            rd * (1.0 - 3.0 * d * mu) * (4.0 * alpha + 19f64.sqrt())
                / (1.0 - (6.0 + a2) * d * mu + (9.0 - a2) * d * d * mu * mu)
        }
        _ => rd * (15.0 * alpha + 3.0 * (2.0 * s as f64).sqrt()) / (1.0 + (1.0 - 9.0 * a2) * d * mu),
    }
}
