use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

/// Factorization of `ΦᵀΦ + ρI` used by the x-update.
///
/// For wide matrices (`M < N`) only the `M × M` matrix `ρI + ΦΦᵀ` is factored
/// and the solve goes through the Woodbury identity
/// `(ΦᵀΦ + ρI)⁻¹ b = (b − Φᵀ(ρI + ΦΦᵀ)⁻¹ Φ b) / ρ`.
#[derive(Debug)]
pub struct Factorization {
    rho: f64,
    kind: Kind,
}

#[derive(Debug)]
enum Kind {
    Woodbury(Cholesky<f64, Dyn>),
    Direct(Cholesky<f64, Dyn>),
}

impl Factorization {
    pub fn new(phi: &DMatrix<f64>, rho: f64) -> Self {
        assert!(rho > 0.0, "rho must be positive, got {rho}");
        let (m, n) = phi.shape();
        let kind = if m < n {
            let mut gram = phi * phi.transpose();
            for i in 0..m {
                gram[(i, i)] += rho;
            }
            Kind::Woodbury(Cholesky::new(gram).expect("ρI + ΦΦᵀ is positive definite"))
        } else {
            let mut gram = phi.tr_mul(phi);
            for i in 0..n {
                gram[(i, i)] += rho;
            }
            Kind::Direct(Cholesky::new(gram).expect("ΦᵀΦ + ρI is positive definite"))
        };
        Factorization { rho, kind }
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Solves `(ΦᵀΦ + ρI) x = rhs` in place. `phi` must be the matrix the
    /// factorization was built from.
    pub fn solve_in_place(&self, phi: &DMatrix<f64>, rhs: &mut DVector<f64>, scratch: &mut DVector<f64>) {
        match &self.kind {
            Kind::Direct(chol) => chol.solve_mut(rhs),
            Kind::Woodbury(chol) => {
                // scratch = (ρI + ΦΦᵀ)⁻¹ Φ rhs
                scratch.gemv(1.0, phi, rhs, 0.0);
                chol.solve_mut(scratch);
                rhs.gemv_tr(-1.0, phi, scratch, 1.0);
                *rhs /= self.rho;
            }
        }
    }
}

/// Least-squares fit of `y` on the given columns of `phi`. Returns `None` when
/// there are more columns than rows or the columns are numerically dependent.
pub fn least_squares_on_columns(phi: &DMatrix<f64>, columns: &[usize], y: &DVector<f64>) -> Option<DVector<f64>> {
    if columns.is_empty() || columns.len() > phi.nrows() {
        return None;
    }
    let sub = phi.select_columns(columns.iter());
    let svd = sub.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smax == 0.0 || smin <= 1e-10 * smax {
        return None;
    }
    svd.solve(y, 0.0).ok()
}
