use serde::Serialize;

use super::{IntMatrix, MatrixError, TransitionMatrix};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;

/// Perron root and eigenvectors of an irreducible 0-1 matrix.
///
/// Both vectors are normalized so their components sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronData {
    pub radius: f64,
    /// `A u = r u`.
    pub right: Vec<f64>,
    /// `v^T A = r v^T`.
    pub left: Vec<f64>,
    /// Largest of the two achieved sup-norm residuals.
    pub residual: f64,
    pub iterations: usize,
}

/// Perron data of an irreducible matrix.
///
/// Runs power iteration on `A + I`: the shift makes the Perron root the unique
/// eigenvalue of maximal modulus even when `A` is periodic, so permutation
/// matrices and other periodic cases converge as well.
pub fn spectral_radius(a: &TransitionMatrix, tol: f64) -> Result<PerronData, MatrixError> {
    if !a.is_irreducible() {
        return Err(MatrixError::NotIrreducible);
    }
    power_iteration(a, tol, DEFAULT_MAX_ITERATIONS)
}

/// Shifted power iteration without the irreducibility check.
///
/// For reducible matrices the returned radius is still the spectral radius
/// when the iteration converges, but the vectors may have zero components.
pub fn power_iteration(a: &TransitionMatrix, tol: f64, max_iterations: usize) -> Result<PerronData, MatrixError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(MatrixError::InvalidTolerance(tol));
    }
    // Iterate past the requested tolerance, then measure both residuals
    // against the shared two-sided Rayleigh quotient v^T A u / v^T u.
    let inner = tol / 4.0;
    let (_, right, _, it_r) = dominant_vector(a, inner, max_iterations)?;
    let at = a.transpose();
    let (_, left, _, it_l) = dominant_vector(&at, inner, max_iterations)?;
    let mut au = vec![0.0; a.n()];
    apply(a, &right, &mut au);
    let num: f64 = left.iter().zip(&au).map(|(v, x)| v * x).sum();
    let den: f64 = left.iter().zip(&right).map(|(v, u)| v * u).sum();
    let radius = if den > 0.0 { num / den } else { au.iter().sum() };
    let mut va = vec![0.0; a.n()];
    apply(&at, &left, &mut va);
    let residual = sup_residual(&au, &right, radius).max(sup_residual(&va, &left, radius));
    if residual > tol {
        return Err(MatrixError::NoConvergence(max_iterations));
    }
    Ok(PerronData { radius, right, left, residual, iterations: it_r.max(it_l) })
}

fn sup_residual(image: &[f64], v: &[f64], radius: f64) -> f64 {
    image.iter().zip(v).map(|(x, y)| (x - radius * y).abs()).fold(0.0, f64::max)
}

fn apply(a: &TransitionMatrix, u: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = a.successors(i).map(|j| u[j]).sum();
    }
}

// Returns (radius, vector, residual, iterations) for the right eigenvector.
fn dominant_vector(
    a: &TransitionMatrix,
    tol: f64,
    max_iterations: usize,
) -> Result<(f64, Vec<f64>, f64, usize), MatrixError> {
    let n = a.n();
    let mut u = vec![1.0 / n as f64; n];
    let mut au = vec![0.0; n];
    for iter in 1..=max_iterations {
        apply(a, &u, &mut au);
        // (A + I) u, renormalized
        let shifted_sum: f64 = au.iter().zip(&u).map(|(x, y)| x + y).sum();
        for (ui, ai) in u.iter_mut().zip(&au) {
            *ui = (*ui + ai) / shifted_sum;
        }
        apply(a, &u, &mut au);
        let radius: f64 = au.iter().sum();
        let residual = sup_residual(&au, &u, radius);
        if residual <= tol {
            return Ok((radius, u, residual, iter));
        }
    }
    Err(MatrixError::NoConvergence(max_iterations))
}

/// Spectral radius of a nonnegative integer matrix with irreducible support.
///
/// Iterates `(M + I) u` and stops once the Collatz-Wielandt bounds
/// `min_i (Mu)_i / u_i <= r <= max_i (Mu)_i / u_i` are within `tol`.
pub fn int_spectral_radius(m: &IntMatrix, tol: f64) -> Result<f64, MatrixError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(MatrixError::InvalidTolerance(tol));
    }
    let support = m.as_support();
    if !support.is_irreducible() {
        return Err(MatrixError::NotIrreducible);
    }
    let n = m.n();
    let mut u = vec![1.0 / n as f64; n];
    let mut mu = vec![0.0; n];
    let apply_int = |u: &[f64], out: &mut [f64]| {
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..n).map(|j| m.get(i, j) as f64 * u[j]).sum();
        }
    };
    for _ in 0..DEFAULT_MAX_ITERATIONS {
        apply_int(&u, &mut mu);
        let (lo, hi) = mu
            .iter()
            .zip(&u)
            .map(|(x, y)| x / y)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| (lo.min(q), hi.max(q)));
        if hi - lo <= tol {
            return Ok((lo + hi) / 2.0);
        }
        let total: f64 = mu.iter().zip(&u).map(|(x, y)| x + y).sum();
        for (ui, xi) in u.iter_mut().zip(&mu) {
            *ui = (*ui + xi) / total;
        }
    }
    Err(MatrixError::NoConvergence(DEFAULT_MAX_ITERATIONS))
}
