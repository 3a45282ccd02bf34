use std::f64::consts::LN_2;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{spectral_radius, word_counts, TransitionMatrix, DEFAULT_TOL};
use crate::sft::{ConvergenceReport, ConvergenceRow};

/// Natural logarithm of an arbitrary-precision integer, to f64 precision.
/// `ln 0` is `-inf`.
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 63 {
        return x.to_u64().expect("fits in u64").to_f64().expect("finite").ln();
    }
    let shift = bits - 63;
    let top = (x >> shift).to_u64().expect("fits in u64") as f64;
    top.ln() + shift as f64 * LN_2
}

/// Growth-rate estimates of `log r(A)` from exact word counts.
///
/// Row `k` carries `w(k)`, the slow estimator `ln w(k) / k` and the ratio
/// estimator `ln(w(k+1) / w(k))`. The target is `ln r(A)` when `A` is
/// irreducible.
pub fn entropy_estimates(a: &TransitionMatrix, k_max: usize) -> ConvergenceReport {
    assert!(k_max >= 1, "k_max must be positive");
    let counts = word_counts(a, k_max + 1);
    let logs: Vec<f64> = counts.iter().map(big_ln).collect();
    let rows = (1..=k_max)
        .map(|k| ConvergenceRow {
            k,
            wk: counts[k - 1].clone(),
            log_growth: logs[k - 1] / k as f64,
            ratio: logs[k] - logs[k - 1],
            witness: None,
        })
        .collect();
    let target = spectral_radius(a, DEFAULT_TOL).ok().map(|p| p.radius.ln());
    ConvergenceReport { rows, target, n0: None }
}
