use serde::Serialize;

use super::word::{enumerate_words, Word, DEFAULT_WORD_CAP};
use super::SftError;
use crate::matrix::{spectral_radius, TransitionMatrix};

/// The maximal-entropy (Parry) Markov measure of an irreducible SFT.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParryData {
    pub lambda: f64,
    /// `P(i,j) = A(i,j) u_j / (lambda u_i)`, rows renormalized to sum 1.
    pub stochastic: Vec<Vec<f64>>,
    /// `pi_i` proportional to `u_i v_i`.
    pub stationary: Vec<f64>,
    #[serde(skip)]
    matrix: TransitionMatrix,
}

/// Parry measure built from the Perron eigenvectors of `a`.
pub fn parry_measure(a: &TransitionMatrix, tol: f64) -> Result<ParryData, SftError> {
    let perron = spectral_radius(a, tol)?;
    let n = a.n();
    let lambda = perron.radius;
    let u = &perron.right;
    let stochastic = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|j| if a.get(i, j) { u[j] / (lambda * u[i]) } else { 0.0 }).collect();
            let s: f64 = row.iter().sum();
            row.iter_mut().for_each(|p| *p /= s);
            row
        })
        .collect();
    let mut stationary: Vec<f64> = u.iter().zip(&perron.left).map(|(x, y)| x * y).collect();
    let total: f64 = stationary.iter().sum();
    stationary.iter_mut().for_each(|p| *p /= total);
    Ok(ParryData { lambda, stochastic, stationary, matrix: a.clone() })
}

impl ParryData {
    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.stationary.len()
    }
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.ln()
    } else {
        0.0
    }
}

/// Shannon entropy in nats, with `0 log 0 = 0`.
pub fn shannon_entropy(probs: impl IntoIterator<Item = f64>) -> f64 {
    -probs.into_iter().map(plogp).sum::<f64>()
}

/// Measure of the cylinder `[mu]`: `pi(mu_1) P(mu_1,mu_2) ... P(mu_{k-1},mu_k)`.
pub fn cylinder_probability(pd: &ParryData, mu: &Word) -> Result<f64, SftError> {
    mu.check_range(pd.n())?;
    let s = mu.symbols();
    let Some(&first) = s.first() else {
        return Ok(1.0);
    };
    Ok(s.windows(2).fold(pd.stationary[first], |acc, w| acc * pd.stochastic[w[0]][w[1]]))
}

/// Entropy rate `-sum_i pi_i sum_j P(i,j) log P(i,j)` of the Markov measure.
pub fn markov_entropy(pd: &ParryData) -> f64 {
    pd.stationary.iter().zip(&pd.stochastic).map(|(pi, row)| pi * shannon_entropy(row.iter().copied())).sum()
}

/// Entropy of the measure restricted to the depth-`n` cylinder partition.
pub fn partition_entropy(pd: &ParryData, n: usize) -> Result<f64, SftError> {
    partition_entropy_capped(pd, n, DEFAULT_WORD_CAP)
}

pub fn partition_entropy_capped(pd: &ParryData, n: usize, cap: u64) -> Result<f64, SftError> {
    assert!(n >= 1, "partition depth must be positive");
    let words = enumerate_words(&pd.matrix, n, cap)?;
    let probs = words.iter().map(|w| cylinder_probability(pd, w)).collect::<Result<Vec<_>, _>>()?;
    Ok(shannon_entropy(probs))
}
