use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::TransitionMatrix;

/// Square matrix over arbitrary-precision nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

impl BigMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigUint::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigUint::one();
        }
        BigMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigUint>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    /// Sum of all entries, i.e. `<M e, e>`.
    pub fn total(&self) -> BigUint {
        self.entries.iter().sum()
    }

    pub fn mul(&self, other: &BigMatrix) -> BigMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![BigUint::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let lhs = self.get(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let rhs = other.get(k, j);
                    if !rhs.is_zero() {
                        entries[i * n + j] += lhs * rhs;
                    }
                }
            }
        }
        BigMatrix { n, entries }
    }
}

impl From<&TransitionMatrix> for BigMatrix {
    fn from(a: &TransitionMatrix) -> Self {
        let n = a.n();
        let entries = (0..n * n).map(|idx| BigUint::from(a.entry(idx / n, idx % n))).collect();
        BigMatrix { n, entries }
    }
}

/// Exact `A^k` by repeated squaring. `A^0` is the identity.
pub fn matrix_power(a: &TransitionMatrix, k: u64) -> BigMatrix {
    let mut result = BigMatrix::identity(a.n());
    let mut base = BigMatrix::from(a);
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = result.mul(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.mul(&base);
        }
    }
    result
}

/// Number of admissible words of length `k >= 1`: the entry sum of `A^(k-1)`.
pub fn word_count(a: &TransitionMatrix, k: u64) -> BigUint {
    assert!(k >= 1, "word length must be positive");
    matrix_power(a, k - 1).total()
}

/// `[w(1), ..., w(k_max)]` by propagating the row vector `e^T A^(k-1)`.
pub fn word_counts(a: &TransitionMatrix, k_max: usize) -> Vec<BigUint> {
    let n = a.n();
    let mut ends = vec![BigUint::one(); n];
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k > 1 {
            let mut next = vec![BigUint::zero(); n];
            for (i, c) in ends.iter().enumerate() {
                for j in a.successors(i) {
                    next[j] += c;
                }
            }
            ends = next;
        }
        out.push(ends.iter().sum());
    }
    out
}

/// Matrix-dimension factor `w(n + n0)` of the cp-approximation witness
/// built from the embedding of depth `n + n0`.
pub fn rcp_witness_dimension(a: &TransitionMatrix, n: u64, n0: u64) -> BigUint {
    assert!(n >= 1 && n0 >= 1, "n and n0 must be positive");
    word_count(a, n + n0)
}
