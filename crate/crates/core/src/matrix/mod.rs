//! The defining 0-1 matrix of a subshift of finite type and the numerics
//! attached to it: validation, strong connectivity, exact word counts,
//! Perron-Frobenius data and the edge (dual) presentation of integer
//! matrices.
//!
//! Symbols are `0..n` internally. Every user-facing diagnostic uses
//! `1..=n`.

mod dual;
mod estimates;
pub mod io;
mod perron;
mod power;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dual::{dual_matrix, int_product, DualDecomposition, EdgeLabel};
pub use estimates::{big_ln, entropy_estimates};
pub use perron::{
    int_spectral_radius, power_iteration, spectral_radius, PerronData, DEFAULT_MAX_ITERATIONS, DEFAULT_TOL,
};
pub use power::{matrix_power, rcp_witness_dimension, word_count, word_counts, BigMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("entry ({0},{1}) is outside {{0,1}}")]
    EntryOutOfRange(usize, usize),
    #[error("entry ({0},{1}) is negative")]
    NegativeEntry(usize, usize),
    #[error("row {0} is zero")]
    ZeroRow(usize),
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Square 0-1 matrix with no zero row and no zero column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<bool>,
}

/// Square nonnegative integer matrix with no zero row and no zero column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<u64>,
}

/// Wire form shared by both matrix kinds: `{"n": 2, "rows": [[1,1],[1,0]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawMatrix {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

fn check_square(raw: &[Vec<i64>]) -> Result<usize, MatrixError> {
    let n = raw.len();
    if n == 0 {
        return Err(MatrixError::Empty);
    }
    for (row, r) in raw.iter().enumerate() {
        if r.len() != n {
            return Err(MatrixError::NotSquare { row: row + 1, len: r.len(), expected: n });
        }
    }
    Ok(n)
}

fn check_support(n: usize, nonzero: impl Fn(usize, usize) -> bool) -> Result<(), MatrixError> {
    for i in 0..n {
        if !(0..n).any(|j| nonzero(i, j)) {
            return Err(MatrixError::ZeroRow(i + 1));
        }
    }
    for j in 0..n {
        if !(0..n).any(|i| nonzero(i, j)) {
            return Err(MatrixError::ZeroColumn(j + 1));
        }
    }
    Ok(())
}

/// Validate a raw integer array as a transition matrix.
pub fn validate(raw: &[Vec<i64>]) -> Result<TransitionMatrix, MatrixError> {
    let n = check_square(raw)?;
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in raw.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            match v {
                0 => entries.push(false),
                1 => entries.push(true),
                _ => return Err(MatrixError::EntryOutOfRange(i + 1, j + 1)),
            }
        }
    }
    check_support(n, |i, j| entries[i * n + j])?;
    Ok(TransitionMatrix { n, entries })
}

impl TransitionMatrix {
    /// Alphabet size.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j]
    }

    /// Entry as 0 or 1.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.get(i, j) as u8
    }

    /// The N x N all-ones matrix (the Cuntz algebra case).
    pub fn full(n: usize) -> Self {
        assert!(n > 0, "alphabet must be nonempty");
        TransitionMatrix { n, entries: vec![true; n * n] }
    }

    /// `[[1,1],[1,0]]`.
    pub fn golden_mean() -> Self {
        validate(&[vec![1, 1], vec![1, 0]]).expect("golden mean matrix is valid")
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "alphabet must be nonempty");
        let mut entries = vec![false; n * n];
        for i in 0..n {
            entries[i * n + i] = true;
        }
        TransitionMatrix { n, entries }
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j) as i64).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        TransitionMatrix { n, entries }
    }

    /// Strong connectivity of the digraph `i -> j` iff `A(i,j) = 1`.
    pub fn is_irreducible(&self) -> bool {
        reaches_all(self) && reaches_all(&self.transpose())
    }

    /// Period of an irreducible matrix: the gcd of its cycle lengths. `None`
    /// when the matrix is reducible. Period 1 means primitive.
    pub fn period(&self) -> Option<usize> {
        if !self.is_irreducible() {
            return None;
        }
        // BFS levels; every edge i -> j contributes level(i) + 1 - level(j).
        let mut level = vec![usize::MAX; self.n];
        level[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in self.successors(i) {
                if level[j] == usize::MAX {
                    level[j] = level[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        let mut g = 0usize;
        for i in 0..self.n {
            for j in self.successors(i) {
                g = gcd(g, (level[i] + 1).abs_diff(level[j]));
            }
        }
        Some(g)
    }

    pub fn is_primitive(&self) -> bool {
        self.period() == Some(1)
    }

    /// Exactly one 1 in every row and every column.
    pub fn is_permutation(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).filter(|&j| self.get(i, j)).count() == 1)
            && (0..n).all(|j| (0..n).filter(|&i| self.get(i, j)).count() == 1)
    }

    /// Whether the hypotheses "irreducible and not a permutation matrix" hold.
    pub fn is_irreducible_non_permutation(&self) -> bool {
        self.is_irreducible() && !self.is_permutation()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// BFS from symbol 0.
fn reaches_all(a: &TransitionMatrix) -> bool {
    let mut seen = vec![false; a.n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in a.successors(i) {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl TryFrom<RawMatrix> for TransitionMatrix {
    type Error = MatrixError;

    fn try_from(raw: RawMatrix) -> Result<Self, Self::Error> {
        if raw.n != raw.rows.len() {
            return Err(MatrixError::Parse(format!("declared n = {} but {} rows given", raw.n, raw.rows.len())));
        }
        validate(&raw.rows)
    }
}

impl From<TransitionMatrix> for RawMatrix {
    fn from(a: TransitionMatrix) -> Self {
        RawMatrix { n: a.n, rows: a.rows() }
    }
}

impl IntMatrix {
    pub fn new(raw: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let n = check_square(raw)?;
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in raw.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v < 0 {
                    return Err(MatrixError::NegativeEntry(i + 1, j + 1));
                }
                entries.push(v as u64);
            }
        }
        check_support(n, |i, j| entries[i * n + j] != 0)?;
        Ok(IntMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// The 0-1 matrix of nonzero positions.
    pub fn as_support(&self) -> TransitionMatrix {
        TransitionMatrix { n: self.n, entries: self.entries.iter().map(|&v| v != 0).collect() }
    }

    /// The 0-1 matrix with the same support, when every entry is already 0 or 1.
    pub fn as_transition(&self) -> Option<TransitionMatrix> {
        if self.entries.iter().all(|&v| v <= 1) {
            Some(TransitionMatrix { n: self.n, entries: self.entries.iter().map(|&v| v == 1).collect() })
        } else {
            None
        }
    }
}

impl From<&TransitionMatrix> for IntMatrix {
    fn from(a: &TransitionMatrix) -> Self {
        IntMatrix { n: a.n, entries: a.entries.iter().map(|&b| b as u64).collect() }
    }
}
