use serde::Serialize;

use super::{IntMatrix, TransitionMatrix};

/// One edge of the multigraph of an integer matrix: the `copy`-th of the
/// `M(source, target)` parallel edges. All fields are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EdgeLabel {
    pub source: usize,
    pub target: usize,
    pub copy: u64,
}

/// Edge presentation `M = S T`, `A' = T S` of a nonnegative integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualDecomposition {
    pub a_prime: TransitionMatrix,
    /// `#Sigma x #Sigma'`, `S(i, e) = 1` iff `e` starts at `i`.
    pub s: Vec<Vec<u8>>,
    /// `#Sigma' x #Sigma`, `T(e, k) = 1` iff `e` ends at `k`.
    pub t: Vec<Vec<u8>>,
    pub edges: Vec<EdgeLabel>,
}

/// Build the 0-1 edge matrix of `m`. Edges are ordered lexicographically by
/// (source, target, copy).
pub fn dual_matrix(m: &IntMatrix) -> DualDecomposition {
    let n = m.n();
    let edges: Vec<EdgeLabel> = (0..n)
        .flat_map(|source| (0..n).map(move |target| (source, target)))
        .flat_map(|(source, target)| (0..m.get(source, target)).map(move |copy| EdgeLabel { source, target, copy }))
        .collect();
    let e = edges.len();
    let s = (0..n).map(|i| edges.iter().map(|edge| (edge.source == i) as u8).collect()).collect();
    let t = edges.iter().map(|edge| (0..n).map(|k| (edge.target == k) as u8).collect()).collect();
    let raw: Vec<Vec<i64>> =
        edges.iter().map(|from| edges.iter().map(|to| (from.target == to.source) as i64).collect()).collect();
    // Every edge target has an outgoing edge and every source an incoming one,
    // because M has no zero row or column.
    let a_prime = super::validate(&raw).expect("edge matrix of a valid IntMatrix is a transition matrix");
    debug_assert_eq!(a_prime.n(), e);
    DualDecomposition { a_prime, s, t, edges }
}

/// Exact product of two rectangular 0-1 matrices.
pub fn int_product(lhs: &[Vec<u8>], rhs: &[Vec<u8>]) -> Vec<Vec<u64>> {
    let inner = rhs.len();
    let cols = rhs.first().map_or(0, Vec::len);
    lhs.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols).map(|j| (0..inner).map(|k| row[k] as u64 * rhs[k][j] as u64).sum()).collect()
        })
        .collect()
}

impl DualDecomposition {
    /// `S T` and `T S` as exact integer matrices.
    pub fn products(&self) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
        (int_product(&self.s, &self.t), int_product(&self.t, &self.s))
    }

    /// Both factorization identities hold exactly.
    pub fn check(&self, m: &IntMatrix) -> bool {
        let (st, ts) = self.products();
        let a_prime: Vec<Vec<u64>> =
            self.a_prime.rows().into_iter().map(|r| r.into_iter().map(|v| v as u64).collect()).collect();
        st == m.rows() && ts == a_prime
    }
}
