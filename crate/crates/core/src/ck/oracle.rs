//! Finite-dimensional picture of the degree-0 part. At depth `n` the span of
//! `S_mu S_nu*` with `|mu| = |nu| = n` is a direct sum over symbols `j` of
//! full matrix algebras: block `j` is indexed by the words of `L(n)` that can
//! be followed by `j`, and `S_mu S_nu* = sum_j A(t(mu),j) A(t(nu),j) S_mu P_j S_nu*`
//! puts the unit `E_{mu nu}` into every block both words can enter.

use std::collections::HashMap;

use num_traits::Zero;

use super::algebra::CkAlgebra;
use super::element::{CkElement, Coeff};
use super::CkError;
use crate::sft::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfBlock {
    /// The symbol `j` of the projection `P_j` cut out by this block.
    pub successor: usize,
    pub index: Vec<Word>,
    entries: Vec<Coeff>,
}

impl AfBlock {
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.entries[r * self.dim() + c]
    }
}

/// Block-diagonal rational matrix, one block per terminus symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfMatrix {
    pub depth: usize,
    pub blocks: Vec<AfBlock>,
}

impl AfMatrix {
    pub fn mul(&self, other: &AfMatrix) -> AfMatrix {
        assert_eq!(self.depth, other.depth, "depth mismatch");
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| {
                let d = x.dim();
                let mut entries = vec![Coeff::zero(); d * d];
                for i in 0..d {
                    for k in 0..d {
                        let a = x.get(i, k);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..d {
                            entries[i * d + j] += a * y.get(k, j);
                        }
                    }
                }
                AfBlock { successor: x.successor, index: x.index.clone(), entries }
            })
            .collect();
        AfMatrix { depth: self.depth, blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.entries.iter().all(Zero::is_zero))
    }
}

/// Matrix of a degree-0 element of right depth at most `n`.
pub fn af_block_oracle(alg: &CkAlgebra, n: usize, x: &CkElement) -> Result<AfMatrix, CkError> {
    if n == 0 {
        return Err(CkError::PreconditionViolated("oracle depth must be positive".into()));
    }
    if let Some((m, _)) = x.terms().find(|(m, _)| m.degree() != 0) {
        return Err(CkError::NonZeroDegree(m.degree()));
    }
    let depth = x.right_depth();
    if depth > n {
        return Err(CkError::DepthExceeded { depth, n });
    }
    let words = alg.words(n)?;
    let a = alg.matrix();
    let mut blocks: Vec<AfBlock> = (0..alg.n())
        .map(|j| {
            let index: Vec<Word> =
                words.iter().filter(|w| a.get(w.terminus().expect("depth >= 1"), j)).cloned().collect();
            let d = index.len();
            AfBlock { successor: j, index, entries: vec![Coeff::zero(); d * d] }
        })
        .collect();
    let positions: Vec<HashMap<Word, usize>> =
        blocks.iter().map(|b| b.index.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect()).collect();
    for (m, c) in alg.refine_to_depth(x, n)?.terms() {
        let (s, t) = (m.left().terminus().expect("depth >= 1"), m.right().terminus().expect("depth >= 1"));
        for j in a.successors(s).filter(|&j| a.get(t, j)) {
            let (r, col) = (positions[j][m.left()], positions[j][m.right()]);
            let d = blocks[j].dim();
            blocks[j].entries[r * d + col] += c;
        }
    }
    Ok(AfMatrix { depth: n, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ck::element::coeff;
    use crate::matrix::TransitionMatrix;

    #[test]
    fn projection_spreads_over_successors() {
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        let o = af_block_oracle(&alg, 1, &alg.p(0)).unwrap();
        // P_1 = S_1 S_1* sits in both blocks: 1 can be followed by 1 and 2
        assert_eq!(o.blocks[0].get(0, 0), &coeff(1));
        assert_eq!(o.blocks[0].get(1, 1), &coeff(0));
        assert_eq!(o.blocks[1].get(0, 0), &coeff(1));
        let id = af_block_oracle(&alg, 2, &alg.identity()).unwrap();
        // words of length 2 that can be followed by 1, and by 2
        assert_eq!((id.blocks[0].dim(), id.blocks[1].dim()), (3, 2));
        assert_eq!(id.mul(&id), id);
    }

    #[test]
    fn rejects_bad_inputs() {
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        assert_eq!(af_block_oracle(&alg, 2, &alg.s(0)), Err(CkError::NonZeroDegree(1)));
        let deep = alg.refine_to_depth(&alg.p(0), 3).unwrap();
        assert_eq!(af_block_oracle(&alg, 2, &deep), Err(CkError::DepthExceeded { depth: 3, n: 2 }));
    }

    #[test]
    fn mixed_termini_are_split() {
        // S_1 S_2* is nonzero in the golden mean (1 and 2 both precede 1)
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        let x = alg.monomial(&Word::from_one_based(&[1]), &Word::from_one_based(&[2])).unwrap();
        let o = af_block_oracle(&alg, 1, &x).unwrap();
        assert_eq!(o.blocks[0].get(0, 1), &coeff(1));
        assert!(o.blocks[1].entries.iter().all(Zero::is_zero));
        assert!(!o.is_zero());
    }

    #[test]
    fn multiplicative_on_a_pair() {
        let alg = CkAlgebra::new(TransitionMatrix::full(2));
        let x = alg.monomial(&Word::from_one_based(&[1, 2]), &Word::from_one_based(&[2, 2])).unwrap();
        let y = alg.monomial(&Word::from_one_based(&[2]), &Word::from_one_based(&[1])).unwrap();
        let xy = alg.multiply(&x, &y);
        let lhs = af_block_oracle(&alg, 3, &xy).unwrap();
        let rhs = af_block_oracle(&alg, 3, &x).unwrap().mul(&af_block_oracle(&alg, 3, &y).unwrap());
        assert_eq!(lhs, rhs);
    }
}
