use rayon::prelude::*;

use super::algebra::CkAlgebra;
use super::element::{CkElement, Monomial};
use super::CkError;
use crate::sft::Word;

/// Element of `M_{w(m)} (x) O_A`: a `w(m) x w(m)` array of algebra elements
/// indexed by `L(m)` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    pub m: usize,
    pub index: Vec<Word>,
    entries: Vec<CkElement>,
}

impl BlockMatrix {
    pub fn zero(m: usize, index: Vec<Word>) -> Self {
        let d = index.len();
        BlockMatrix { m, index, entries: vec![CkElement::zero(); d * d] }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &CkElement {
        &self.entries[r * self.dim() + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut CkElement {
        let d = self.dim();
        &mut self.entries[r * d + c]
    }

    pub fn mul(&self, alg: &CkAlgebra, other: &BlockMatrix) -> BlockMatrix {
        assert_eq!(self.index, other.index, "block index mismatch");
        let d = self.dim();
        let entries = (0..d * d)
            .into_par_iter()
            .map(|idx| {
                let (r, c) = (idx / d, idx % d);
                (0..d).map(|k| alg.multiply(self.get(r, k), other.get(k, c))).sum()
            })
            .collect();
        BlockMatrix { m: self.m, index: self.index.clone(), entries }
    }

    /// Transpose with entrywise adjoint.
    pub fn adjoint(&self) -> BlockMatrix {
        let d = self.dim();
        let entries = (0..d * d).map(|idx| self.get(idx % d, idx / d).adjoint()).collect();
        BlockMatrix { m: self.m, index: self.index.clone(), entries }
    }

    /// First entry (row-major) where the two differ in `O_A`.
    pub fn first_mismatch(&self, alg: &CkAlgebra, other: &BlockMatrix) -> Option<(usize, usize)> {
        assert_eq!(self.index, other.index, "block index mismatch");
        let d = self.dim();
        (0..d * d).find(|&idx| !alg.equal(&self.entries[idx], &other.entries[idx])).map(|idx| (idx / d, idx % d))
    }

    pub fn equal(&self, alg: &CkAlgebra, other: &BlockMatrix) -> bool {
        self.first_mismatch(alg, other).is_none()
    }
}

/// `rho_m(x) = sum_{mu,nu in L(m)} e_{mu nu} (x) S_mu* x S_nu`.
pub fn rho(alg: &CkAlgebra, m: usize, x: &CkElement) -> Result<BlockMatrix, CkError> {
    assert!(m >= 1, "rho_m needs m >= 1");
    let index = alg.words(m)?;
    let d = index.len();
    let left: Vec<CkElement> = index
        .par_iter()
        .map(|mu| {
            let s_mu_star = CkElement::from_monomial(Monomial { left: Word::empty(), right: mu.clone() });
            alg.multiply(&s_mu_star, x)
        })
        .collect();
    let right: Vec<CkElement> =
        index.iter().map(|nu| CkElement::from_monomial(Monomial { left: nu.clone(), right: Word::empty() })).collect();
    let entries = (0..d * d).into_par_iter().map(|idx| alg.multiply(&left[idx / d], &right[idx % d])).collect();
    Ok(BlockMatrix { m, index, entries })
}

/// Sum of distinct matrix units `e_{rho,tau}` of `M_{w(m)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneBlock {
    dim: usize,
    entries: Vec<u8>,
}

impl ZeroOneBlock {
    pub fn zero(dim: usize) -> Self {
        ZeroOneBlock { dim, entries: vec![0; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.dim + c]
    }

    /// Set `e_{r,c}`; returns false if the unit was already present.
    pub fn insert(&mut self, r: usize, c: usize) -> bool {
        let slot = &mut self.entries[r * self.dim + c];
        let fresh = *slot == 0;
        *slot = 1;
        fresh
    }

    pub fn remove(&mut self, r: usize, c: usize) -> bool {
        let slot = &mut self.entries[r * self.dim + c];
        let present = *slot == 1;
        *slot = 0;
        present
    }

    /// Matrix units present, row-major.
    pub fn units(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().enumerate().filter(|(_, &v)| v == 1).map(move |(idx, _)| (idx / self.dim, idx % self.dim))
    }

    pub fn count(&self) -> usize {
        self.entries.iter().filter(|&&v| v == 1).count()
    }

    fn int_mul(lhs: &[u64], rhs: &[u64], d: usize) -> Vec<u64> {
        let mut out = vec![0u64; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = lhs[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * rhs[k * d + j];
                }
            }
        }
        out
    }

    /// `B B^T B = B` over the integers.
    pub fn is_partial_isometry(&self) -> bool {
        let d = self.dim;
        let b: Vec<u64> = self.entries.iter().map(|&v| v as u64).collect();
        let bt: Vec<u64> = (0..d * d).map(|idx| b[(idx % d) * d + idx / d]).collect();
        Self::int_mul(&Self::int_mul(&b, &bt, d), &b, d) == b
    }
}
