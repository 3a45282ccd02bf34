use num_traits::One;

use super::element::{CkElement, Coeff, Monomial};
use super::CkError;
use crate::matrix::TransitionMatrix;
use crate::sft::{enumerate_words, Word, DEFAULT_WORD_CAP};

/// Symbolic calculus in the Cuntz-Krieger algebra `O_A`.
///
/// Elements are finite combinations of `S_mu S_nu*`. The rewriting rules are
/// the defining relations: `S_mu* S_nu = delta A(mu) Q_t(mu)` for words of
/// equal length, `Q_eta S_alpha = A(eta o(alpha)) S_alpha`, and
/// `Q_i = sum_j A(i,j) P_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CkAlgebra {
    a: TransitionMatrix,
    word_cap: u64,
}

impl CkAlgebra {
    pub fn new(a: TransitionMatrix) -> Self {
        CkAlgebra { a, word_cap: DEFAULT_WORD_CAP }
    }

    pub fn with_word_cap(mut self, cap: u64) -> Self {
        self.word_cap = cap;
        self
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn word_cap(&self) -> u64 {
        self.word_cap
    }

    /// `L(k)`, sorted, with `L(0) = {e}`.
    pub fn words(&self, k: usize) -> Result<Vec<Word>, CkError> {
        Ok(enumerate_words(&self.a, k, self.word_cap)?)
    }

    // A(t(mu), j), with the empty word contributing 1.
    #[inline]
    fn follows(&self, w: &Word, j: usize) -> bool {
        w.terminus().is_none_or(|t| self.a.get(t, j))
    }

    /// The stored form of `S_mu S_nu*`, or `None` when the product vanishes:
    /// either word is inadmissible, or both are nonempty and their termini
    /// have no common successor (then `Q_t(mu) Q_t(nu) = 0`).
    pub(crate) fn mono(&self, mu: Word, nu: Word) -> Option<Monomial> {
        if !mu.admissible_in(&self.a) || !nu.admissible_in(&self.a) {
            return None;
        }
        if let (Some(s), Some(t)) = (mu.terminus(), nu.terminus()) {
            if !(0..self.n()).any(|j| self.a.get(s, j) && self.a.get(t, j)) {
                return None;
            }
        }
        Some(Monomial { left: mu, right: nu })
    }

    fn check(&self, w: &Word) -> Result<(), CkError> {
        w.check_range(self.n()).map_err(CkError::from)
    }

    /// `S_mu S_nu*` as an element (zero when it vanishes).
    pub fn monomial(&self, mu: &Word, nu: &Word) -> Result<CkElement, CkError> {
        self.check(mu)?;
        self.check(nu)?;
        Ok(self.mono(mu.clone(), nu.clone()).map(CkElement::from_monomial).unwrap_or_default())
    }

    pub fn identity(&self) -> CkElement {
        CkElement::identity()
    }

    /// `S_i`.
    pub fn s(&self, i: usize) -> CkElement {
        assert!(i < self.n(), "symbol out of range");
        CkElement::from_monomial(Monomial { left: Word::letter(i), right: Word::empty() })
    }

    /// `P_i = S_i S_i*`.
    pub fn p(&self, i: usize) -> CkElement {
        assert!(i < self.n(), "symbol out of range");
        CkElement::from_monomial(Monomial { left: Word::letter(i), right: Word::letter(i) })
    }

    /// `Q_i = sum_j A(i,j) P_j`.
    pub fn q(&self, i: usize) -> CkElement {
        self.a.successors(i).map(|j| self.p(j)).sum()
    }

    /// `S_alpha P_i S_beta*`.
    pub fn generator(&self, alpha: &Word, i: usize, beta: &Word) -> Result<CkElement, CkError> {
        self.check(alpha)?;
        self.check(beta)?;
        if i >= self.n() {
            return Err(CkError::SymbolOutOfRange { symbol: i + 1, n: self.n() });
        }
        for w in [alpha, beta] {
            if !w.admissible_in(&self.a) {
                return Err(CkError::InadmissibleWord(w.to_string()));
            }
        }
        if !self.follows(alpha, i) || !self.follows(beta, i) {
            return Ok(CkElement::zero());
        }
        Ok(self.mono(alpha.push(i), beta.push(i)).map(CkElement::from_monomial).unwrap_or_default())
    }

    // (S_mu S_nu*)(S_alpha S_beta*), accumulated into `out` with weight `c`.
    fn mul_monomials(&self, x: &Monomial, y: &Monomial, c: &Coeff, out: &mut CkElement) {
        let (mu, nu) = (&x.left, &x.right);
        let (alpha, beta) = (&y.left, &y.right);
        if nu.len() < alpha.len() {
            // alpha = nu gamma: S_nu* S_alpha = A(t(nu), o(gamma)) S_gamma
            let Some(gamma) = alpha.strip_prefix(nu) else { return };
            let o = gamma.origin().expect("nonempty");
            if self.follows(nu, o) {
                if let Some(m) = self.mono(mu.concat(&gamma), beta.clone()) {
                    out.add_term(m, c.clone());
                }
            }
        } else if nu.len() > alpha.len() {
            // nu = alpha gamma: S_nu* S_alpha = A(t(alpha), o(gamma)) S_gamma*
            let Some(gamma) = nu.strip_prefix(alpha) else { return };
            let o = gamma.origin().expect("nonempty");
            if self.follows(alpha, o) {
                if let Some(m) = self.mono(mu.clone(), beta.concat(&gamma)) {
                    out.add_term(m, c.clone());
                }
            }
        } else if nu == alpha {
            match nu.terminus() {
                None => {
                    if let Some(m) = self.mono(mu.clone(), beta.clone()) {
                        out.add_term(m, c.clone());
                    }
                }
                // S_mu Q_t S_beta* = sum_j A(t,j) A(t(mu),j) A(t(beta),j) S_{mu j} S_{beta j}*
                Some(t) => {
                    for j in self.a.successors(t) {
                        if self.follows(mu, j) && self.follows(beta, j) {
                            let m = Monomial { left: mu.push(j), right: beta.push(j) };
                            out.add_term(m, c.clone());
                        }
                    }
                }
            }
        }
    }

    pub fn multiply(&self, x: &CkElement, y: &CkElement) -> CkElement {
        let mut out = CkElement::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                self.mul_monomials(mx, my, &(cx * cy), &mut out);
            }
        }
        out
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a CkElement>) -> CkElement {
        factors.into_iter().fold(CkElement::identity(), |acc, f| self.multiply(&acc, f))
    }

    // Push every term down to right depth `depth` using
    // S_mu S_nu* = sum_j A(t(mu),j) A(t(nu),j) S_{mu j} S_{nu j}*.
    fn refine_into(&self, m: Monomial, c: &Coeff, depth: usize, out: &mut CkElement) {
        if m.right.len() == depth {
            out.add_term(m, c.clone());
            return;
        }
        for j in 0..self.n() {
            if self.follows(&m.left, j) && self.follows(&m.right, j) {
                let next = Monomial { left: m.left.push(j), right: m.right.push(j) };
                self.refine_into(next, c, depth, out);
            }
        }
    }

    /// Rewrite every term to right-word length exactly `depth`.
    pub fn refine_to_depth(&self, x: &CkElement, depth: usize) -> Result<CkElement, CkError> {
        let found = x.right_depth();
        if found > depth {
            return Err(CkError::DepthTooSmall { required: found, depth });
        }
        let mut out = CkElement::zero();
        for (m, c) in x.terms() {
            self.refine_into(m.clone(), c, depth, &mut out);
        }
        Ok(out)
    }

    /// Canonical form: each gauge-degree component refined to its own
    /// maximal right depth.
    pub fn normal_form(&self, x: &CkElement) -> CkElement {
        x.by_degree()
            .into_values()
            .map(|part| {
                let depth = part.right_depth();
                self.refine_to_depth(&part, depth).expect("depth is the maximum")
            })
            .sum()
    }

    /// Equality in `O_A`: the normal form of `x - y` vanishes.
    pub fn equal(&self, x: &CkElement, y: &CkElement) -> bool {
        self.normal_form(&(x - y)).is_zero()
    }

    /// `phi_A^l(x) = sum_{eta in L(l)} S_eta x S_eta*`.
    pub fn phi(&self, x: &CkElement, l: usize) -> Result<CkElement, CkError> {
        if l == 0 {
            return Ok(x.clone());
        }
        let mut out = CkElement::zero();
        for eta in self.words(l)? {
            let s_eta = CkElement::from_monomial(Monomial { left: eta.clone(), right: Word::empty() });
            let s_eta_star = s_eta.adjoint();
            let term = self.multiply(&self.multiply(&s_eta, x), &s_eta_star);
            out.add_assign_scaled(&term, &Coeff::one());
        }
        Ok(out)
    }

    /// `S_mu` for an arbitrary (possibly inadmissible) word, computed as the
    /// product `S_mu1 ... S_muk`.
    pub fn s_word(&self, mu: &Word) -> CkElement {
        let factors: Vec<CkElement> = mu.symbols().iter().map(|&i| self.s(i)).collect();
        self.product(&factors)
    }
}
