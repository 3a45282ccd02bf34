//! Closed forms of `rho_m phi_A^l (S_alpha P_i S_beta*)` and their checker.
//!
//! For `|beta| <= |alpha| <= n0`, `0 <= l <= n - 1` and `m >= n + n0`:
//!
//! ```text
//! |beta| < |alpha|:  rho_m phi^l (S_alpha P_i S_beta*) = sum_{|mu| = |alpha|-|beta|} X(mu) (x) S_mu
//!     X(mu) = sum e_{eta alpha mu'', eta beta mu'' mu}
//! |beta| = |alpha|:  rho_m phi^l (S_alpha P_i S_beta*) = sum_j X_j (x) Q_j
//!     X_j   = sum e_{eta alpha mu'', eta beta mu''}        with t(mu'') = j
//! ```
//!
//! where `eta` runs over `L(l)`, `mu''` over words of length `m - l - |alpha|`
//! starting with `i`, and both index words must lie in `L(m)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::algebra::CkAlgebra;
use super::block::{rho, BlockMatrix, ZeroOneBlock};
use super::element::CkElement;
use super::report::{Failure, VerificationReport};
use super::CkError;
use crate::sft::Word;

/// The ranges `n0` (generator length) and `n` (number of iterates) the
/// identities are stated for. The embedding depth is at least `n + n0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormBounds {
    pub n0: usize,
    pub n: usize,
}

impl ClosedFormBounds {
    pub fn min_depth(&self) -> usize {
        self.n + self.n0
    }
}

/// Partial-isometry witnesses of one identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    /// `|beta| < |alpha|`: `mu -> X(mu)` over `L(|alpha| - |beta|)`.
    Shift(BTreeMap<Word, ZeroOneBlock>),
    /// `|beta| = |alpha|`: `X_j`, indexed by the symbol `j`.
    Diagonal(Vec<ZeroOneBlock>),
}

impl ClosedForm {
    pub fn blocks(&self) -> Box<dyn Iterator<Item = &ZeroOneBlock> + '_> {
        match self {
            ClosedForm::Shift(map) => Box::new(map.values()),
            ClosedForm::Diagonal(v) => Box::new(v.iter()),
        }
    }

    fn blocks_mut(&mut self) -> Box<dyn Iterator<Item = &mut ZeroOneBlock> + '_> {
        match self {
            ClosedForm::Shift(map) => Box::new(map.values_mut()),
            ClosedForm::Diagonal(v) => Box::new(v.iter_mut()),
        }
    }

    pub fn unit_count(&self) -> usize {
        self.blocks().map(ZeroOneBlock::count).sum()
    }

    /// Delete the first matrix unit of the first nonempty block.
    pub fn remove_first_unit(&mut self) -> bool {
        for b in self.blocks_mut() {
            let first = b.units().next();
            if let Some((r, c)) = first {
                return b.remove(r, c);
            }
        }
        false
    }

    /// `sum_mu X(mu) (x) S_mu` or `sum_j X_j (x) Q_j` as a block matrix.
    pub fn assemble(&self, alg: &CkAlgebra, m: usize, index: &[Word]) -> BlockMatrix {
        let mut out = BlockMatrix::zero(m, index.to_vec());
        let mut place = |block: &ZeroOneBlock, value: &CkElement| {
            for (r, c) in block.units() {
                let slot = out.get_mut(r, c);
                *slot = &*slot + value;
            }
        };
        match self {
            ClosedForm::Shift(map) => {
                for (mu, block) in map {
                    let s_mu = alg.monomial(mu, &Word::empty()).expect("symbols in range");
                    place(block, &s_mu);
                }
            }
            ClosedForm::Diagonal(blocks) => {
                for (j, block) in blocks.iter().enumerate() {
                    place(block, &alg.q(j));
                }
            }
        }
        out
    }
}

// Shared enumeration data for one embedding depth.
struct DepthContext {
    m: usize,
    index: Vec<Word>,
    position: HashMap<Word, usize>,
    languages: Vec<Vec<Word>>,
}

impl DepthContext {
    fn new(alg: &CkAlgebra, m: usize) -> Result<Self, CkError> {
        let index = alg.words(m)?;
        let position = index.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let languages = (0..=m).map(|k| alg.words(k)).collect::<Result<_, _>>()?;
        Ok(DepthContext { m, index, position, languages })
    }

    fn lookup(&self, w: &Word) -> Option<usize> {
        self.position.get(w).copied()
    }
}

fn check_hypotheses(
    alg: &CkAlgebra,
    alpha: &Word,
    beta: &Word,
    i: usize,
    l: usize,
    m: usize,
    bounds: ClosedFormBounds,
) -> Result<(), CkError> {
    let mut failed = Vec::new();
    if beta.len() > alpha.len() {
        failed.push(format!("|beta| = {} > |alpha| = {}", beta.len(), alpha.len()));
    }
    if alpha.len() > bounds.n0 {
        failed.push(format!("|alpha| = {} > n0 = {}", alpha.len(), bounds.n0));
    }
    if bounds.n == 0 || l > bounds.n - 1 {
        failed.push(format!("l = {l} is not in 0..=n-1 with n = {}", bounds.n));
    }
    if m < bounds.min_depth() {
        failed.push(format!("m = {m} < n + n0 = {}", bounds.min_depth()));
    }
    if i >= alg.n() {
        failed.push(format!("symbol {} outside 1..={}", i + 1, alg.n()));
    }
    for (name, w) in [("alpha", alpha), ("beta", beta)] {
        if w.check_range(alg.n()).is_err() || !w.admissible_in(alg.matrix()) {
            failed.push(format!("{name} = {w} is not an admissible word"));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CkError::PreconditionViolated(failed.join("; ")))
    }
}

fn build_closed_form(alg: &CkAlgebra, ctx: &DepthContext, alpha: &Word, beta: &Word, i: usize, l: usize) -> ClosedForm {
    let dim = ctx.index.len();
    let tail_len = ctx.m - l - alpha.len();
    let tails: Vec<&Word> = ctx.languages[tail_len].iter().filter(|w| w.origin() == Some(i)).collect();
    let etas = &ctx.languages[l];
    if beta.len() < alpha.len() {
        let shifts = &ctx.languages[alpha.len() - beta.len()];
        let mut blocks: BTreeMap<Word, ZeroOneBlock> =
            shifts.iter().map(|mu| (mu.clone(), ZeroOneBlock::zero(dim))).collect();
        for eta in etas {
            let eta_alpha = eta.concat(alpha);
            let eta_beta = eta.concat(beta);
            for tail in &tails {
                let Some(r) = ctx.lookup(&eta_alpha.concat(tail)) else {
                    continue;
                };
                let col_prefix = eta_beta.concat(tail);
                for mu in shifts {
                    if let Some(c) = ctx.lookup(&col_prefix.concat(mu)) {
                        let fresh = blocks.get_mut(mu).expect("present").insert(r, c);
                        debug_assert!(fresh, "matrix unit repeated");
                    }
                }
            }
        }
        ClosedForm::Shift(blocks)
    } else {
        let mut blocks = vec![ZeroOneBlock::zero(dim); alg.n()];
        for eta in etas {
            let eta_alpha = eta.concat(alpha);
            let eta_beta = eta.concat(beta);
            for tail in &tails {
                let j = tail.terminus().expect("tails are nonempty");
                let (Some(r), Some(c)) = (ctx.lookup(&eta_alpha.concat(tail)), ctx.lookup(&eta_beta.concat(tail)))
                else {
                    continue;
                };
                let fresh = blocks[j].insert(r, c);
                debug_assert!(fresh, "matrix unit repeated");
            }
        }
        ClosedForm::Diagonal(blocks)
    }
}

/// The explicit witnesses `X(mu)` or `X_j` for one generator and one `l`.
pub fn closed_form(
    alg: &CkAlgebra,
    alpha: &Word,
    beta: &Word,
    i: usize,
    l: usize,
    m: usize,
    bounds: ClosedFormBounds,
) -> Result<ClosedForm, CkError> {
    check_hypotheses(alg, alpha, beta, i, l, m, bounds)?;
    let ctx = DepthContext::new(alg, m)?;
    Ok(build_closed_form(alg, &ctx, alpha, beta, i, l))
}

/// One `(generator, l)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCase {
    pub alpha: Word,
    pub i: usize,
    pub beta: Word,
    pub l: usize,
}

impl GeneratorCase {
    pub fn generator_label(&self) -> String {
        format!("S_{} P_{} S_{}*", self.alpha, self.i + 1, self.beta)
    }
}

/// Compare `rho_m phi^l(generator)` with an assembled closed form and test
/// every witness for being a partial isometry.
pub fn check_case(
    alg: &CkAlgebra,
    case: &GeneratorCase,
    m: usize,
    index: &[Word],
    form: &ClosedForm,
) -> Result<Vec<Failure>, CkError> {
    let generator = alg.generator(&case.alpha, case.i, &case.beta)?;
    let lhs = rho(alg, m, &alg.phi(&generator, case.l)?)?;
    let rhs = form.assemble(alg, m, index);
    let mut failures = Vec::new();
    if let Some((r, c)) = lhs.first_mismatch(alg, &rhs) {
        failures.push(Failure {
            case: case.generator_label(),
            l: Some(case.l),
            detail: format!(
                "mismatch at entry ({}, {}): rho side {} vs closed form {}",
                index[r],
                index[c],
                lhs.get(r, c),
                rhs.get(r, c)
            ),
        });
    }
    let bad_blocks: Vec<String> = match form {
        ClosedForm::Shift(map) => {
            map.iter().filter(|(_, b)| !b.is_partial_isometry()).map(|(mu, _)| format!("X{mu}")).collect()
        }
        ClosedForm::Diagonal(v) => v
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_partial_isometry())
            .map(|(j, _)| format!("X_{}", j + 1))
            .collect(),
    };
    if !bad_blocks.is_empty() {
        failures.push(Failure {
            case: case.generator_label(),
            l: Some(case.l),
            detail: format!("not a partial isometry: {}", bad_blocks.join(", ")),
        });
    }
    Ok(failures)
}

/// Deliberate corruption for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessFault {
    /// Remove one matrix unit from the first case that has any.
    DropUnit,
}

/// All cases `|beta| <= |alpha| <= n0`, `i` in the alphabet, `l < n`, ordered
/// by `alpha`, then `beta`, then `i`, then `l`.
pub fn generator_cases(alg: &CkAlgebra, bounds: ClosedFormBounds) -> Result<Vec<GeneratorCase>, CkError> {
    let mut cases = Vec::new();
    for a_len in 0..=bounds.n0 {
        for alpha in alg.words(a_len)? {
            for b_len in 0..=a_len {
                for beta in alg.words(b_len)? {
                    for i in 0..alg.n() {
                        for l in 0..bounds.n {
                            cases.push(GeneratorCase { alpha: alpha.clone(), i, beta: beta.clone(), l });
                        }
                    }
                }
            }
        }
    }
    Ok(cases)
}

/// Check every case at depth `m = n + n0`.
pub fn verify_closed_forms(alg: &CkAlgebra, n0: usize, n: usize) -> Result<VerificationReport, CkError> {
    verify_closed_forms_with(alg, n0, n, None)
}

pub fn verify_closed_forms_with(
    alg: &CkAlgebra,
    n0: usize,
    n: usize,
    fault: Option<WitnessFault>,
) -> Result<VerificationReport, CkError> {
    if n0 == 0 || n == 0 {
        return Err(CkError::PreconditionViolated("n0 and n must be positive".into()));
    }
    let bounds = ClosedFormBounds { n0, n };
    let m = bounds.min_depth();
    let ctx = DepthContext::new(alg, m)?;
    let cases = generator_cases(alg, bounds)?;
    let mut forms: Vec<ClosedForm> =
        cases.iter().map(|c| build_closed_form(alg, &ctx, &c.alpha, &c.beta, c.i, c.l)).collect();
    if let Some(WitnessFault::DropUnit) = fault {
        if let Some(form) = forms.iter_mut().find(|f| f.unit_count() > 0) {
            form.remove_first_unit();
        }
    }
    let outcomes = cases
        .par_iter()
        .zip(forms.par_iter())
        .map(|(case, form)| check_case(alg, case, m, &ctx.index, form))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = outcomes.iter().filter(|f| f.is_empty()).count();
    let params = BTreeMap::from([("n0".to_string(), n0), ("n".to_string(), n), ("m".to_string(), m)]);
    Ok(VerificationReport { cases: cases.len(), passed, failures: outcomes.into_iter().flatten().collect(), params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::TransitionMatrix;

    fn w(s: &[usize]) -> Word {
        Word::from_one_based(s)
    }

    #[test]
    fn diagonal_witness_golden_mean() {
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        let bounds = ClosedFormBounds { n0: 1, n: 1 };
        let form = closed_form(&alg, &w(&[1]), &w(&[1]), 0, 0, 2, bounds).unwrap();
        let ClosedForm::Diagonal(blocks) = &form else { panic!("expected X_j") };
        // index L(2) = (1,1), (1,2), (2,1); only e_{(1,1),(1,1)} in X_1
        assert_eq!(blocks[0].units().collect::<Vec<_>>(), vec![(0, 0)]);
        assert_eq!(blocks[1].count(), 0);
        for b in form.blocks() {
            assert!(b.is_partial_isometry());
            assert!(b.units().all(|(r, c)| r == c));
        }
    }

    #[test]
    fn empty_words_give_diagonal_projections() {
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        let bounds = ClosedFormBounds { n0: 1, n: 2 };
        // X_j = sum e_{eta mu', eta mu'} over o(mu') = 1, t(mu') = j
        let form = closed_form(&alg, &Word::empty(), &Word::empty(), 0, 1, 3, bounds).unwrap();
        let ClosedForm::Diagonal(blocks) = &form else { panic!("expected X_j") };
        let index = alg.words(3).unwrap();
        for (j, b) in blocks.iter().enumerate() {
            for (r, c) in b.units() {
                assert_eq!(r, c);
                let word = index[r].symbols();
                assert_eq!(word[1], 0);
                assert_eq!(word[2], j);
            }
        }
        assert_eq!(form.unit_count(), 4);
    }

    #[test]
    fn shift_witness_full_two() {
        let alg = CkAlgebra::new(TransitionMatrix::full(2));
        let bounds = ClosedFormBounds { n0: 1, n: 2 };
        let form = closed_form(&alg, &w(&[1]), &Word::empty(), 0, 1, 3, bounds).unwrap();
        let ClosedForm::Shift(map) = &form else { panic!("expected X(mu)") };
        assert_eq!(map.keys().cloned().collect::<Vec<_>>(), vec![w(&[1]), w(&[2])]);
        for b in map.values() {
            assert!(b.is_partial_isometry());
            // eta in {1,2}, mu'' = (1): row eta 1 1, column eta 1 mu
            assert_eq!(b.count(), 2);
        }
    }

    #[test]
    fn hypotheses_are_reported() {
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        let bounds = ClosedFormBounds { n0: 1, n: 1 };
        let err = closed_form(&alg, &w(&[1]), &w(&[1, 1]), 0, 1, 1, bounds).unwrap_err();
        let CkError::PreconditionViolated(msg) = err else { panic!() };
        assert!(msg.contains("|beta| = 2 > |alpha| = 1"));
        assert!(msg.contains("l = 1"));
        assert!(msg.contains("m = 1 < n + n0 = 2"));
        assert!(closed_form(&alg, &w(&[2, 2]), &Word::empty(), 0, 0, 3, ClosedFormBounds { n0: 2, n: 1 }).is_err());
    }

    #[test]
    fn golden_mean_small_case_passes() {
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        let report = verify_closed_forms(&alg, 1, 1).unwrap();
        assert!(report.all_passed(), "{:?}", report.failures);
        assert_eq!(report.cases, report.passed);
        // alpha in {e, 1, 2}; beta with |beta| <= |alpha|; two symbols; l = 0
        assert_eq!(report.cases, (1 + 2 * 3) * 2);
    }

    #[test]
    fn dropped_unit_is_detected() {
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        let report = verify_closed_forms_with(&alg, 1, 1, Some(WitnessFault::DropUnit)).unwrap();
        assert_eq!(report.passed + 1, report.cases);
        assert_eq!(report.failures.len(), 1);
        assert!(report.failures[0].detail.contains("mismatch"));
    }

    #[test]
    fn corrupted_diagonal_witness_mismatches() {
        let alg = CkAlgebra::new(TransitionMatrix::golden_mean());
        let bounds = ClosedFormBounds { n0: 1, n: 1 };
        let case = GeneratorCase { alpha: w(&[1]), i: 0, beta: w(&[1]), l: 0 };
        let index = alg.words(2).unwrap();
        let mut form = closed_form(&alg, &case.alpha, &case.beta, case.i, case.l, 2, bounds).unwrap();
        assert!(check_case(&alg, &case, 2, &index, &form).unwrap().is_empty());
        assert!(form.remove_first_unit());
        let failures = check_case(&alg, &case, 2, &index, &form).unwrap();
        assert_eq!(failures.len(), 1);
    }
}
