//! Exact check of the defining relations and their standard consequences.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use rayon::prelude::*;

use super::algebra::CkAlgebra;
use super::element::{coeff, CkElement};
use super::report::{Failure, VerificationReport};
use super::CkError;
use crate::sft::Word;

/// Word lengths covered by the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationSuiteConfig {
    /// `S_mu* S_nu` for `|mu| = |nu| <= word_len`.
    pub word_len: usize,
    /// `Q_eta S_alpha` for `|eta| <= eta_len`...
    pub eta_len: usize,
    /// ...and `1 <= |alpha| <= alpha_len`.
    pub alpha_len: usize,
    /// `sum_{mu in L(m)} S_mu S_mu* = 1` for `m <= unit_depth`.
    pub unit_depth: usize,
}

impl Default for RelationSuiteConfig {
    fn default() -> Self {
        RelationSuiteConfig { word_len: 4, eta_len: 3, alpha_len: 2, unit_depth: 4 }
    }
}

impl RelationSuiteConfig {
    /// Defaults, shortened so that `n^len` stays at most 256 for every
    /// family that ranges over all of `Sigma^len`.
    pub fn for_alphabet(n: usize) -> Self {
        let fit = |len: usize| (1..=len).rev().find(|&k| n.saturating_pow(k as u32) <= 256).unwrap_or(1);
        let d = RelationSuiteConfig::default();
        RelationSuiteConfig {
            word_len: fit(d.word_len),
            eta_len: fit(d.eta_len),
            alpha_len: fit(d.alpha_len),
            unit_depth: d.unit_depth,
        }
    }
}

/// Deliberate corruption for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationFault {
    /// Expect `sum_j P_j = 2` instead of `1`.
    PartitionOfUnity,
}

// Every sequence in Sigma^k, admissible or not, in lexicographic order.
fn all_sequences(n: usize, k: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..n).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::new).collect()
}

struct Case {
    label: String,
    lhs: CkElement,
    rhs: CkElement,
}

pub fn run_relation_suite(alg: &CkAlgebra) -> Result<VerificationReport, CkError> {
    run_relation_suite_with(alg, RelationSuiteConfig::for_alphabet(alg.n()), None)
}

pub fn run_relation_suite_with(
    alg: &CkAlgebra,
    config: RelationSuiteConfig,
    fault: Option<RelationFault>,
) -> Result<VerificationReport, CkError> {
    let n = alg.n();
    let a = alg.matrix();
    let max_len = config.word_len.max(config.eta_len).max(config.alpha_len);

    // S_mu as a product of generators, for every sequence up to max_len.
    let mut s: HashMap<Word, CkElement> = HashMap::new();
    s.insert(Word::empty(), alg.identity());
    for k in 1..=max_len {
        for w in all_sequences(n, k) {
            let (head, last) = w.symbols().split_at(k - 1);
            let prefix = &s[&Word::new(head.to_vec())];
            let value = alg.multiply(prefix, &alg.s(last[0]));
            s.insert(w, value);
        }
    }

    let mut cases = Vec::new();
    for k in 1..=config.word_len {
        let words = all_sequences(n, k);
        for mu in &words {
            let mu_star = s[mu].adjoint();
            for nu in &words {
                let rhs = if mu == nu && mu.admissible_in(a) {
                    alg.q(mu.terminus().expect("nonempty"))
                } else {
                    CkElement::zero()
                };
                cases.push(Case {
                    label: format!("S_{mu}* S_{nu} = delta A(mu) Q_t(mu)"),
                    lhs: alg.multiply(&mu_star, &s[nu]),
                    rhs,
                });
            }
        }
    }
    for eta_len in 0..=config.eta_len {
        for eta in all_sequences(n, eta_len) {
            let q_eta = alg.multiply(&s[&eta].adjoint(), &s[&eta]);
            for alpha_len in 1..=config.alpha_len {
                for alpha in all_sequences(n, alpha_len) {
                    let o = alpha.origin().expect("nonempty");
                    let admissible = eta.push(o).admissible_in(a);
                    cases.push(Case {
                        label: format!("Q_{eta} S_{alpha} = A(eta o(alpha)) S_alpha"),
                        lhs: alg.multiply(&q_eta, &s[&alpha]),
                        rhs: if admissible { s[&alpha].clone() } else { CkElement::zero() },
                    });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            cases.push(Case {
                label: format!("P_{} P_{} = delta P_i", i + 1, j + 1),
                lhs: alg.multiply(&alg.p(i), &alg.p(j)),
                rhs: if i == j { alg.p(i) } else { CkElement::zero() },
            });
        }
        cases.push(Case {
            label: format!("S_{0}* S_{0} = sum_j A({0},j) P_j", i + 1),
            lhs: alg.multiply(&alg.s(i).adjoint(), &alg.s(i)),
            rhs: a.successors(i).map(|j| alg.p(j)).sum(),
        });
    }
    let unit = match fault {
        Some(RelationFault::PartitionOfUnity) => alg.identity().scale(&coeff(2)),
        None => alg.identity(),
    };
    cases.push(Case { label: "sum_j P_j = 1".into(), lhs: (0..n).map(|j| alg.p(j)).sum(), rhs: unit });
    for m in 1..=config.unit_depth {
        let mut total = CkElement::zero();
        for mu in alg.words(m)? {
            let s_mu = alg.s_word(&mu);
            total.add_assign_scaled(&alg.multiply(&s_mu, &s_mu.adjoint()), &num_rational::BigRational::one());
        }
        cases.push(Case { label: format!("sum over L({m}) of S_mu S_mu* = 1"), lhs: total, rhs: alg.identity() });
    }

    let failures: Vec<Failure> = cases
        .par_iter()
        .filter(|c| !alg.equal(&c.lhs, &c.rhs))
        .map(|c| Failure { case: c.label.clone(), l: None, detail: format!("lhs {} vs rhs {}", c.lhs, c.rhs) })
        .collect();
    let params = BTreeMap::from([
        ("word_len".to_string(), config.word_len),
        ("eta_len".to_string(), config.eta_len),
        ("alpha_len".to_string(), config.alpha_len),
        ("unit_depth".to_string(), config.unit_depth),
    ]);
    Ok(VerificationReport { cases: cases.len(), passed: cases.len() - failures.len(), failures, params })
}
