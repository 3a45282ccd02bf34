use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::SftError;
use crate::matrix::{word_count, TransitionMatrix};

pub const DEFAULT_WORD_CAP: u64 = 10_000_000;

/// Finite sequence of 0-based symbols. The empty word is `e`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(symbols: Vec<usize>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    /// Build from 1-based symbols.
    pub fn from_one_based(symbols: &[usize]) -> Self {
        Word(symbols.iter().map(|&s| s.checked_sub(1).expect("symbols are 1-based")).collect())
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First symbol, `o(mu)`.
    pub fn origin(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Last symbol, `t(mu)`.
    pub fn terminus(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, symbol: usize) -> Word {
        let mut v = self.0.clone();
        v.push(symbol);
        Word(v)
    }

    /// `gamma` with `self = prefix . gamma`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|rest| Word(rest.to_vec()))
    }

    /// Product of consecutive transitions. Empty and one-letter words are
    /// admissible. Symbols are not range checked.
    pub fn admissible_in(&self, a: &TransitionMatrix) -> bool {
        self.0.windows(2).all(|w| a.get(w[0], w[1]))
    }

    pub fn check_range(&self, n: usize) -> Result<(), SftError> {
        match self.0.iter().find(|&&s| s >= n) {
            Some(&s) => Err(SftError::SymbolOutOfRange { symbol: s + 1, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        f.write_str("(")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s + 1)?;
        }
        f.write_str(")")
    }
}

/// `A(mu) = 1`, with range checking against the alphabet.
pub fn is_admissible(a: &TransitionMatrix, mu: &Word) -> Result<bool, SftError> {
    mu.check_range(a.n())?;
    Ok(mu.admissible_in(a))
}

/// `L(k)` in lexicographic order, refusing when `w(k)` exceeds `cap`.
pub fn enumerate_words(a: &TransitionMatrix, k: usize, cap: u64) -> Result<Vec<Word>, SftError> {
    let count = if k == 0 { BigUint::from(1u8) } else { word_count(a, k as u64) };
    if count > BigUint::from(cap) {
        return Err(SftError::TooManyWords { count: count.to_string(), cap });
    }
    Ok(enumerate_unchecked(a, k))
}

// Level-wise extension in successor order keeps the output sorted.
fn enumerate_unchecked(a: &TransitionMatrix, k: usize) -> Vec<Word> {
    if k == 0 {
        return vec![Word::empty()];
    }
    let mut level: Vec<Vec<usize>> = (0..a.n()).map(|i| vec![i]).collect();
    for _ in 1..k {
        level = level
            .iter()
            .flat_map(|w| {
                let last = *w.last().expect("nonempty");
                a.successors(last).map(move |j| {
                    let mut next = w.clone();
                    next.push(j);
                    next
                })
            })
            .collect();
    }
    level.into_iter().map(Word).collect()
}
