//! The one-sided shift space `X_A`: admissible words, cylinder sets, and
//! the Parry measure of maximal entropy.

mod parry;
mod report;
mod word;

use thiserror::Error;

use crate::matrix::MatrixError;

pub use parry::{
    cylinder_probability, markov_entropy, parry_measure, partition_entropy, partition_entropy_capped, shannon_entropy,
    ParryData,
};
pub use report::{ConvergenceReport, ConvergenceRow};
pub use word::{enumerate_words, is_admissible, Word, DEFAULT_WORD_CAP};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SftError {
    #[error("symbol {symbol} is outside the alphabet 1..={n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("{count} words exceed the enumeration cap {cap}")]
    TooManyWords { count: String, cap: u64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
