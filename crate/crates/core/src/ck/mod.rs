//! Exact symbolic algebra of Cuntz-Krieger monomials.
//!
//! Equality is decided by a normal form: split by gauge degree, then refine
//! each homogeneous part to a common right-word length. At a fixed length
//! the refined monomials are linearly independent (for degree 0 they are the
//! matrix units of [`oracle::af_block_oracle`]), so two elements agree
//! exactly when their normal forms do.

mod algebra;
mod block;
mod element;
pub mod oracle;
pub mod relations;
mod report;
pub mod witness;

use thiserror::Error;

use crate::sft::SftError;

pub use algebra::CkAlgebra;
pub use block::{rho, BlockMatrix, ZeroOneBlock};
pub use element::{coeff, CkElement, Coeff, Monomial};
pub use oracle::{af_block_oracle, AfMatrix};
pub use relations::{run_relation_suite, run_relation_suite_with, RelationFault, RelationSuiteConfig};
pub use report::{Failure, VerificationReport};
pub use witness::{
    closed_form, verify_closed_forms, verify_closed_forms_with, ClosedForm, ClosedFormBounds, WitnessFault,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CkError {
    #[error("word {0} is not admissible")]
    InadmissibleWord(String),
    #[error("symbol {symbol} is outside the alphabet 1..={n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("element has right depth {required}, cannot refine to {depth}")]
    DepthTooSmall { required: usize, depth: usize },
    #[error("element has nonzero gauge degree {0}")]
    NonZeroDegree(i64),
    #[error("element has right depth {depth} > {n}")]
    DepthExceeded { depth: usize, n: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Words(SftError),
}

impl From<SftError> for CkError {
    fn from(e: SftError) -> Self {
        match e {
            SftError::SymbolOutOfRange { symbol, n } => CkError::SymbolOutOfRange { symbol, n },
            other => CkError::Words(other),
        }
    }
}
