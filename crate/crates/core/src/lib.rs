//! Topological entropy of one-sided subshifts of finite type, computed three
//! independent ways (Perron root, word growth, Parry measure), together with
//! an exact symbolic calculus for Cuntz-Krieger algebras `O_A`: normal forms
//! of monomials `S_mu S_nu*`, the canonical map `phi_A`, the embeddings
//! `rho_m` and a checker for the closed forms of `rho_m phi_A^l` on the
//! generators `S_alpha P_i S_beta*`.

pub mod ck;
pub mod matrix;
pub mod numfmt;
pub mod sft;

pub use matrix::{validate, IntMatrix, MatrixError, TransitionMatrix};
pub use numfmt::LogBase;
pub use sft::{SftError, Word};
