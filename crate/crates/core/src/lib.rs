//! Invariants of tuples of orthogonal matrices along group words, with the
//! explicit constructions needed to test them.
//!
//! Every computation runs over a [`Scalar`] backend: exact Gaussian rationals
//! or `Complex64` with an explicit [`Tolerance`].

pub mod analysis;
pub mod io;
pub mod linalg;
pub mod q;
pub mod report;
pub mod sample;
pub mod so;
pub mod words;

pub use linalg::{
    block_diag, determinant, mat_mul, pfaffian, rank, Backend, Complex64, Form, GaussianRational,
    Matrix, Scalar, Tolerance,
};
pub use q::{q_fast, q_kl, q_n, q_naive, q_words, QError, QMode};
pub use so::{GroupTag, Representation, SoError, Sym2Frame};
pub use words::{abelianize, enumerate_words, evaluate, Word};
