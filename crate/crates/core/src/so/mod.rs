//! Explicit matrices and representations into special orthogonal groups.

mod counterexample;
mod maps;
mod random;
mod rep;
mod sym2;


pub use counterexample::{
    b_blocks, b_c5, cyclic_permutation, eta_a, eta_any_m, psi_a, rho_construction, root_of_unity,
    sigma_involution, sigma_matrix,
};
pub use maps::{
    alpha_c1c2, alpha_word_image, d_c, d_c_q_value, embed_block, iota_c, k_inverse, k_matrix,
    phi_conj,
};
pub use random::{random_so, random_so_j, random_so_with};
pub use rep::{GroupTag, Representation};
pub use sym2::{
    odot, printed_f_basis, sym2_action, sym2_fixed_space, sym2_gram, sym2_index, sym2_labels,
    sym2_z, Sym2Frame, SYM2_DIM,
};

pub use crate::linalg::j_form;

use crate::linalg::LinalgError;
use crate::words::WordError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SoError {
    #[error("parameter c must be nonzero")]
    ZeroScalar,
    #[error("{0} is not special orthogonal")]
    NotSpecialOrthogonal(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("generator {gen} does not have order {order}")]
    Order { gen: u32, order: u64 },
    #[error("restriction leaves the invariant complement (residual {0:e})")]
    FrameNotPreserved(f64),
    #[error("this construction needs the float backend")]
    NeedsFloat,
    #[error("Cayley transform stayed singular after {0} attempts")]
    CayleyRetries(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Word(#[from] WordError),
}
