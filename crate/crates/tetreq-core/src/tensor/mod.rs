//! Labeled tensors: embedding operator letters on the six-space product and
//! evaluating operator words as matrices.
//!
//! Conventions that fix all index bookkeeping:
//!
//! - Matrices map input (row) to output (column): `(M N)_a^c = M_a^b N_b^c`,
//!   so the leftmost letter of an operator word is the leftmost factor of
//!   the matrix product.
//! - A letter's matrix acts on the tensor product of its labeled spaces *in
//!   subscript order*; embedding into the canonical space order conjugates
//!   by the matching leg permutation. This is what distinguishes
//!   `S~_(23)(13)(12)` from `S_(12)(13)(23)` and makes the unitarity law an
//!   honest matrix statement `S~ = P S^-1 P` with `P` the leg reversal.

mod embed;
mod matrix;

pub use embed::{
    embed_letter, embed_on_sites, evaluate, residual, stilde_from_unitarity, GlobalSpaceBasis,
    ModelBundle,
};
pub use matrix::{CMatrix, MAX_CONDITION};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum TensorError {
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix condition estimate {estimate:.3e} exceeds the inversion guard")]
    IllConditioned { estimate: f64 },
    #[error("space dimension m={0} exceeds the guard (m <= {1})")]
    DimensionGuard(usize, usize),
    #[error("letter label {0} is not normalized or not in the basis")]
    LabelOutsideBasis(alloc::string::String),
    #[error("entry index out of range")]
    IndexOutOfRange,
    #[error("non-finite entry in tensor data")]
    NonFinite,
}

/// Largest `m` accepted for the six-space product (the embedded matrices
/// are `m^6 x m^6`).
pub const MAX_M: usize = 4;
