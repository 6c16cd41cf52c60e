//! Exact integer matrices, Smith normal form and finitely generated abelian groups.
//!
//! Presentation matrices follow one orientation everywhere in this crate:
//! rows index generators and columns index relations.

mod abelian;
mod matrix;
mod minors;
mod snf;

use thiserror::Error;

pub use abelian::{abelian_group_from_presentation_matrix, AbelianGroup};
pub use matrix::IntMatrix;
pub use minors::{determinant, determinantal_divisor, invariant_factors_via_minors, MINORS_DIMENSION_CAP};
pub use snf::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("minor enumeration is limited to min(rows, cols) <= {cap}, got {size}")]
    TooLarge { size: usize, cap: usize },
    #[error("cannot remove {remove} free summands from a group of free rank {have}")]
    InsufficientFreeRank { have: usize, remove: usize },
    #[error("not an invariant-factor form: {0}")]
    NotCanonical(String),
    #[error("bad matrix literal: {0}")]
    MatrixLiteral(String),
}
