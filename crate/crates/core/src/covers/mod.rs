//! Permutation representations and the homology of the covers they define.

mod homology;
mod index2;
mod perm;
mod rep;
mod schreier;

use thiserror::Error;

pub use homology::{
    cover_chain_h1, cover_homology, fox_hempel_matrix, lifted_complex, subgroup_h1_fox, subgroup_h1_rs,
    CoverHomology, LiftedComplex,
};
pub use index2::{enumerate_index2_reps, find_two_avoiding_index2, INDEX2_GENERATOR_CAP};
pub use perm::{perm_matrix, Permutation};
pub use rep::{parse_rep, theta_eval, validate_rep, PermRep, RepDisplay};
pub use schreier::{reidemeister_schreier, schreier_transversal, SchreierTransversal};

use crate::intlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("bad representation syntax: {0}")]
    RepSyntax(String),
    #[error("unknown generator `{0}` in representation")]
    UnknownGenerator(String),
    #[error("generator `{0}` has no assigned permutation")]
    MissingGenerator(String),
    #[error("expected {expected} permutations, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("permutations have different degrees")]
    DegreeMismatch,
    #[error("relator {relator} (`{word}`) does not map to the identity")]
    RelatorNotKilled { relator: usize, word: String },
    #[error("image is not transitive: orbit of 1 has {orbit} of {degree} points")]
    NotTransitive { orbit: usize, degree: usize },
    #[error("index-2 enumeration supports at most {cap} generators, got {count}")]
    TooManyGenerators { count: usize, cap: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
