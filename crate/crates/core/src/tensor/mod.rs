//! Finitely generated tensor spaces over number fields: exact sparse
//! vectors, their term indexing, and basis permutations of that indexing.

mod indexing;
mod permute;
mod vector;

pub use indexing::{tensor_indexing, term_to_tv, tv_to_term, TensorSpace, TENSOR_SORT};
pub use permute::{
    basis_index_term, extract_permutation, permutation_translator, permuted_indexing, which_basis, PermutationOracle,
};
pub use vector::{tv_add, tv_eq, tv_scale, tv_tensor, Alphabet, BasisWord, TensorVector};

use thiserror::Error;

use crate::exactnum::ExactError;
use crate::indexing::IndexError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot parse state: {0}")]
    Parse(String),
    #[error("index does not decode to a unit basis vector: {0}")]
    NotABasisVector(String),
}

impl From<TensorError> for IndexError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::Index(e) => e,
            TensorError::Exact(e) => IndexError::Exact(e),
            e => IndexError::Invalid(e.to_string()),
        }
    }
}
