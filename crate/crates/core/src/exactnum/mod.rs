//! Exact rationals and exact arithmetic in finite extensions of ℚ.

mod check;
mod enumerate;
mod field;
mod rational;

pub use check::{check_field_axioms, random_element, AxiomResult, FieldCheckReport};
pub use enumerate::{enumerate_rational_indices, RationalIndices, RationalItem};
pub use field::{
    build_field_from_min_poly, field_by_name, gaussian, nf_add, nf_conj, nf_eq, nf_inverse, nf_mul, nf_scale, nf_sub,
    parse_field_file, rationals, sqrt2, zeta8, FieldElement, FieldRef, NumberField,
};
pub use rational::{rat_arith, RatOp, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field has no conjugation table")]
    MissingConjugation,
    #[error("minimal polynomial must be monic")]
    NonMonic,
    #[error("{0}")]
    Parse(String),
}
