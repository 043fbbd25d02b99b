//! Integer lattices in Z^3: vectors, matrices, Smith and Hermite forms.

mod matrix;
mod normal_form;
mod serde_impl;
mod vector;

pub use matrix::IntegerMatrix;
pub use normal_form::{
    hermite_normal_form, integer_kernel, rank, row_lattice_basis, smith_normal_form, SmithForm,
};
pub use serde_impl::{BigIntRepr, LooseBigInt};
pub use vector::{LatticeVector, RationalPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
}
