//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the geometric and analytic kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("input is not full-dimensional")]
    NotFullDimensional,

    #[error("cone is not pointed")]
    NotPointed,

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("polytope is not simplicial")]
    NotSimplicial,

    #[error("polytope is not Delzant")]
    NotDelzant,

    #[error("vector is not in the open Reeb cone")]
    ReebMembership,

    #[error("point is outside the domain: {0}")]
    DomainError(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    UnboundedProgram,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
