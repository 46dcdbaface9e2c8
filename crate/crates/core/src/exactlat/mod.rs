//! Exact integer and rational linear algebra: vectors, Hermite normal
//! forms, exact LP feasibility and nonnegative integer feasibility.

mod feasibility;
mod hnf;
pub mod linalg;
mod lp;
mod vector;

pub use feasibility::{solve_nonneg_integer, Infeasibility, IntFeasibility};
pub use hnf::{coordinates_in_lattice, hermite_basis, lattice_separator, LatticeBasis};
pub use vector::{primitive_vector, IntMatrix, IntVector, RatVector};

pub use linalg::KernelSplit;
pub(crate) use lp::{feasible as lp_feasible, LpOutcome};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatError {
    #[error("empty input")]
    EmptyInput,
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
}
