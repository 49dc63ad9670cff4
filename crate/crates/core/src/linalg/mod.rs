//! Exact sparse linear algebra over the rationals.

pub mod echelon;
pub mod scalar;
pub mod sparse;

pub use echelon::{
    check_guard, image, kernel, projected_workload, quotient_dim, rank, rank_and_bases,
    set_size_guard, size_guard, solve_linear, with_size_guard, EchelonBuilder, RankBases, Subspace,
    DEFAULT_SIZE_GUARD,
};
pub use scalar::{fmt_fraction, int, parse_scalar, ratio, Scalar};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};
