//! Exact computation of Hochschild, cyclic, relative and Lie algebra
//! homology over the rationals, with machinery for the Jacobi algebra of
//! doubly infinite finite-band matrices.

pub mod error;
pub mod algebra;
pub mod complex;
pub mod jacobi;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
