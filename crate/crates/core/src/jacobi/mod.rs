//! The algebra `J(R)` of banded ℤ×ℤ matrices over `R`, on the class of
//! elements with a finite description, and the group homology of `k[ℤ]`
//! that computes its Hochschild homology.

pub mod chains;
pub mod cocycle;
pub mod element;
pub mod group;
pub mod random;

pub use chains::{atoms, cyclic_t, norm_operator, Atom, JChain};
pub use cocycle::{corner_extract, finite_mul, trace, CocycleContext, Corner};
pub use element::{FiniteMatrix, JElement, JacobiAlgebra};
pub use group::{
    h0_preimage, h1_kernel_test, halfline_preimage, reduce_chain, reduce_to_tau, tau_witness,
    GroupChain, Poly, Sequence,
};
pub use random::random_banded;
