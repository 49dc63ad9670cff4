//! Structure-constant algebras, bimodules and the constructions built on them.

pub mod bimodule;
pub mod constructions;
pub mod group;
pub mod lie;
pub mod quotient;
pub mod separable;
pub mod structure;

pub use bimodule::Bimodule;
pub use constructions::{diagonal_algebra, matrix_algebra, matrix_index, power_algebra, product_algebra};
pub use group::{
    cyclic_shift_action, smash_index, smash_product, smash_to_matrix_map,
    verify_smash_matrix_isomorphism, CyclicAction, CyclicGroup,
};
pub use lie::{commutator_lie, gl, LieAlgebraData};
pub use quotient::{abelianization, coinvariants_of_generator, group_coinvariants, Quotient};
pub use separable::SeparabilityWitness;
pub use structure::{check_algebra_map, format_labelled, StructureAlgebra};
