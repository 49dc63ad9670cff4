//! Chain complexes, their homology, and the concrete complexes built from
//! algebras and Lie algebras.

pub mod ce;
pub mod chain;
pub mod connes;
pub mod hochschild;
pub mod homology;
pub mod periodicity;
pub mod relative;

pub use ce::{ce_boundary, chevalley_eilenberg_complex, exterior_graded_dims, wedge_basis, wedge_label};
pub use chain::ChainComplex;
pub use connes::{
    build_cyclic_total_complex, check_bicomplex_identities, connes_b, connes_b_apply, total_apply,
    TotalLayout,
};
pub use hochschild::{
    build_hochschild_complex, build_hochschild_complex_regular, hochschild_boundary, Hochschild,
    TensorShape,
};
pub use homology::{
    compute_betti, compute_homology, homology_basis, reliable_betti, DegreeHomology, HomologyBasis,
    HomologyReport,
};
pub use periodicity::{periodicity_maps, s_matrix, NodeVerdict, PeriodicityDegree, PeriodicityReport};
pub use relative::{build_relative_hochschild_complex, RelativeComplex};
