//! Quotients by spans of relations: abelianization and group coinvariants.

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec, Subspace};

use super::bimodule::Bimodule;
use super::group::CyclicGroup;
use super::structure::StructureAlgebra;

/// `V / span(relations)`, presented on the non-pivot coordinates of the
/// reduced echelon form of the relations. `projection` maps `V` onto those
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub dim: usize,
    pub projection: SparseMatrix,
    pub relations: Subspace,
    pub complement: Vec<usize>,
}

impl Quotient {
    pub fn new(ambient_dim: usize, relations: &[SparseVec]) -> Result<Self> {
        let relations = Subspace::span(ambient_dim, relations)?;
        let complement: Vec<usize> = (0..ambient_dim).filter(|c| !relations.is_pivot(*c)).collect();
        let mut slot = vec![usize::MAX; ambient_dim];
        for (k, c) in complement.iter().enumerate() {
            slot[*c] = k;
        }
        let cols = (0..ambient_dim)
            .map(|j| {
                relations
                    .reduce(&SparseVec::unit(j))
                    .map_indices(|c| slot[c])
            })
            .collect();
        let projection = SparseMatrix::from_columns(complement.len(), cols)?;
        Ok(Self {
            dim: complement.len(),
            projection,
            relations,
            complement,
        })
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.projection.apply(v)
    }
}

/// `R / [R, R]`.
pub fn abelianization(r: &StructureAlgebra) -> Result<Quotient> {
    let d = r.dim();
    let mut rels = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let c = r.basis_product(i, j).sub(r.basis_product(j, i));
            if !c.is_zero() {
                rels.push(c);
            }
        }
    }
    Quotient::new(d, &rels)
}

/// Coinvariants of a `Z/n` action given by the matrix of the generator:
/// `V / span{g·v − v}`.
pub fn coinvariants_of_generator(dim: usize, generator: &SparseMatrix) -> Result<Quotient> {
    if generator.rows() != dim || generator.cols() != dim {
        return Err(Error::Dimension("generator matrix must be square".into()));
    }
    let rels: Vec<SparseVec> = (0..dim)
        .map(|j| generator.column(j).sub(&SparseVec::unit(j)))
        .filter(|v| !v.is_zero())
        .collect();
    Quotient::new(dim, &rels)
}

/// `H_0(Z/n, M)` for a bimodule over `k[Z/n]`, with `g` acting by the
/// left-conjugation `m ↦ g·m·g⁻¹`; the right module structure is the counit.
pub fn group_coinvariants(group: &CyclicGroup, m: &Bimodule) -> Result<Quotient> {
    if m.algebra_dim() != group.order() {
        return Err(Error::Dimension("bimodule is not over this group algebra".into()));
    }
    let n = group.order();
    let g = SparseVec::unit(1 % n);
    let ginv = SparseVec::unit(group.inverse(1 % n));
    let cols = (0..m.dim())
        .map(|j| m.act_right(&m.act_left(&g, &SparseVec::unit(j)), &ginv))
        .collect();
    let conj = SparseMatrix::from_columns(m.dim(), cols)?;
    coinvariants_of_generator(m.dim(), &conj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::constructions::matrix_algebra;

    #[test]
    fn abelianization_examples() {
        let k = StructureAlgebra::ground_field();
        let a = abelianization(&k).unwrap();
        assert_eq!(a.dim, 1);
        assert_eq!(a.projection, SparseMatrix::identity(1));
        let m2 = abelianization(&matrix_algebra(&k, 2)).unwrap();
        assert_eq!(m2.dim, 1);
        assert_eq!(m2.relations.dim(), 3);
        // e11 and e22 project to the same class, e12 to zero.
        assert_eq!(m2.project(&SparseVec::unit(0)), m2.project(&SparseVec::unit(3)));
        assert!(m2.project(&SparseVec::unit(1)).is_zero());
        assert_eq!(abelianization(&StructureAlgebra::dual_numbers()).unwrap().dim, 2);
    }

    #[test]
    fn coinvariant_examples() {
        let g = CyclicGroup::new(2);
        let ga = g.algebra();
        // k with the trivial action.
        let triv = Bimodule::new(
            &ga,
            vec!["m".into()],
            vec![SparseVec::unit(0); 2],
            vec![SparseVec::unit(0); 2],
        )
        .unwrap();
        assert_eq!(group_coinvariants(&g, &triv).unwrap().dim, 1);
        // k² with g swapping the lines on the left, trivial on the right.
        let swap = Bimodule::new(
            &ga,
            vec!["x".into(), "y".into()],
            vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::unit(0)],
            vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(0), SparseVec::unit(1)],
        )
        .unwrap();
        assert_eq!(group_coinvariants(&g, &swap).unwrap().dim, 1);
    }
}
