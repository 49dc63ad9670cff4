//! Homology of a [`ChainComplex`]: Betti numbers and canonical representatives.

use std::time::Instant;

use crate::error::Result;
use crate::linalg::{image, kernel, rank, Scalar, SparseMatrix, SparseVec, Subspace};

use super::chain::ChainComplex;

/// Homology in one degree. `representatives` are cycles whose classes form
/// a basis of `H_p`; they are the reduced echelon basis of the canonical
/// complement of the boundaries inside the cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    pub reliable: bool,
    pub representatives: Vec<SparseVec>,
    pub chain_dim: usize,
    pub cycles_dim: usize,
    pub boundaries_dim: usize,
    pub boundary_nnz: usize,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// Betti numbers of the degrees that are not affected by truncation.
    pub fn reliable_betti(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .filter(|d| d.reliable)
            .map(|d| d.betti)
            .collect()
    }
}

/// Cycles, boundaries and a canonical homology basis in one degree.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub cycles: Subspace,
    pub boundaries: Subspace,
    /// Reduced echelon basis of the complement: every vector is zero on
    /// the pivots of `boundaries`.
    pub complement: Subspace,
}

impl HomologyBasis {
    pub fn betti(&self) -> usize {
        self.complement.dim()
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn class_of(&self, z: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.cycles.contains(z) {
            return None;
        }
        self.complement.coordinates(&self.boundaries.reduce(z))
    }

    pub fn representatives(&self) -> &[SparseVec] {
        self.complement.basis()
    }
}

pub fn homology_basis(c: &ChainComplex, p: usize) -> Result<HomologyBasis> {
    let n = c.dim(p);
    let cycles = match c.boundary_ref(p) {
        None => Subspace::full(n),
        Some(d) => kernel(d)?,
    };
    let boundaries = match c.boundary_ref(p + 1) {
        None => Subspace::zero(n),
        Some(d) => image(d)?,
    };
    let reduced: Vec<SparseVec> = cycles
        .basis()
        .iter()
        .map(|z| boundaries.reduce(z))
        .filter(|v| !v.is_zero())
        .collect();
    let complement = Subspace::span(n, &reduced)?;
    debug_assert_eq!(complement.dim() + boundaries.dim(), cycles.dim());
    Ok(HomologyBasis {
        cycles,
        boundaries,
        complement,
    })
}

fn rank_or_zero(m: Option<&SparseMatrix>) -> Result<usize> {
    match m {
        None => Ok(0),
        Some(d) => rank(d),
    }
}

/// Full homology with representatives for every degree `0..=cap`.
pub fn compute_homology(c: &ChainComplex) -> Result<HomologyReport> {
    let mut degrees = Vec::new();
    for p in 0..=c.cap() {
        let t = Instant::now();
        let hb = homology_basis(c, p)?;
        degrees.push(DegreeHomology {
            degree: p,
            betti: hb.betti(),
            reliable: c.reliable(p),
            representatives: hb.complement.basis().to_vec(),
            chain_dim: c.dim(p),
            cycles_dim: hb.cycles.dim(),
            boundaries_dim: hb.boundaries.dim(),
            boundary_nnz: c.boundary_ref(p).map_or(0, SparseMatrix::nnz),
            millis: t.elapsed().as_millis(),
        });
    }
    Ok(HomologyReport { degrees })
}

/// Betti numbers only, via ranks; `(betti, reliable)` per degree.
pub fn compute_betti(c: &ChainComplex) -> Result<Vec<(usize, bool)>> {
    let ranks: Vec<usize> = (0..=c.cap() + 1)
        .map(|p| rank_or_zero(c.boundary_ref(p)))
        .collect::<Result<_>>()?;
    Ok((0..=c.cap())
        .map(|p| (c.dim(p) - ranks[p] - ranks[p + 1], c.reliable(p)))
        .collect())
}

/// Betti numbers of the reliable degrees only.
pub fn reliable_betti(c: &ChainComplex) -> Result<Vec<usize>> {
    Ok(compute_betti(c)?
        .into_iter()
        .filter(|(_, r)| *r)
        .map(|(b, _)| b)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn zero_complex() {
        let c = ChainComplex::new(
            vec![2, 3],
            vec![SparseMatrix::zero(2, 3)],
            vec![labels(2), labels(3)],
            true,
        )
        .unwrap();
        let r = compute_homology(&c).unwrap();
        assert_eq!(r.betti(), vec![2, 3]);
        assert!(r.degrees.iter().all(|d| d.reliable));
        let z = ChainComplex::new(vec![0], vec![], vec![vec![]], false).unwrap();
        assert_eq!(compute_homology(&z).unwrap().betti(), vec![0]);
    }

    #[test]
    fn representatives_are_canonical() {
        // d_1 = [1 1]: H_0 = 0, H_1 spanned by (1,-1) up to boundaries.
        let d1 = SparseMatrix::from_int_rows(&[vec![1, 1]]);
        let c = ChainComplex::new(vec![1, 2], vec![d1], vec![labels(1), labels(2)], true).unwrap();
        let r = compute_homology(&c).unwrap();
        assert_eq!(r.betti(), vec![0, 1]);
        assert_eq!(
            r.degrees[1].representatives,
            vec![SparseVec::from_pairs([(0, int(1)), (1, int(-1))])]
        );
        assert_eq!(compute_betti(&c).unwrap(), vec![(0, true), (1, true)]);
        let hb = homology_basis(&c, 1).unwrap();
        assert_eq!(
            hb.class_of(&SparseVec::from_pairs([(0, int(-3)), (1, int(3))])),
            Some(vec![int(-3)])
        );
    }
}
