//! Bounded chain complexes of finite-dimensional rational vector spaces.

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

/// Degrees `0..=cap` with boundaries `d_p: C_p → C_{p−1}` for `1 ≤ p ≤ cap`.
/// `d_0` is implicitly zero. Construction verifies shapes and `d∘d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    basis: Vec<Vec<String>>,
    vanishes_above_cap: bool,
}

impl ChainComplex {
    /// `boundaries[p - 1]` is `d_p`. If `vanishes_above_cap` is set, the
    /// complex is known to be zero beyond the top degree, so homology there
    /// is reliable.
    pub fn new(
        dims: Vec<usize>,
        boundaries: Vec<SparseMatrix>,
        basis: Vec<Vec<String>>,
        vanishes_above_cap: bool,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Dimension("a complex needs at least degree 0".into()));
        }
        if boundaries.len() + 1 != dims.len() || basis.len() != dims.len() {
            return Err(Error::Dimension(format!(
                "{} degrees need {} boundaries and {} basis catalogs",
                dims.len(),
                dims.len() - 1,
                dims.len()
            )));
        }
        for (p, labels) in basis.iter().enumerate() {
            if labels.len() != dims[p] {
                return Err(Error::Dimension(format!("basis catalog of degree {p} has wrong length")));
            }
        }
        for (k, d) in boundaries.iter().enumerate() {
            let p = k + 1;
            if d.cols() != dims[p] || d.rows() != dims[p - 1] {
                return Err(Error::Dimension(format!(
                    "d_{p} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[p - 1],
                    dims[p]
                )));
            }
        }
        for k in 1..boundaries.len() {
            let dd = boundaries[k - 1].mul(&boundaries[k])?;
            if !dd.is_zero() {
                let (i, j, _) = dd.triplets()[0].clone();
                return Err(Error::Precondition(format!(
                    "d_{} ∘ d_{} ≠ 0: basis element {} reaches {}",
                    k,
                    k + 1,
                    basis[k + 1][j],
                    basis[k - 1][i]
                )));
            }
        }
        Ok(Self {
            dims,
            boundaries,
            basis,
            vanishes_above_cap,
        })
    }

    pub fn cap(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, p: usize) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    /// `d_p`; for `p = 0` the zero map to the zero space.
    pub fn boundary(&self, p: usize) -> SparseMatrix {
        if p == 0 {
            SparseMatrix::zero(0, self.dims[0])
        } else {
            self.boundaries[p - 1].clone()
        }
    }

    pub fn boundary_ref(&self, p: usize) -> Option<&SparseMatrix> {
        if p == 0 {
            None
        } else {
            self.boundaries.get(p - 1)
        }
    }

    pub fn basis(&self, p: usize) -> &[String] {
        &self.basis[p]
    }

    pub fn vanishes_above_cap(&self) -> bool {
        self.vanishes_above_cap
    }

    /// Homology in degree `p` is trustworthy iff `d_{p+1}` is known.
    pub fn reliable(&self, p: usize) -> bool {
        p < self.cap() || self.vanishes_above_cap
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = SparseMatrix::from_int_rows(&[vec![1]]);
        let d2 = SparseMatrix::from_int_rows(&[vec![1]]);
        let r = ChainComplex::new(vec![1, 1, 1], vec![d1, d2], vec![labels(1); 3], false);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn rejects_bad_shapes() {
        let d1 = SparseMatrix::zero(2, 1);
        let r = ChainComplex::new(vec![1, 1], vec![d1], vec![labels(1); 2], false);
        assert!(matches!(r, Err(Error::Dimension(_))));
    }
}
