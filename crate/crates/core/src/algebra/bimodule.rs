//! Finite-dimensional bimodules over structure-constant algebras.

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseMatrix, SparseVec};

use super::structure::StructureAlgebra;

/// A bimodule given by the left and right actions of algebra basis
/// elements on module basis elements. Construction checks both module
/// axioms, the commutation of the two actions, and unitality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra_dim: usize,
    labels: Vec<String>,
    left: Vec<SparseVec>,
    right: Vec<SparseVec>,
}

impl Bimodule {
    /// `left[a·dim(M) + m] = e_a·m` and `right[a·dim(M) + m] = m·e_a`.
    pub fn new(
        algebra: &StructureAlgebra,
        labels: Vec<String>,
        left: Vec<SparseVec>,
        right: Vec<SparseVec>,
    ) -> Result<Self> {
        let dm = labels.len();
        let da = algebra.dim();
        if left.len() != da * dm || right.len() != da * dm {
            return Err(Error::Bimodule(format!(
                "action tables must have {} entries",
                da * dm
            )));
        }
        if left
            .iter()
            .chain(&right)
            .any(|v| v.max_index().is_some_and(|i| i >= dm))
        {
            return Err(Error::Bimodule("action refers to an unknown module index".into()));
        }
        let b = Self {
            algebra_dim: da,
            labels,
            left,
            right,
        };
        b.verify(algebra)?;
        Ok(b)
    }

    fn verify(&self, a: &StructureAlgebra) -> Result<()> {
        let da = a.dim();
        for m in 0..self.dim() {
            let e = SparseVec::unit(m);
            if self.act_left(a.unit(), &e) != e || self.act_right(&e, a.unit()) != e {
                return Err(Error::Bimodule(format!(
                    "unit does not act trivially on {}",
                    self.labels[m]
                )));
            }
        }
        for i in 0..da {
            let ei = SparseVec::unit(i);
            for j in 0..da {
                let ej = SparseVec::unit(j);
                let ij = a.basis_product(i, j);
                for m in 0..self.dim() {
                    let em = SparseVec::unit(m);
                    let name = || format!("({}, {}, {})", a.label(i), a.label(j), self.labels[m]);
                    if self.act_left(ij, &em) != self.act_left(&ei, &self.act_left(&ej, &em)) {
                        return Err(Error::Bimodule(format!("left action {}", name())));
                    }
                    if self.act_right(&em, ij) != self.act_right(&self.act_right(&em, &ei), &ej) {
                        return Err(Error::Bimodule(format!("right action {}", name())));
                    }
                    let lr = self.act_right(&self.act_left(&ei, &em), &ej);
                    let rl = self.act_left(&ei, &self.act_right(&em, &ej));
                    if lr != rl {
                        return Err(Error::Bimodule(format!("left and right actions {}", name())));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn left_basis(&self, a: usize, m: usize) -> &SparseVec {
        &self.left[a * self.dim() + m]
    }

    pub fn right_basis(&self, m: usize, a: usize) -> &SparseVec {
        &self.right[a * self.dim() + m]
    }

    pub fn act_left(&self, a: &SparseVec, m: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            for (k, y) in m.iter() {
                acc.add_vec(self.left_basis(i, k), &(x * y));
            }
        }
        acc.into_vec()
    }

    pub fn act_right(&self, m: &SparseVec, a: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (k, y) in m.iter() {
            for (i, x) in a.iter() {
                acc.add_vec(self.right_basis(k, i), &(x * y));
            }
        }
        acc.into_vec()
    }

    /// An algebra as a bimodule over itself.
    pub fn regular(a: &StructureAlgebra) -> Self {
        let d = a.dim();
        let mut left = Vec::with_capacity(d * d);
        let mut right = Vec::with_capacity(d * d);
        for i in 0..d {
            for m in 0..d {
                left.push(a.basis_product(i, m).clone());
                right.push(a.basis_product(m, i).clone());
            }
        }
        Self {
            algebra_dim: d,
            labels: a.labels().to_vec(),
            left,
            right,
        }
    }

    /// Restriction along an algebra map `f: B → A` given as a matrix.
    pub fn restrict(&self, b: &StructureAlgebra, f: &SparseMatrix) -> Result<Self> {
        if f.cols() != b.dim() || f.rows() != self.algebra_dim {
            return Err(Error::Dimension("restriction map has the wrong shape".into()));
        }
        let dm = self.dim();
        let mut left = Vec::with_capacity(b.dim() * dm);
        let mut right = Vec::with_capacity(b.dim() * dm);
        for i in 0..b.dim() {
            for m in 0..dm {
                let em = SparseVec::unit(m);
                left.push(self.act_left(f.column(i), &em));
                right.push(self.act_right(&em, f.column(i)));
            }
        }
        Self::new(b, self.labels.clone(), left, right)
    }

    /// `M ⊕ N`, with labels suffixed by `@1` and `@2`.
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Self> {
        if self.algebra_dim != other.algebra_dim {
            return Err(Error::Dimension("bimodules over different algebras".into()));
        }
        let (d1, d2) = (self.dim(), other.dim());
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{l}@1"))
            .chain(other.labels.iter().map(|l| format!("{l}@2")))
            .collect();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for a in 0..self.algebra_dim {
            for m in 0..d1 {
                left.push(self.left_basis(a, m).clone());
                right.push(self.right_basis(m, a).clone());
            }
            for m in 0..d2 {
                left.push(other.left_basis(a, m).map_indices(|t| t + d1));
                right.push(other.right_basis(m, a).map_indices(|t| t + d1));
            }
        }
        Ok(Self {
            algebra_dim: self.algebra_dim,
            labels,
            left,
            right,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::constructions::{diagonal_algebra, matrix_algebra};

    #[test]
    fn regular_bimodule_is_valid() {
        let m2 = matrix_algebra(&StructureAlgebra::ground_field(), 2);
        let r = Bimodule::regular(&m2);
        let checked = Bimodule::new(&m2, r.labels.clone(), r.left.clone(), r.right.clone());
        assert_eq!(checked.unwrap(), r);
    }

    #[test]
    fn off_diagonal_line_over_k_times_k() {
        let kk = diagonal_algebra(vec!["e1".into(), "e2".into()]);
        // e1·m = m, m·e2 = m, all else zero.
        let left = vec![SparseVec::unit(0), SparseVec::new()];
        let right = vec![SparseVec::new(), SparseVec::unit(0)];
        assert!(Bimodule::new(&kk, vec!["m".into()], left, right).is_ok());
        let bad = Bimodule::new(
            &kk,
            vec!["m".into()],
            vec![SparseVec::unit(0), SparseVec::unit(0)],
            vec![SparseVec::new(), SparseVec::unit(0)],
        );
        assert!(matches!(bad, Err(Error::Bimodule(_))));
    }

    #[test]
    fn restriction_to_diagonal() {
        let k = StructureAlgebra::ground_field();
        let m2 = matrix_algebra(&k, 2);
        let s = diagonal_algebra(vec!["e11".into(), "e22".into()]);
        let f = SparseMatrix::from_columns(4, vec![SparseVec::unit(0), SparseVec::unit(3)]).unwrap();
        let r = Bimodule::regular(&m2).restrict(&s, &f).unwrap();
        assert_eq!(r.dim(), 4);
        let sum = r.direct_sum(&r).unwrap();
        assert_eq!(sum.dim(), 8);
        assert_eq!(sum.label(5), "e12@2");
    }
}
