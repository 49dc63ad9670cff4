//! Lie algebras by bracket constants.

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};

use super::constructions::matrix_algebra;
use super::structure::StructureAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    labels: Vec<String>,
    table: Vec<SparseVec>,
}

impl LieAlgebraData {
    /// `brackets` lists `((i, j), [x_i, x_j])`; the table is completed by
    /// nothing, so both orders must be supplied. Antisymmetry and the
    /// Jacobi identity are checked on all basis pairs and triples.
    pub fn new(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
    ) -> Result<Self> {
        let d = labels.len();
        let mut table = vec![SparseVec::new(); d * d];
        for ((i, j), v) in brackets {
            if i >= d || j >= d || v.max_index().is_some_and(|m| m >= d) {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket entry ({i}, {j}) out of range"
                )));
            }
            table[i * d + j] = table[i * d + j].add(&v);
        }
        let g = Self { labels, table };
        g.verify()?;
        Ok(g)
    }

    fn verify(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if self.basis_bracket(i, j) != &self.basis_bracket(j, i).neg() {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket is not antisymmetric on ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let (x, y, z) = (SparseVec::unit(i), SparseVec::unit(j), SparseVec::unit(k));
                    let s = self
                        .bracket(&self.bracket(&x, &y), &z)
                        .add(&self.bracket(&self.bracket(&y, &z), &x))
                        .add(&self.bracket(&self.bracket(&z, &x), &y));
                    if !s.is_zero() {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_vec(self.basis_bracket(i, j), &(a * b));
            }
        }
        acc.into_vec()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(SparseVec::is_zero)
    }
}

/// The Lie algebra of an associative algebra under `[x, y] = xy − yx`.
pub fn commutator_lie(a: &StructureAlgebra) -> LieAlgebraData {
    let d = a.dim();
    let brackets = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), a.basis_product(i, j).sub(a.basis_product(j, i))))
        .collect::<Vec<_>>();
    LieAlgebraData::new(a.labels().to_vec(), brackets)
        .expect("commutators of an associative algebra form a Lie algebra")
}

/// `gl_n(k)` on the matrix units `e{i}{j}`.
pub fn gl(n: usize) -> LieAlgebraData {
    commutator_lie(&matrix_algebra(&StructureAlgebra::ground_field(), n))
}
