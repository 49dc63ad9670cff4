//! Separable subalgebras together with an explicit separability idempotent.

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{rank, Accumulator, Scalar, SparseMatrix, SparseVec};

use super::constructions::diagonal_algebra;
use super::structure::{check_algebra_map, StructureAlgebra};

/// A subalgebra `S ⊆ A`, given by an injective algebra map, and an element
/// `e = Σ c·u⊗v` of `S ⊗ S^op` written over basis pairs of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityWitness {
    sub: StructureAlgebra,
    embedding: SparseMatrix,
    terms: Vec<(usize, usize, Scalar)>,
}

impl SeparabilityWitness {
    pub fn new(
        sub: StructureAlgebra,
        embedding: SparseMatrix,
        terms: Vec<(usize, usize, Scalar)>,
    ) -> Self {
        Self {
            sub,
            embedding,
            terms,
        }
    }

    /// `S = k·1` with `e = 1⊗1`.
    pub fn trivial(ambient: &StructureAlgebra) -> Self {
        let embedding =
            SparseMatrix::from_columns(ambient.dim(), vec![ambient.unit().clone()]).expect("unit");
        Self::new(
            StructureAlgebra::ground_field(),
            embedding,
            vec![(0, 0, Scalar::one())],
        )
    }

    /// `S = k^m` spanned by the ambient basis elements at `idempotents`
    /// (which must be orthogonal idempotents summing to 1), with
    /// `e = Σ e_i ⊗ e_i`.
    pub fn diagonal(ambient: &StructureAlgebra, idempotents: &[usize]) -> Self {
        let labels = idempotents
            .iter()
            .map(|&i| ambient.label(i).to_string())
            .collect();
        let embedding = SparseMatrix::from_columns(
            ambient.dim(),
            idempotents.iter().map(|&i| SparseVec::unit(i)).collect(),
        )
        .expect("indices in range");
        let terms = (0..idempotents.len()).map(|i| (i, i, Scalar::one())).collect();
        Self::new(diagonal_algebra(labels), embedding, terms)
    }

    pub fn sub(&self) -> &StructureAlgebra {
        &self.sub
    }

    pub fn embedding(&self) -> &SparseMatrix {
        &self.embedding
    }

    pub fn terms(&self) -> &[(usize, usize, Scalar)] {
        &self.terms
    }

    /// The image in `A` of each basis element of `S`.
    pub fn embedded_basis(&self) -> Vec<SparseVec> {
        self.embedding.columns().to_vec()
    }

    /// `(c, u, v)` with `u`, `v` mapped into `A`.
    pub fn embedded_terms(&self) -> Vec<(Scalar, SparseVec, SparseVec)> {
        self.terms
            .iter()
            .map(|(u, v, c)| {
                (
                    c.clone(),
                    self.embedding.column(*u).clone(),
                    self.embedding.column(*v).clone(),
                )
            })
            .collect()
    }

    fn tensor(&self, pairs: impl IntoIterator<Item = (SparseVec, SparseVec, Scalar)>) -> SparseVec {
        let d = self.sub.dim();
        let mut acc = Accumulator::new();
        for (x, y, c) in pairs {
            for (i, a) in x.iter() {
                for (j, b) in y.iter() {
                    acc.add(i * d + j, a * b * &c);
                }
            }
        }
        acc.into_vec()
    }

    /// Checks, in order: the embedding is an injective unital algebra map;
    /// `Σ c·u·v = 1`; `Σ c·(s·u)⊗v = Σ c·u⊗(v·s)` for every basis `s`;
    /// and `e·e = e` in `S ⊗ S^op`. The first failure is reported.
    pub fn verify(&self, ambient: &StructureAlgebra) -> Result<()> {
        let s = &self.sub;
        check_algebra_map(s, ambient, &self.embedding)
            .map_err(|e| Error::Separability(format!("embedding: {e}")))?;
        if rank(&self.embedding)? != s.dim() {
            return Err(Error::Separability("embedding is not injective".into()));
        }
        let mut mult = SparseVec::new();
        for (u, v, c) in &self.terms {
            mult = mult.add_scaled(s.basis_product(*u, *v), c);
        }
        if mult != *s.unit() {
            return Err(Error::Separability(format!(
                "sum of u·v is {}, not 1",
                s.format(&mult)
            )));
        }
        for b in 0..s.dim() {
            let sb = SparseVec::unit(b);
            let left = self.tensor(self.terms.iter().map(|(u, v, c)| {
                (s.mul(&sb, &SparseVec::unit(*u)), SparseVec::unit(*v), c.clone())
            }));
            let right = self.tensor(self.terms.iter().map(|(u, v, c)| {
                (SparseVec::unit(*u), s.mul(&SparseVec::unit(*v), &sb), c.clone())
            }));
            if left != right {
                return Err(Error::Separability(format!(
                    "s·e differs from e·s at s = {}",
                    s.label(b)
                )));
            }
        }
        let e = self.tensor(
            self.terms
                .iter()
                .map(|(u, v, c)| (SparseVec::unit(*u), SparseVec::unit(*v), c.clone())),
        );
        let mut sq = Vec::new();
        for (u, v, c) in &self.terms {
            for (u2, v2, c2) in &self.terms {
                sq.push((
                    s.basis_product(*u, *u2).clone(),
                    s.basis_product(*v2, *v).clone(),
                    c * c2,
                ));
            }
        }
        if self.tensor(sq) != e {
            return Err(Error::Separability("e·e differs from e".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::constructions::{matrix_algebra, product_algebra};

    #[test]
    fn idempotent_witnesses() {
        let k = StructureAlgebra::ground_field();
        let kk = product_algebra(&k, &k);
        assert!(SeparabilityWitness::diagonal(&kk, &[0, 1]).verify(&kk).is_ok());
        assert!(SeparabilityWitness::trivial(&k).verify(&k).is_ok());
        let m3 = matrix_algebra(&k, 3);
        let diag = [0, 4, 8];
        assert!(SeparabilityWitness::diagonal(&m3, &diag).verify(&m3).is_ok());
    }

    #[test]
    fn partial_idempotent_fails_on_unit() {
        let k = StructureAlgebra::ground_field();
        let kk = product_algebra(&k, &k);
        let mut w = SeparabilityWitness::diagonal(&kk, &[0, 1]);
        w.terms.truncate(1);
        let err = w.verify(&kk).unwrap_err();
        assert!(matches!(err, Error::Separability(m) if m.contains("not 1")));
    }

    #[test]
    fn unbalanced_element_fails_commutation() {
        let k = StructureAlgebra::ground_field();
        let kk = product_algebra(&k, &k);
        // e = 1⊗1 = Σ_{i,j} e_i⊗e_j has Σuv = 1 but e_1·e ≠ e·e_1.
        let mut w = SeparabilityWitness::diagonal(&kk, &[0, 1]);
        w.terms = vec![
            (0, 0, Scalar::one()),
            (0, 1, Scalar::one()),
            (1, 0, Scalar::one()),
            (1, 1, Scalar::one()),
        ];
        let err = w.verify(&kk).unwrap_err();
        assert!(matches!(err, Error::Separability(m) if m.contains("(1,0)")));
    }
}
