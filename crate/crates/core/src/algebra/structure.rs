//! Finite-dimensional associative unital algebras given by structure constants.

use std::collections::HashSet;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{fmt_fraction, Accumulator, SparseMatrix, SparseVec};

/// An algebra on a labelled basis `e_0..e_{d-1}` with `e_i e_j` stored as a
/// sparse vector. Values are only obtained through [`StructureAlgebra::new`],
/// which checks associativity and the unit law on every basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: SparseVec,
}

impl StructureAlgebra {
    /// `products` lists `((i, j), e_i e_j)`; omitted pairs multiply to zero.
    pub fn new(
        labels: Vec<String>,
        products: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
        unit: SparseVec,
    ) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::InvalidAlgebra("the basis is empty".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate label {l:?}")));
            }
        }
        let mut table = vec![SparseVec::new(); d * d];
        for ((i, j), v) in products {
            if i >= d || j >= d || v.max_index().is_some_and(|m| m >= d) {
                return Err(Error::InvalidAlgebra(format!(
                    "product entry ({i}, {j}) refers to a basis index outside 0..{d}"
                )));
            }
            table[i * d + j] = table[i * d + j].add(&v);
        }
        if unit.max_index().is_some_and(|m| m >= d) {
            return Err(Error::InvalidAlgebra("unit refers to an unknown basis index".into()));
        }
        let a = Self {
            labels,
            table,
            unit,
        };
        a.verify()?;
        Ok(a)
    }

    fn verify(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let e = SparseVec::unit(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Unit(self.labels[i].clone()));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul(ij, &SparseVec::unit(k));
                    let right = self.mul(&SparseVec::unit(i), self.basis_product(j, k));
                    if left != right {
                        return Err(Error::Associativity(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_vec(self.basis_product(i, j), &(a * b));
            }
        }
        acc.into_vec()
    }

    pub fn commutator(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult_matrix(&self, x: &SparseVec) -> SparseMatrix {
        let cols = (0..self.dim())
            .map(|j| self.mul(x, &SparseVec::unit(j)))
            .collect();
        SparseMatrix::from_columns(self.dim(), cols).expect("in range")
    }

    /// All nonzero structure constants as `((i, j), e_i e_j)`.
    pub fn products(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> + '_ {
        let d = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| ((k / d, k % d), v))
    }

    /// Renders an element as `c*label + ...` with fractions in `p/q` form.
    pub fn format(&self, x: &SparseVec) -> String {
        format_labelled(x, |i| self.labels[i].clone())
    }

    /// The ground field `k` with basis `1`.
    pub fn ground_field() -> Self {
        Self::new(
            vec!["1".into()],
            [((0, 0), SparseVec::unit(0))],
            SparseVec::unit(0),
        )
        .expect("valid")
    }

    /// `k[ε]/(ε²)` with basis `1, eps`.
    pub fn dual_numbers() -> Self {
        Self::new(
            vec!["1".into(), "eps".into()],
            [
                ((0, 0), SparseVec::unit(0)),
                ((0, 1), SparseVec::unit(1)),
                ((1, 0), SparseVec::unit(1)),
            ],
            SparseVec::unit(0),
        )
        .expect("valid")
    }
}

/// `1 - 1/2*eps`: signs between terms, unit coefficients omitted,
/// integers without a denominator.
pub fn format_labelled(x: &SparseVec, label: impl Fn(usize) -> String) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in x.iter().enumerate() {
        let negative = c.is_negative();
        out.push_str(match (k, negative) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        let m = c.abs();
        if !m.is_one() {
            if m.is_integer() {
                out.push_str(&format!("{}*", m.numer()));
            } else {
                out.push_str(&format!("{}*", fmt_fraction(&m)));
            }
        }
        out.push_str(&label(i));
    }
    out
}

/// A linear map between algebras is a unital algebra homomorphism iff it
/// preserves units and all basis products.
pub fn check_algebra_map(
    src: &StructureAlgebra,
    dst: &StructureAlgebra,
    map: &SparseMatrix,
) -> std::result::Result<(), String> {
    if map.cols() != src.dim() || map.rows() != dst.dim() {
        return Err(format!(
            "map has shape {}x{}, expected {}x{}",
            map.rows(),
            map.cols(),
            dst.dim(),
            src.dim()
        ));
    }
    if map.apply(src.unit()) != *dst.unit() {
        return Err("the unit is not preserved".into());
    }
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = map.apply(src.basis_product(i, j));
            let rhs = dst.mul(map.column(i), map.column(j));
            if lhs != rhs {
                return Err(format!(
                    "product of {} and {} is not preserved",
                    src.label(i),
                    src.label(j)
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;

    #[test]
    fn small_algebras_are_valid() {
        assert_eq!(StructureAlgebra::ground_field().dim(), 1);
        let d = StructureAlgebra::dual_numbers();
        let eps = SparseVec::unit(1);
        assert!(d.mul(&eps, &eps).is_zero());
        assert!(d.is_commutative());
    }

    #[test]
    fn bogus_idempotent_eps_is_rejected() {
        // eps·eps = eps alone would give a valid copy of k×k; with 1·eps
        // missing the unit law fails at eps.
        let r = StructureAlgebra::new(
            vec!["1".into(), "eps".into()],
            [
                ((0, 0), SparseVec::unit(0)),
                ((1, 0), SparseVec::unit(1)),
                ((1, 1), SparseVec::unit(1)),
            ],
            SparseVec::unit(0),
        );
        assert_eq!(r, Err(Error::Unit("eps".into())));
    }

    #[test]
    fn non_associative_table_names_triple() {
        // x² = 1, xy = y, yx = 0, y² = 0: the first failing triple in
        // lexicographic order is (y, x, x), where (yx)x = 0 but y(xx) = y.
        let r = StructureAlgebra::new(
            vec!["1".into(), "x".into(), "y".into()],
            [
                ((0, 0), SparseVec::unit(0)),
                ((0, 1), SparseVec::unit(1)),
                ((1, 0), SparseVec::unit(1)),
                ((0, 2), SparseVec::unit(2)),
                ((2, 0), SparseVec::unit(2)),
                ((1, 1), SparseVec::unit(0)),
                ((1, 2), SparseVec::unit(2)),
            ],
            SparseVec::unit(0),
        );
        assert_eq!(
            r,
            Err(Error::Associativity("y".into(), "x".into(), "x".into()))
        );
    }

    #[test]
    fn format_uses_fractions() {
        let d = StructureAlgebra::dual_numbers();
        let v = SparseVec::from_pairs([(0, Scalar::one()), (1, crate::linalg::ratio(-1, 2))]);
        assert_eq!(d.format(&v), "1 - 1/2*eps");
    }
}
