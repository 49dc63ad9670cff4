//! The Hochschild complex `C_p(A, M) = M ⊗ A^{⊗p}`.
//!
//! Basis tensors `m ⊗ a_1 ⊗ … ⊗ a_p` are indexed in mixed radix with the
//! module slot most significant, so the order is lexicographic in
//! `(m, a_1, …, a_p)`.

use crate::algebra::{Bimodule, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{check_guard, Accumulator, Scalar, SparseMatrix, SparseVec};

use super::chain::ChainComplex;

/// Mixed-radix indexing of `M ⊗ A^{⊗p}`.
#[derive(Clone, Copy, Debug)]
pub struct TensorShape {
    pub module_dim: usize,
    pub algebra_dim: usize,
}

impl TensorShape {
    pub fn new(module_dim: usize, algebra_dim: usize) -> Self {
        Self {
            module_dim,
            algebra_dim,
        }
    }

    pub fn dim(&self, p: usize) -> usize {
        self.module_dim * self.algebra_dim.pow(p as u32)
    }

    pub fn checked_dim(&self, p: usize) -> Option<usize> {
        self.algebra_dim
            .checked_pow(p as u32)
            .and_then(|x| x.checked_mul(self.module_dim))
    }

    pub fn encode(&self, slots: &[usize]) -> usize {
        let mut idx = slots[0];
        for &a in &slots[1..] {
            idx = idx * self.algebra_dim + a;
        }
        idx
    }

    /// Writes `(m, a_1, …, a_p)` into `out` (length `p + 1`).
    pub fn decode_into(&self, mut idx: usize, out: &mut [usize]) {
        for k in (1..out.len()).rev() {
            out[k] = idx % self.algebra_dim;
            idx /= self.algebra_dim;
        }
        out[0] = idx;
    }

    pub fn decode(&self, idx: usize, p: usize) -> Vec<usize> {
        let mut out = vec![0; p + 1];
        self.decode_into(idx, &mut out);
        out
    }
}

/// The data `(A, M)` of a Hochschild complex.
#[derive(Clone, Copy, Debug)]
pub struct Hochschild<'a> {
    pub algebra: &'a StructureAlgebra,
    pub module: &'a Bimodule,
}

impl<'a> Hochschild<'a> {
    pub fn new(algebra: &'a StructureAlgebra, module: &'a Bimodule) -> Result<Self> {
        if module.algebra_dim() != algebra.dim() {
            return Err(Error::Dimension(
                "the bimodule is over an algebra of a different dimension".into(),
            ));
        }
        Ok(Self { algebra, module })
    }

    pub fn shape(&self) -> TensorShape {
        TensorShape::new(self.module.dim(), self.algebra.dim())
    }

    pub fn label(&self, p: usize, idx: usize) -> String {
        let slots = self.shape().decode(idx, p);
        let mut parts = vec![self.module.label(slots[0]).to_string()];
        parts.extend(slots[1..].iter().map(|a| self.algebra.label(*a).to_string()));
        parts.join("⊗")
    }

    pub fn labels(&self, p: usize) -> Vec<String> {
        (0..self.shape().dim(p)).map(|i| self.label(p, i)).collect()
    }

    /// `b` of a single basis tensor in degree `p ≥ 1`:
    /// `m a_1 ⊗ a_2… + Σ_{i=1}^{p−1} (−1)^i …⊗ a_i a_{i+1} ⊗… + (−1)^p a_p m ⊗ a_1 … a_{p−1}`.
    pub fn boundary_of_basis(&self, p: usize, slots: &[usize], acc: &mut Accumulator, coeff: &Scalar) {
        debug_assert!(p >= 1 && slots.len() == p + 1);
        let shape = self.shape();
        let mut out = vec![0usize; p];
        // m·a_1
        for (m2, c) in self.module.right_basis(slots[0], slots[1]).iter() {
            out[0] = m2;
            out[1..].copy_from_slice(&slots[2..]);
            acc.add(shape.encode(&out), c * coeff);
        }
        for i in 1..p {
            let sign = if i % 2 == 1 { -coeff.clone() } else { coeff.clone() };
            for (x, c) in self.algebra.basis_product(slots[i], slots[i + 1]).iter() {
                out[..i].copy_from_slice(&slots[..i]);
                out[i] = x;
                out[i + 1..].copy_from_slice(&slots[i + 2..]);
                acc.add(shape.encode(&out), c * &sign);
            }
        }
        let sign = if p % 2 == 1 { -coeff.clone() } else { coeff.clone() };
        for (m2, c) in self.module.left_basis(slots[p], slots[0]).iter() {
            out[0] = m2;
            out[1..].copy_from_slice(&slots[1..p]);
            acc.add(shape.encode(&out), c * &sign);
        }
    }

    /// `b` applied to a chain of degree `p`; zero in degree 0.
    pub fn apply(&self, p: usize, v: &SparseVec) -> SparseVec {
        if p == 0 {
            return SparseVec::new();
        }
        let shape = self.shape();
        let mut acc = Accumulator::new();
        let mut slots = vec![0; p + 1];
        for (idx, c) in v.iter() {
            shape.decode_into(idx, &mut slots);
            self.boundary_of_basis(p, &slots, &mut acc, c);
        }
        acc.into_vec()
    }

    pub fn boundary_matrix(&self, p: usize) -> Result<SparseMatrix> {
        let shape = self.shape();
        let one = Scalar::from_integer(1.into());
        let mut slots = vec![0; p + 1];
        let cols = (0..shape.dim(p))
            .map(|idx| {
                let mut acc = Accumulator::new();
                shape.decode_into(idx, &mut slots);
                self.boundary_of_basis(p, &slots, &mut acc, &one);
                acc.into_vec()
            })
            .collect();
        SparseMatrix::from_columns(shape.dim(p - 1), cols)
    }
}

/// Matrix of `b: M ⊗ A^{⊗p} → M ⊗ A^{⊗p−1}`.
pub fn hochschild_boundary(a: &StructureAlgebra, m: &Bimodule, p: usize) -> Result<SparseMatrix> {
    if p == 0 {
        return Err(Error::Precondition("the Hochschild boundary needs p ≥ 1".into()));
    }
    Hochschild::new(a, m)?.boundary_matrix(p)
}

/// Refuses complexes whose construction alone would exceed the size guard:
/// the work to build degree `p` is about `dim(C_p)·(p + 1)` entries.
pub(crate) fn guard_dims(context: &str, dims: impl IntoIterator<Item = Option<usize>>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (p, d) in dims.into_iter().enumerate() {
        let d = d.ok_or_else(|| Error::SizeGuard {
            context: format!("{context}, degree {p}"),
            workload: u128::MAX,
            cap: crate::linalg::size_guard(),
        })?;
        check_guard(&format!("{context}, degree {p}"), d as u128 * (p as u128 + 1))?;
        out.push(d);
    }
    Ok(out)
}

/// `C_•(A, M)` in degrees `0..=cap`.
pub fn build_hochschild_complex(
    a: &StructureAlgebra,
    m: &Bimodule,
    cap: usize,
) -> Result<ChainComplex> {
    let h = Hochschild::new(a, m)?;
    let shape = h.shape();
    let dims = guard_dims("Hochschild complex", (0..=cap).map(|p| shape.checked_dim(p)))?;
    let boundaries = (1..=cap)
        .map(|p| h.boundary_matrix(p))
        .collect::<Result<Vec<_>>>()?;
    let basis = (0..=cap).map(|p| h.labels(p)).collect();
    ChainComplex::new(dims, boundaries, basis, false)
}

/// `C_•(R, R)`.
pub fn build_hochschild_complex_regular(r: &StructureAlgebra, cap: usize) -> Result<ChainComplex> {
    build_hochschild_complex(r, &Bimodule::regular(r), cap)
}
