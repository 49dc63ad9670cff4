//! Connes' operator `B`, the cyclic bicomplex and its total complex.

use crate::algebra::{Bimodule, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Scalar, SparseMatrix, SparseVec};

use super::chain::ChainComplex;
use super::hochschild::{guard_dims, Hochschild, TensorShape};

/// `B(r_0⊗…⊗r_p) = Σ_i (−1)^{pi} (1⊗r_i⊗…⊗r_p⊗r_0⊗…⊗r_{i−1}
///                               + r_i⊗1⊗r_{i+1}⊗…⊗r_p⊗r_0⊗…⊗r_{i−1})`
/// applied to one basis tensor, accumulated with a coefficient.
pub fn connes_b_of_basis(
    r: &StructureAlgebra,
    slots: &[usize],
    coeff: &Scalar,
    acc: &mut Accumulator,
) {
    let p = slots.len() - 1;
    let shape = TensorShape::new(r.dim(), r.dim());
    let mut out = vec![0usize; p + 2];
    for i in 0..=p {
        let c = if (p * i) % 2 == 1 { -coeff.clone() } else { coeff.clone() };
        let rot: Vec<usize> = slots[i..].iter().chain(&slots[..i]).copied().collect();
        for (u, cu) in r.unit().iter() {
            let cu = cu * &c;
            out[0] = u;
            out[1..].copy_from_slice(&rot);
            acc.add(shape.encode(&out), cu.clone());
            out[0] = rot[0];
            out[1] = u;
            out[2..].copy_from_slice(&rot[1..]);
            acc.add(shape.encode(&out), cu);
        }
    }
}

pub fn connes_b_apply(r: &StructureAlgebra, p: usize, v: &SparseVec) -> SparseVec {
    let shape = TensorShape::new(r.dim(), r.dim());
    let mut acc = Accumulator::new();
    let mut slots = vec![0; p + 1];
    for (idx, c) in v.iter() {
        shape.decode_into(idx, &mut slots);
        connes_b_of_basis(r, &slots, c, &mut acc);
    }
    acc.into_vec()
}

/// Matrix of `B: R^{⊗p+1} → R^{⊗p+2}`.
pub fn connes_b(r: &StructureAlgebra, p: usize) -> Result<SparseMatrix> {
    let shape = TensorShape::new(r.dim(), r.dim());
    let one = Scalar::from_integer(1.into());
    let mut slots = vec![0; p + 1];
    let cols = (0..shape.dim(p))
        .map(|idx| {
            let mut acc = Accumulator::new();
            shape.decode_into(idx, &mut slots);
            connes_b_of_basis(r, &slots, &one, &mut acc);
            acc.into_vec()
        })
        .collect();
    SparseMatrix::from_columns(shape.dim(p + 1), cols)
}

/// Checks `B∘B = 0` and `b∘B + B∘b = 0` on `R^{⊗p+1}` for all `p ≤ max_p`.
pub fn check_bicomplex_identities(r: &StructureAlgebra, max_p: usize) -> Result<()> {
    let reg = Bimodule::regular(r);
    let h = Hochschild::new(r, &reg)?;
    for p in 0..=max_p {
        let bp = connes_b(r, p)?;
        let bp1 = connes_b(r, p + 1)?;
        if !bp1.mul(&bp)?.is_zero() {
            return Err(Error::Precondition(format!("B∘B ≠ 0 on R^⊗{}", p + 1)));
        }
        for idx in 0..bp.cols() {
            let x = SparseVec::unit(idx);
            let lhs = h.apply(p + 1, bp.column(idx));
            let rhs = if p == 0 {
                SparseVec::new()
            } else {
                connes_b_apply(r, p - 1, &h.apply(p, &x))
            };
            if !lhs.add(&rhs).is_zero() {
                return Err(Error::Precondition(format!(
                    "b∘B + B∘b ≠ 0 on {}",
                    h.label(p, idx)
                )));
            }
        }
    }
    Ok(())
}

/// Layout of `Tot_n = ⊕_{p=0}^{⌊n/2⌋} R^{⊗(n−2p+1)}`: column `p` holds
/// Hochschild degree `n − 2p` and starts at `offset(n, p)`.
#[derive(Clone, Copy, Debug)]
pub struct TotalLayout {
    pub shape: TensorShape,
}

impl TotalLayout {
    pub fn new(r: &StructureAlgebra) -> Self {
        Self {
            shape: TensorShape::new(r.dim(), r.dim()),
        }
    }

    pub fn columns(&self, n: usize) -> usize {
        n / 2 + 1
    }

    pub fn offset(&self, n: usize, p: usize) -> usize {
        (0..p).map(|c| self.shape.dim(n - 2 * c)).sum()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.offset(n, self.columns(n))
    }

    pub fn checked_dim(&self, n: usize) -> Option<usize> {
        (0..self.columns(n)).try_fold(0usize, |s, c| {
            s.checked_add(self.shape.checked_dim(n - 2 * c)?)
        })
    }

    /// `(column, index within the column)` of a global index in `Tot_n`.
    pub fn locate(&self, n: usize, idx: usize) -> (usize, usize) {
        let mut rest = idx;
        for p in 0..self.columns(n) {
            let d = self.shape.dim(n - 2 * p);
            if rest < d {
                return (p, rest);
            }
            rest -= d;
        }
        panic!("index {idx} outside Tot_{n}");
    }

    /// Splits a vector of `Tot_n` into its columns.
    pub fn split(&self, n: usize, v: &SparseVec) -> Vec<SparseVec> {
        let mut parts: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.columns(n)];
        for (i, c) in v.iter() {
            let (p, j) = self.locate(n, i);
            parts[p].push((j, c.clone()));
        }
        parts.into_iter().map(SparseVec::from_pairs).collect()
    }

    pub fn join(&self, n: usize, parts: &[SparseVec]) -> SparseVec {
        SparseVec::from_pairs(parts.iter().enumerate().flat_map(|(p, v)| {
            let off = self.offset(n, p);
            v.iter().map(move |(i, c)| (i + off, c.clone()))
        }))
    }
}

/// The total differential `d = b + (−1)^p B` on column `p`, where `b` stays
/// in column `p` and `B` lands in column `p − 1`.
pub fn total_apply(r: &StructureAlgebra, n: usize, v: &SparseVec) -> Result<SparseVec> {
    let reg = Bimodule::regular(r);
    let h = Hochschild::new(r, &reg)?;
    Ok(total_apply_with(&h, n, v))
}

pub(crate) fn total_apply_with(h: &Hochschild<'_>, n: usize, v: &SparseVec) -> SparseVec {
    if n == 0 {
        return SparseVec::new();
    }
    let r = h.algebra;
    let layout = TotalLayout::new(r);
    let parts = layout.split(n, v);
    let mut out = vec![SparseVec::new(); layout.columns(n - 1)];
    for (p, x) in parts.iter().enumerate() {
        let q = n - 2 * p;
        if q >= 1 {
            out[p] = out[p].add(&h.apply(q, x));
        }
        if p >= 1 {
            let bx = connes_b_apply(r, q, x);
            out[p - 1] = if p % 2 == 1 { out[p - 1].sub(&bx) } else { out[p - 1].add(&bx) };
        }
    }
    layout.join(n - 1, &out)
}

/// Total complex of the cyclic bicomplex in degrees `0..=cap`.
pub fn build_cyclic_total_complex(r: &StructureAlgebra, cap: usize) -> Result<ChainComplex> {
    let layout = TotalLayout::new(r);
    let dims = guard_dims("cyclic total complex", (0..=cap).map(|n| layout.checked_dim(n)))?;
    let reg = Bimodule::regular(r);
    let h = Hochschild::new(r, &reg)?;
    let mut boundaries = Vec::with_capacity(cap);
    for n in 1..=cap {
        let cols = (0..dims[n])
            .map(|i| total_apply_with(&h, n, &SparseVec::unit(i)))
            .collect();
        boundaries.push(SparseMatrix::from_columns(dims[n - 1], cols)?);
    }
    let basis = (0..=cap)
        .map(|n| {
            (0..dims[n])
                .map(|i| {
                    let (p, j) = layout.locate(n, i);
                    format!("[{p}] {}", h.label(n - 2 * p, j))
                })
                .collect()
        })
        .collect();
    ChainComplex::new(dims, boundaries, basis, false)
}
