//! The relative Hochschild complex `C^S_p(A, M) = M ⊗_S A^{⊗_S p} ⊗_S`
//! for a separable subalgebra `S ⊆ A`, with the comparison maps to the
//! absolute complex.

use std::collections::BTreeSet;

use crate::algebra::{Bimodule, Quotient, SeparabilityWitness, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{check_guard, Accumulator, Scalar, SparseMatrix, SparseVec};

use super::chain::ChainComplex;
use super::hochschild::{guard_dims, Hochschild, TensorShape};

/// Absolute chains modulo the `S`-balancing relations, degree by degree,
/// together with the induced boundary.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    pub complex: ChainComplex,
    pub quotients: Vec<Quotient>,
    terms: Vec<(Scalar, SparseVec, SparseVec)>,
    sub_basis: Vec<SparseVec>,
}

/// Expands `f_0 ⊗ f_1 ⊗ … ⊗ f_p` (each factor a vector in its slot's basis)
/// into `acc` with an overall coefficient.
pub(crate) fn expand(shape: &TensorShape, factors: &[SparseVec], coeff: &Scalar, acc: &mut Accumulator) {
    fn go(
        shape: &TensorShape,
        factors: &[SparseVec],
        k: usize,
        slots: &mut Vec<usize>,
        c: Scalar,
        acc: &mut Accumulator,
    ) {
        if k == factors.len() {
            acc.add(shape.encode(slots), c);
            return;
        }
        for (i, x) in factors[k].iter() {
            slots.push(i);
            go(shape, factors, k + 1, slots, &c * x, acc);
            slots.pop();
        }
    }
    if factors.iter().any(SparseVec::is_zero) {
        return;
    }
    let mut slots = Vec::with_capacity(factors.len());
    go(shape, factors, 0, &mut slots, coeff.clone(), acc);
}

fn relations(
    a: &StructureAlgebra,
    m: &Bimodule,
    sub_basis: &[SparseVec],
    p: usize,
) -> Vec<SparseVec> {
    let shape = TensorShape::new(m.dim(), a.dim());
    let mut out = BTreeSet::new();
    let mut slots = vec![0; p + 1];
    for idx in 0..shape.dim(p) {
        shape.decode_into(idx, &mut slots);
        let basis: Vec<SparseVec> = slots.iter().map(|&i| SparseVec::unit(i)).collect();
        for s in sub_basis {
            for j in 0..=p {
                let mut acc = Accumulator::new();
                let mut lhs = basis.clone();
                let mut rhs = basis.clone();
                if j < p {
                    // x_j·s ⊗ x_{j+1} − x_j ⊗ s·x_{j+1}
                    lhs[j] = if j == 0 {
                        m.act_right(&basis[0], s)
                    } else {
                        a.mul(&basis[j], s)
                    };
                    rhs[j + 1] = a.mul(s, &basis[j + 1]);
                } else {
                    // … ⊗ x_p·s − s·m ⊗ …
                    lhs[p] = if p == 0 {
                        m.act_right(&basis[0], s)
                    } else {
                        a.mul(&basis[p], s)
                    };
                    rhs[0] = m.act_left(s, &basis[0]);
                }
                let one = Scalar::from_integer(1.into());
                expand(&shape, &lhs, &one, &mut acc);
                expand(&shape, &rhs, &-one, &mut acc);
                let v = acc.into_vec();
                if !v.is_zero() {
                    out.insert(v.monic());
                }
            }
        }
    }
    out.into_iter().collect()
}

impl RelativeComplex {
    pub fn build(
        a: &StructureAlgebra,
        m: &Bimodule,
        w: &SeparabilityWitness,
        cap: usize,
    ) -> Result<Self> {
        w.verify(a)?;
        let h = Hochschild::new(a, m)?;
        let shape = h.shape();
        let sub_basis = w.embedded_basis();
        let abs_dims = guard_dims(
            "relative Hochschild complex",
            (0..=cap).map(|p| shape.checked_dim(p)),
        )?;
        let mut quotients = Vec::with_capacity(cap + 1);
        for (p, d) in abs_dims.iter().enumerate() {
            check_guard(
                &format!("relative Hochschild relations, degree {p}"),
                *d as u128 * sub_basis.len() as u128 * (p as u128 + 1),
            )?;
            let rels = relations(a, m, &sub_basis, p);
            quotients.push(Quotient::new(*d, &rels)?);
        }
        let mut boundaries = Vec::with_capacity(cap);
        for p in 1..=cap {
            let (qp, qd) = (&quotients[p], &quotients[p - 1]);
            for r in qp.relations.basis() {
                let image = qd.project(&h.apply(p, r));
                if !image.is_zero() {
                    return Err(Error::NonDescent(format!(
                        "degree {p}: the relation led by {} maps outside the relations",
                        h.label(p, r.leading().unwrap().0)
                    )));
                }
            }
            let cols = qp
                .complement
                .iter()
                .map(|&i| qd.project(&h.apply(p, &SparseVec::unit(i))))
                .collect();
            boundaries.push(SparseMatrix::from_columns(qd.dim, cols)?);
        }
        let dims = quotients.iter().map(|q| q.dim).collect();
        let basis = quotients
            .iter()
            .enumerate()
            .map(|(p, q)| q.complement.iter().map(|&i| h.label(p, i)).collect())
            .collect();
        let complex = ChainComplex::new(dims, boundaries, basis, false)?;
        Ok(Self {
            complex,
            quotients,
            terms: w.embedded_terms(),
            sub_basis,
        })
    }

    pub fn sub_basis(&self) -> &[SparseVec] {
        &self.sub_basis
    }

    /// `φ`: absolute chains onto the relative complex.
    pub fn phi(&self, p: usize, v: &SparseVec) -> SparseVec {
        self.quotients[p].project(v)
    }

    /// The lift of a relative basis element to the absolute basis tensor
    /// it is presented by.
    pub fn lift(&self, p: usize, q: usize) -> SparseVec {
        SparseVec::unit(self.quotients[p].complement[q])
    }

    /// `ψ∘φ` on absolute chains:
    /// `m⊗r_1⊗…⊗r_p ↦ Σ v_{i_p} m u_{i_0} ⊗ v_{i_0} r_1 u_{i_1} ⊗ … ⊗ v_{i_{p−1}} r_p u_{i_p}`.
    pub fn psi_hat(&self, a: &StructureAlgebra, m: &Bimodule, p: usize, x: &SparseVec) -> SparseVec {
        let shape = TensorShape::new(m.dim(), a.dim());
        let t = self.terms.len();
        let mut acc = Accumulator::new();
        let mut slots = vec![0; p + 1];
        for (idx, cx) in x.iter() {
            shape.decode_into(idx, &mut slots);
            let mut choice = vec![0usize; p + 1];
            loop {
                let mut coeff = cx.clone();
                for &i in &choice {
                    coeff *= &self.terms[i].0;
                }
                let mut factors = Vec::with_capacity(p + 1);
                let (_, u0, _) = &self.terms[choice[0]];
                let (_, _, vp) = &self.terms[choice[p]];
                factors.push(m.act_left(vp, &m.act_right(&SparseVec::unit(slots[0]), u0)));
                for k in 1..=p {
                    let (_, _, vprev) = &self.terms[choice[k - 1]];
                    let (_, uk, _) = &self.terms[choice[k]];
                    factors.push(a.mul(&a.mul(vprev, &SparseVec::unit(slots[k])), uk));
                }
                expand(&shape, &factors, &coeff, &mut acc);
                if !advance(&mut choice, t) {
                    break;
                }
            }
        }
        acc.into_vec()
    }

    /// `ψ` on a relative basis element.
    pub fn psi(&self, a: &StructureAlgebra, m: &Bimodule, p: usize, q: usize) -> SparseVec {
        self.psi_hat(a, m, p, &self.lift(p, q))
    }

    /// `h = Σ_{i=0}^{p} (−1)^i h_i : C_p → C_{p+1}` on absolute chains, with
    /// `h_i(m⊗r_1…r_p) = Σ m u_{j_0} ⊗ v_{j_0} r_1 u_{j_1} ⊗ … ⊗ v_{j_{i−1}} r_i u_{j_i} ⊗ v_{j_i} ⊗ r_{i+1} ⊗ … ⊗ r_p`.
    pub fn homotopy(&self, a: &StructureAlgebra, m: &Bimodule, p: usize, x: &SparseVec) -> SparseVec {
        let shape = TensorShape::new(m.dim(), a.dim());
        let t = self.terms.len();
        let mut acc = Accumulator::new();
        let mut slots = vec![0; p + 1];
        for (idx, cx) in x.iter() {
            shape.decode_into(idx, &mut slots);
            for i in 0..=p {
                let sign = if i % 2 == 0 { cx.clone() } else { -cx.clone() };
                let mut choice = vec![0usize; i + 1];
                loop {
                    let mut coeff = sign.clone();
                    for &c in &choice {
                        coeff *= &self.terms[c].0;
                    }
                    let mut factors = Vec::with_capacity(p + 2);
                    let (_, u0, _) = &self.terms[choice[0]];
                    factors.push(m.act_right(&SparseVec::unit(slots[0]), u0));
                    for k in 1..=i {
                        let (_, _, vprev) = &self.terms[choice[k - 1]];
                        let (_, uk, _) = &self.terms[choice[k]];
                        factors.push(a.mul(&a.mul(vprev, &SparseVec::unit(slots[k])), uk));
                    }
                    factors.push(self.terms[choice[i]].2.clone());
                    for k in (i + 1)..=p {
                        factors.push(SparseVec::unit(slots[k]));
                    }
                    expand(&shape, &factors, &coeff, &mut acc);
                    if !advance(&mut choice, t) {
                        break;
                    }
                }
            }
        }
        acc.into_vec()
    }
}

/// Odometer over `{0..base}^len`; false once every tuple has been visited.
fn advance(choice: &mut [usize], base: usize) -> bool {
    for c in choice.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

/// `C^S_•(A, M)` in degrees `0..=cap`.
pub fn build_relative_hochschild_complex(
    a: &StructureAlgebra,
    m: &Bimodule,
    w: &SeparabilityWitness,
    cap: usize,
) -> Result<RelativeComplex> {
    RelativeComplex::build(a, m, w, cap)
}
