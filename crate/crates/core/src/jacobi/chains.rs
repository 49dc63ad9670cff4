//! Hochschild chains of `J(R)` and the maps `Φ̃_p: R^{⊗p+1} → J(R)^{⊗p+2}`.
//!
//! A chain is a rational combination of tensors of atoms; an atom is a single
//! basis coefficient of `R` placed on one residue class of one diagonal, or on
//! one matrix entry. Tensors are multilinear in their factors, so expanding
//! every factor into atoms gives a canonical form once all periodic atoms are
//! refined to a common period.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::complex::{connes_b_apply, Hochschild, TensorShape};
use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec};

use super::element::{JElement, JacobiAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Diag {
        offset: i64,
        residue: usize,
        period: usize,
        basis: usize,
    },
    Entry {
        i: i64,
        j: i64,
        basis: usize,
    },
}

impl Atom {
    pub fn element(&self, dim: usize) -> JElement {
        match *self {
            Atom::Diag {
                offset,
                residue,
                period,
                basis,
            } => JElement::periodic(dim, period, [((offset, residue), SparseVec::unit(basis))]),
            Atom::Entry { i, j, basis } => JElement::unit_entry(dim, i, j, SparseVec::unit(basis)),
        }
    }

    fn period(&self) -> usize {
        match self {
            Atom::Diag { period, .. } => *period,
            Atom::Entry { .. } => 1,
        }
    }

    fn refine(&self, period: usize) -> Vec<Atom> {
        match *self {
            Atom::Diag {
                offset,
                residue,
                period: p,
                basis,
            } => (0..period / p)
                .map(|k| Atom::Diag {
                    offset,
                    residue: residue + k * p,
                    period,
                    basis,
                })
                .collect(),
            Atom::Entry { .. } => vec![self.clone()],
        }
    }
}

/// `x` as a combination of atoms.
pub fn atoms(x: &JElement) -> Vec<(Atom, Scalar)> {
    let mut out = Vec::new();
    for ((offset, residue), r) in x.laurent() {
        for (basis, c) in r.iter() {
            let atom = Atom::Diag {
                offset: *offset,
                residue: *residue,
                period: x.period(),
                basis,
            };
            out.push((atom, c.clone()));
        }
    }
    for ((i, j), r) in x.corner() {
        for (basis, c) in r.iter() {
            out.push((Atom::Entry { i: *i, j: *j, basis }, c.clone()));
        }
    }
    out
}

/// A chain in `J(R)^{⊗factors}`.
#[derive(Clone, Debug, Default)]
pub struct JChain {
    factors: usize,
    terms: BTreeMap<Vec<Atom>, Scalar>,
}

impl JChain {
    pub fn zero(factors: usize) -> Self {
        Self {
            factors,
            terms: BTreeMap::new(),
        }
    }

    /// Hochschild degree, one less than the number of factors.
    pub fn degree(&self) -> usize {
        self.factors - 1
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Atom>, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_atoms(&mut self, key: Vec<Atom>, c: Scalar) {
        debug_assert_eq!(key.len(), self.factors);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds `c · x_0 ⊗ … ⊗ x_k`, expanded multilinearly.
    pub fn add_tensor(&mut self, c: &Scalar, factors: &[JElement]) {
        let mut partial: Vec<(Vec<Atom>, Scalar)> = vec![(Vec::new(), c.clone())];
        for f in factors {
            let fa = atoms(f);
            let mut next = Vec::with_capacity(partial.len() * fa.len());
            for (key, c) in &partial {
                for (a, d) in &fa {
                    let mut k = key.clone();
                    k.push(a.clone());
                    next.push((k, c * d));
                }
            }
            partial = next;
        }
        for (k, c) in partial {
            self.add_atoms(k, c);
        }
    }

    pub fn tensor(c: &Scalar, factors: &[JElement]) -> Self {
        let mut out = Self::zero(factors.len());
        out.add_tensor(c, factors);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.factors, other.factors);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_atoms(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.factors);
        for (k, d) in &self.terms {
            out.add_atoms(k.clone(), c * d);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    fn common_period(&self) -> usize {
        self.terms
            .keys()
            .flatten()
            .fold(1usize, |l, a| l.lcm(&a.period()))
    }

    /// Every periodic atom refined to the common period, with zero
    /// coefficients dropped; two chains are equal iff their canonical forms
    /// (at a common period) agree.
    pub fn canonical(&self, period: usize) -> BTreeMap<Vec<Atom>, Scalar> {
        let mut out: BTreeMap<Vec<Atom>, Scalar> = BTreeMap::new();
        for (key, c) in &self.terms {
            let mut partial: Vec<Vec<Atom>> = vec![Vec::new()];
            for a in key {
                let parts = a.refine(period);
                partial = partial
                    .iter()
                    .flat_map(|k| {
                        parts.iter().map(move |p| {
                            let mut k = k.clone();
                            k.push(p.clone());
                            k
                        })
                    })
                    .collect();
            }
            for k in partial {
                *out.entry(k).or_insert_with(Scalar::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.canonical(self.common_period()).is_empty()
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.factors == other.factors && self.sub(other).is_zero()
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let fmt_atom = |a: &Atom| match a {
            Atom::Diag {
                offset,
                period: 1,
                basis,
                ..
            } => format!("t^{offset}[{basis}]"),
            Atom::Diag {
                offset,
                residue,
                period,
                basis,
            } => format!("t^{offset}@{residue}:{period}[{basis}]"),
            Atom::Entry { i, j, basis } => format!("e({i},{j})[{basis}]"),
        };
        self.canonical(self.common_period())
            .iter()
            .map(|(k, c)| {
                let t = k.iter().map(fmt_atom).collect::<Vec<_>>().join("⊗");
                format!("{}*{t}", crate::linalg::fmt_fraction(c))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl JacobiAlgebra {
    /// The Hochschild boundary of `J(R)` on a chain with at least 2 factors;
    /// zero on degree 0.
    pub fn chain_b(&self, c: &JChain) -> JChain {
        let p = c.degree();
        if p == 0 {
            return JChain::zero(1);
        }
        let d = self.dim();
        let mut out = JChain::zero(p);
        for (key, coeff) in &c.terms {
            let els: Vec<JElement> = key.iter().map(|a| a.element(d)).collect();
            for i in 0..p {
                let mut f = Vec::with_capacity(p);
                f.extend_from_slice(&els[..i]);
                f.push(self.mul(&els[i], &els[i + 1]));
                f.extend_from_slice(&els[i + 2..]);
                let s = if i % 2 == 1 { -coeff.clone() } else { coeff.clone() };
                out.add_tensor(&s, &f);
            }
            let mut f = Vec::with_capacity(p);
            f.push(self.mul(&els[p], &els[0]));
            f.extend_from_slice(&els[1..p]);
            let s = if p % 2 == 1 { -coeff.clone() } else { coeff.clone() };
            out.add_tensor(&s, &f);
        }
        out
    }

    /// Connes' `B` on chains of `J(R)`, inserting the unit `I`.
    pub fn chain_connes_b(&self, c: &JChain) -> JChain {
        let p = c.degree();
        let d = self.dim();
        let one = self.identity();
        let mut out = JChain::zero(p + 2);
        for (key, coeff) in &c.terms {
            let els: Vec<JElement> = key.iter().map(|a| a.element(d)).collect();
            for i in 0..=p {
                let s = if (p * i) % 2 == 1 { -coeff.clone() } else { coeff.clone() };
                let rot: Vec<JElement> = els[i..].iter().chain(&els[..i]).cloned().collect();
                let mut f = vec![one.clone()];
                f.extend_from_slice(&rot);
                out.add_tensor(&s, &f);
                let mut f = vec![rot[0].clone(), one.clone()];
                f.extend_from_slice(&rot[1..]);
                out.add_tensor(&s, &f);
            }
        }
        out
    }

    /// `r_0 I ⊗ … ⊗ r_p I` for a chain of `R^{⊗p+1}`.
    pub fn embed(&self, p: usize, v: &SparseVec) -> JChain {
        let shape = TensorShape::new(self.dim(), self.dim());
        let mut out = JChain::zero(p + 1);
        for (idx, c) in v.iter() {
            let f: Vec<JElement> = shape
                .decode(idx, p)
                .iter()
                .map(|x| self.scalar(&SparseVec::unit(*x)))
                .collect();
            out.add_tensor(c, &f);
        }
        out
    }

    /// `Φ̃_p(r_0⊗…⊗r_p) = r_0 I ⊗ Σ_{k=0}^p (−1)^k r_1 I⊗…⊗r_k I⊗τ⊗r_{k+1} I⊗…⊗r_p I`.
    pub fn tilde_phi(&self, p: usize, v: &SparseVec) -> JChain {
        let shape = TensorShape::new(self.dim(), self.dim());
        let tau = self.tau(1);
        let mut out = JChain::zero(p + 2);
        for (idx, c) in v.iter() {
            let rs: Vec<JElement> = shape
                .decode(idx, p)
                .iter()
                .map(|x| self.scalar(&SparseVec::unit(*x)))
                .collect();
            for k in 0..=p {
                let mut f = Vec::with_capacity(p + 2);
                f.extend_from_slice(&rs[..=k]);
                f.push(tau.clone());
                f.extend_from_slice(&rs[k + 1..]);
                let s = if k % 2 == 1 { -c.clone() } else { c.clone() };
                out.add_tensor(&s, &f);
            }
        }
        out
    }

    /// `b∘Φ̃_{p+1} + Φ̃_p∘b` on one chain of `R^{⊗p+2}`.
    pub fn phi_chain_defect(&self, p: usize, v: &SparseVec) -> JChain {
        let reg = Bimodule::regular(self.base());
        let h = Hochschild::new(self.base(), &reg).expect("regular bimodule");
        self.chain_b(&self.tilde_phi(p + 1, v))
            .add(&self.tilde_phi(p, &h.apply(p + 1, v)))
    }

    /// Checks `(Φ̃_{p+1}∘B_R + B_J∘Φ̃_p)(ω) = −b(I⊗τ⊗I⊗N(ω))` for a cycle
    /// `ω ∈ R^{⊗p+1}`, returning both sides.
    pub fn b_compatibility(&self, p: usize, omega: &SparseVec) -> Result<(JChain, JChain)> {
        let reg = Bimodule::regular(self.base());
        let h = Hochschild::new(self.base(), &reg)?;
        if p > 0 && !h.apply(p, omega).is_zero() {
            return Err(Error::Precondition("ω is not a Hochschild cycle".into()));
        }
        let lhs = self
            .tilde_phi(p + 1, &connes_b_apply(self.base(), p, omega))
            .add(&self.chain_connes_b(&self.tilde_phi(p, omega)));
        let n = norm_operator(self.dim(), p, omega);
        let head = [self.identity(), self.tau(1), self.identity()];
        let mut inner = JChain::zero(p + 4);
        for (key, c) in &self.embed(p, &n).terms {
            let mut f = head.to_vec();
            f.extend(key.iter().map(|a| a.element(self.dim())));
            inner.add_tensor(c, &f);
        }
        let rhs = self.chain_b(&inner).scale(&-Scalar::from_integer(1.into()));
        Ok((lhs, rhs))
    }

    pub fn check_b_compatibility(&self, p: usize, omega: &SparseVec) -> Result<bool> {
        let (lhs, rhs) = self.b_compatibility(p, omega)?;
        Ok(lhs.equals(&rhs))
    }
}

/// `t(r_0⊗…⊗r_p) = (−1)^p r_p⊗r_0⊗…⊗r_{p−1}`.
pub fn cyclic_t(dim: usize, p: usize, v: &SparseVec) -> SparseVec {
    let shape = TensorShape::new(dim, dim);
    let sign = if p % 2 == 1 { -Scalar::from_integer(1.into()) } else { Scalar::from_integer(1.into()) };
    SparseVec::from_pairs(v.iter().map(|(idx, c)| {
        let mut s = shape.decode(idx, p);
        s.rotate_right(1);
        (shape.encode(&s), c * &sign)
    }))
}

/// `N = Σ_{k=0}^p t^k`.
pub fn norm_operator(dim: usize, p: usize, v: &SparseVec) -> SparseVec {
    let mut acc = v.clone();
    let mut cur = v.clone();
    for _ in 0..p {
        cur = cyclic_t(dim, p, &cur);
        acc = acc.add(&cur);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{product_algebra, StructureAlgebra};
    use crate::linalg::int;

    fn algebras() -> Vec<StructureAlgebra> {
        let k = StructureAlgebra::ground_field();
        vec![k.clone(), product_algebra(&k, &k), StructureAlgebra::dual_numbers()]
    }

    #[test]
    fn phi_low_degrees() {
        let j = JacobiAlgebra::new(StructureAlgebra::dual_numbers());
        let eps = SparseVec::unit(1);
        let want = JChain::tensor(&int(1), &[j.scalar(&eps), j.tau(1)]);
        assert!(j.tilde_phi(0, &SparseVec::unit(1)).equals(&want));
        // Φ̃₁(r₀⊗r₁) = r₀I⊗τ⊗r₁I − r₀I⊗r₁I⊗τ with r₀ = 1, r₁ = ε
        let one = SparseVec::unit(0);
        let want = JChain::tensor(&int(1), &[j.scalar(&one), j.tau(1), j.scalar(&eps)])
            .sub(&JChain::tensor(&int(1), &[j.scalar(&one), j.scalar(&eps), j.tau(1)]));
        assert!(j.tilde_phi(1, &SparseVec::unit(1)).equals(&want));
        let both = SparseVec::from_pairs([(0, int(1)), (1, int(1))]);
        assert!(j
            .tilde_phi(0, &both)
            .equals(&j.tilde_phi(0, &SparseVec::unit(0)).add(&j.tilde_phi(0, &SparseVec::unit(1)))));
    }

    #[test]
    fn degree_zero_boundary_vanishes() {
        let j = JacobiAlgebra::new(StructureAlgebra::ground_field());
        assert!(j.chain_b(&JChain::tensor(&int(1), &[j.tau(1)])).is_zero());
    }

    #[test]
    fn connes_b_on_scalars() {
        let j = JacobiAlgebra::new(StructureAlgebra::dual_numbers());
        let r = j.scalar(&SparseVec::unit(1));
        let got = j.chain_connes_b(&JChain::tensor(&int(1), &[r.clone()]));
        let want = JChain::tensor(&int(1), &[j.identity(), r.clone()]).add(&JChain::tensor(&int(1), &[r, j.identity()]));
        assert!(got.equals(&want));
    }

    #[test]
    fn chain_map_identity_exhaustive() {
        for r in algebras() {
            let j = JacobiAlgebra::new(r);
            let d = j.dim();
            for p in 0..=2 {
                for idx in 0..d.pow(p as u32 + 2) {
                    let defect = j.phi_chain_defect(p, &SparseVec::unit(idx));
                    assert!(defect.is_zero(), "p = {p}, idx = {idx}: {}", defect.format());
                }
            }
        }
    }

    #[test]
    fn norm_operator_examples() {
        let d = 2;
        let v = SparseVec::unit(1); // 1⊗eps
        assert_eq!(norm_operator(d, 0, &SparseVec::unit(1)), SparseVec::unit(1));
        assert_eq!(norm_operator(d, 1, &v), SparseVec::from_pairs([(1, int(1)), (2, int(-1))]));
        for idx in 0..8 {
            let v = SparseVec::unit(idx);
            assert_eq!(norm_operator(d, 2, &cyclic_t(d, 2, &v)), cyclic_t(d, 2, &norm_operator(d, 2, &v)));
        }
    }

    #[test]
    fn b_compatibility_on_examples() {
        let k = JacobiAlgebra::new(StructureAlgebra::ground_field());
        assert!(k.check_b_compatibility(0, &SparseVec::unit(0)).unwrap());
        let d = JacobiAlgebra::new(StructureAlgebra::dual_numbers());
        assert!(d.check_b_compatibility(1, &SparseVec::unit(3)).unwrap());
        let kk = JacobiAlgebra::new(algebras().remove(1));
        assert!(kk.check_b_compatibility(0, &SparseVec::unit(0)).unwrap());
        assert!(matches!(
            k.check_b_compatibility(2, &SparseVec::unit(0)),
            Err(Error::Precondition(_))
        ));
    }
}
