//! Group algebras of finite cyclic groups and smash products with them.

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{rank, Scalar, SparseMatrix, SparseVec};

use super::constructions::{matrix_algebra, matrix_index, power_algebra};
use super::structure::{check_algebra_map, StructureAlgebra};

/// `k[Z/n]` with its group-like Hopf structure: `Δ(g) = g⊗g`, `ε(g) = 1`,
/// `S(g) = g⁻¹`. Basis element `s` is `g^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicGroup {
    n: usize,
}

impl CyclicGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        Self { n }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> StructureAlgebra {
        let n = self.n;
        let labels = (0..n).map(|s| format!("g{s}")).collect();
        let products = (0..n)
            .flat_map(|s| (0..n).map(move |t| ((s, t), SparseVec::unit((s + t) % n))))
            .collect::<Vec<_>>();
        StructureAlgebra::new(labels, products, SparseVec::unit(0)).expect("group algebra")
    }

    pub fn compose(&self, s: usize, t: usize) -> usize {
        (s + t) % self.n
    }

    pub fn inverse(&self, s: usize) -> usize {
        (self.n - s % self.n) % self.n
    }

    /// `Δ(g^s) = g^s ⊗ g^s`.
    pub fn coproduct(&self, s: usize) -> (usize, usize) {
        (s, s)
    }

    pub fn counit(&self, _s: usize) -> Scalar {
        Scalar::one()
    }

    pub fn antipode(&self, s: usize) -> usize {
        self.inverse(s)
    }
}

/// An action of `Z/n` on an algebra by a single automorphism `φ(g)` with
/// `φ(g)^n = id`, checked on construction.
#[derive(Clone, Debug)]
pub struct CyclicAction {
    powers: Vec<SparseMatrix>,
}

impl CyclicAction {
    pub fn new(a: &StructureAlgebra, group: &CyclicGroup, generator: SparseMatrix) -> Result<Self> {
        let d = a.dim();
        if generator.rows() != d || generator.cols() != d {
            return Err(Error::Action(format!(
                "generator matrix is {}x{}, algebra has dimension {d}",
                generator.rows(),
                generator.cols()
            )));
        }
        if generator.apply(a.unit()) != *a.unit() {
            return Err(Error::Action("the unit is not fixed".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = generator.apply(a.basis_product(i, j));
                let rhs = a.mul(generator.column(i), generator.column(j));
                if lhs != rhs {
                    return Err(Error::Action(format!(
                        "not multiplicative on the pair ({}, {})",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        if rank(&generator)? != d {
            return Err(Error::Action("the generator is not invertible".into()));
        }
        let mut powers = vec![SparseMatrix::identity(d)];
        for s in 1..=group.order() {
            powers.push(generator.mul(&powers[s - 1])?);
        }
        if powers.pop() != Some(SparseMatrix::identity(d)) {
            return Err(Error::Action(format!(
                "the generator does not have order dividing {}",
                group.order()
            )));
        }
        Ok(Self { powers })
    }

    pub fn power(&self, s: usize) -> &SparseMatrix {
        &self.powers[s % self.powers.len()]
    }

    pub fn apply(&self, s: usize, x: &SparseVec) -> SparseVec {
        self.power(s).apply(x)
    }
}

/// Basis index of `a ⊗ g^s` in the smash product.
pub fn smash_index(n: usize, a: usize, s: usize) -> usize {
    a * n + s
}

/// `A ♯ k[Z/n]` with `(a⊗g^s)(b⊗g^t) = a·φ^s(b) ⊗ g^{s+t}`.
pub fn smash_product(
    a: &StructureAlgebra,
    group: &CyclicGroup,
    action: &CyclicAction,
) -> Result<StructureAlgebra> {
    let n = group.order();
    let d = a.dim();
    let mut labels = Vec::with_capacity(d * n);
    for x in a.labels() {
        for s in 0..n {
            labels.push(format!("{x}#g{s}"));
        }
    }
    let mut products = Vec::new();
    for i in 0..d {
        for s in 0..n {
            for j in 0..d {
                let twisted = a.mul(&SparseVec::unit(i), action.power(s).column(j));
                for t in 0..n {
                    let u = group.compose(s, t);
                    products.push((
                        (smash_index(n, i, s), smash_index(n, j, t)),
                        twisted.map_indices(|c| smash_index(n, c, u)),
                    ));
                }
            }
        }
    }
    let unit = a.unit().map_indices(|c| smash_index(n, c, 0));
    StructureAlgebra::new(labels, products, unit)
}

/// The cyclic shift on `R^n` (as built by [`power_algebra`]):
/// `φ(b)_k = b_{k+1}`, indices mod `n`.
pub fn cyclic_shift_action(r: &StructureAlgebra, n: usize) -> SparseMatrix {
    let d = r.dim();
    // The basis vector at component k' lands in component k' - 1.
    let cols = (0..n)
        .flat_map(|k| (0..d).map(move |x| SparseVec::unit(((k + n - 1) % n) * d + x)))
        .collect();
    SparseMatrix::from_columns(n * d, cols).expect("in range")
}

/// The algebra map `R^n ♯ k[Z/n] → M_n(R)` sending `(a_1..a_n) ⊗ g^i` to
/// `Σ_k a_k e_{k,k+i}`, as a matrix from the smash basis.
pub fn smash_to_matrix_map(r: &StructureAlgebra, n: usize) -> SparseMatrix {
    let d = r.dim();
    let mut cols = Vec::with_capacity(n * d * n);
    for k in 0..n {
        for x in 0..d {
            for i in 0..n {
                cols.push(SparseVec::unit(matrix_index(n, d, k, (k + i) % n, x)));
            }
        }
    }
    SparseMatrix::from_columns(n * n * d, cols).expect("in range")
}

/// Builds `R^n ♯ k[Z/n]` with the shift action and checks that
/// [`smash_to_matrix_map`] is a bijective unital algebra map onto `M_n(R)`.
pub fn verify_smash_matrix_isomorphism(
    r: &StructureAlgebra,
    n: usize,
) -> Result<std::result::Result<(), String>> {
    let group = CyclicGroup::new(n);
    let rn = power_algebra(r, n);
    let action = CyclicAction::new(&rn, &group, cyclic_shift_action(r, n))?;
    let smash = smash_product(&rn, &group, &action)?;
    let target = matrix_algebra(r, n);
    let map = smash_to_matrix_map(r, n);
    if let Err(e) = check_algebra_map(&smash, &target, &map) {
        return Ok(Err(e));
    }
    if rank(&map)? != target.dim() || smash.dim() != target.dim() {
        return Ok(Err("the map is not bijective".into()));
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::constructions::diagonal_algebra;

    #[test]
    fn group_algebra_data() {
        let g = CyclicGroup::new(2);
        let a = g.algebra();
        assert_eq!(*a.basis_product(1, 1), SparseVec::unit(0));
        assert_eq!(g.counit(1), Scalar::one());
        assert_eq!(g.antipode(1), 1);
        assert_eq!(CyclicGroup::new(1).algebra().dim(), 1);
    }

    #[test]
    fn swap_smash_product() {
        let k = StructureAlgebra::ground_field();
        let k2 = power_algebra(&k, 2);
        let g = CyclicGroup::new(2);
        let act = CyclicAction::new(&k2, &g, cyclic_shift_action(&k, 2)).unwrap();
        let c = smash_product(&k2, &g, &act).unwrap();
        // (1,0)#g0 · (0,1)#g0 = 0
        assert!(c
            .basis_product(smash_index(2, 0, 0), smash_index(2, 1, 0))
            .is_zero());
        // (1,0)#g1 · (0,1)#g0 = (1,0)·(1,0) # g1
        assert_eq!(
            *c.basis_product(smash_index(2, 0, 1), smash_index(2, 1, 0)),
            SparseVec::unit(smash_index(2, 0, 1))
        );
    }

    #[test]
    fn isomorphism_small_cases() {
        let k = StructureAlgebra::ground_field();
        for n in 1..=3 {
            assert_eq!(verify_smash_matrix_isomorphism(&k, n).unwrap(), Ok(()));
        }
        let d = StructureAlgebra::dual_numbers();
        assert_eq!(verify_smash_matrix_isomorphism(&d, 2).unwrap(), Ok(()));
    }

    #[test]
    fn bad_actions_are_rejected() {
        let kk = diagonal_algebra(vec!["a".into(), "b".into()]);
        let g = CyclicGroup::new(2);
        let kill = SparseMatrix::from_int_rows(&[vec![1, 1], vec![0, 0]]);
        assert!(matches!(
            CyclicAction::new(&kk, &g, kill),
            Err(Error::Action(_))
        ));
        let g3 = CyclicGroup::new(3);
        let swap = SparseMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(
            CyclicAction::new(&kk, &g3, swap),
            Err(Error::Action(m)) if m.contains("order")
        ));
    }
}
