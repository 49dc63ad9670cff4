//! Products, powers and matrix algebras.

use crate::linalg::SparseVec;

use super::structure::StructureAlgebra;

/// `a × b` with basis `(x,0)` for `x` in `a` followed by `(0,y)` for `y` in `b`.
pub fn product_algebra(a: &StructureAlgebra, b: &StructureAlgebra) -> StructureAlgebra {
    let da = a.dim();
    let labels = a
        .labels()
        .iter()
        .map(|x| format!("({x},0)"))
        .chain(b.labels().iter().map(|y| format!("(0,{y})")))
        .collect();
    let products = a
        .products()
        .map(|(k, v)| (k, v.clone()))
        .chain(
            b.products()
                .map(|((i, j), v)| ((i + da, j + da), v.map_indices(|t| t + da))),
        )
        .collect::<Vec<_>>();
    let unit = a.unit().add(&b.unit().map_indices(|t| t + da));
    StructureAlgebra::new(labels, products, unit).expect("products of algebras are algebras")
}

/// `R^n`, componentwise; basis index `k·dim(R) + x` for component `k`.
/// Labels are `x[k]` with `k` counted from 1.
pub fn power_algebra(r: &StructureAlgebra, n: usize) -> StructureAlgebra {
    assert!(n >= 1, "power_algebra needs n >= 1");
    let d = r.dim();
    let labels = (0..n)
        .flat_map(|k| r.labels().iter().map(move |x| format!("{x}[{}]", k + 1)))
        .collect();
    let mut products = Vec::new();
    let mut unit = SparseVec::new();
    for k in 0..n {
        let off = k * d;
        for ((i, j), v) in r.products() {
            products.push(((i + off, j + off), v.map_indices(|t| t + off)));
        }
        unit = unit.add(&r.unit().map_indices(|t| t + off));
    }
    StructureAlgebra::new(labels, products, unit).expect("powers of algebras are algebras")
}

/// Index of `e_{i,j} ⊗ x` in [`matrix_algebra`] (all indices from 0).
pub fn matrix_index(n: usize, rdim: usize, i: usize, j: usize, x: usize) -> usize {
    (i * n + j) * rdim + x
}

/// `M_n(R)` with basis `e_{i,j} ⊗ x`. Labels are `e{i}{j}` (1-based) when
/// `R = k`, and `e{i}{j}*x` otherwise.
pub fn matrix_algebra(r: &StructureAlgebra, n: usize) -> StructureAlgebra {
    assert!(n >= 1, "matrix_algebra needs n >= 1");
    let d = r.dim();
    let scalar = d == 1;
    let mut labels = Vec::with_capacity(n * n * d);
    for i in 0..n {
        for j in 0..n {
            for x in r.labels() {
                labels.push(if scalar {
                    format!("e{}{}", i + 1, j + 1)
                } else {
                    format!("e{}{}*{x}", i + 1, j + 1)
                });
            }
        }
    }
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for ((x, y), v) in r.products() {
                    products.push((
                        (matrix_index(n, d, i, j, x), matrix_index(n, d, j, l, y)),
                        v.map_indices(|t| matrix_index(n, d, i, l, t)),
                    ));
                }
            }
        }
    }
    let mut unit = SparseVec::new();
    for i in 0..n {
        unit = unit.add(&r.unit().map_indices(|t| matrix_index(n, d, i, i, t)));
    }
    StructureAlgebra::new(labels, products, unit).expect("matrix algebras are algebras")
}

/// `k^m` on the given labels: orthogonal idempotents summing to 1.
pub fn diagonal_algebra(labels: Vec<String>) -> StructureAlgebra {
    let m = labels.len();
    let products = (0..m).map(|i| ((i, i), SparseVec::unit(i))).collect::<Vec<_>>();
    let unit = (0..m).map(|i| (i, crate::linalg::int(1))).collect();
    StructureAlgebra::new(labels, products, unit).expect("k^m is an algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_fields_has_orthogonal_idempotents() {
        let k = StructureAlgebra::ground_field();
        let kk = product_algebra(&k, &k);
        assert_eq!(kk.dim(), 2);
        assert_eq!(kk.labels(), ["(1,0)", "(0,1)"]);
        assert!(kk.basis_product(0, 1).is_zero());
        assert_eq!(*kk.basis_product(1, 1), SparseVec::unit(1));
        let kd = product_algebra(&k, &StructureAlgebra::dual_numbers());
        assert_eq!(kd.dim(), 3);
    }

    #[test]
    fn matrix_units_multiply() {
        let k = StructureAlgebra::ground_field();
        let m2 = matrix_algebra(&k, 2);
        assert_eq!(m2.dim(), 4);
        let e12 = m2.index_of("e12").unwrap();
        let e21 = m2.index_of("e21").unwrap();
        let e11 = m2.index_of("e11").unwrap();
        assert_eq!(*m2.basis_product(e12, e21), SparseVec::unit(e11));
        assert_eq!(matrix_algebra(&k, 1), StructureAlgebra::new(
            vec!["e11".into()],
            [((0, 0), SparseVec::unit(0))],
            SparseVec::unit(0),
        ).unwrap());
        let m2e = matrix_algebra(&StructureAlgebra::dual_numbers(), 2);
        assert_eq!(m2e.dim(), 8);
        let e11eps = m2e.index_of("e11*eps").unwrap();
        assert!(m2e.basis_product(e11eps, e11eps).is_zero());
    }

    #[test]
    fn power_matches_iterated_product_dimension() {
        let d = StructureAlgebra::dual_numbers();
        let p = power_algebra(&d, 3);
        assert_eq!(p.dim(), 6);
        assert_eq!(p.label(3), "eps[2]");
    }
}
