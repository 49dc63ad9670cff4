//! Morita invariance and the separable reduction on small matrix algebras,
//! with HH(R) itself as the reference.

use homalg::algebra::{
    abelianization, matrix_algebra, matrix_index, product_algebra, Bimodule, SeparabilityWitness, StructureAlgebra,
};
use homalg::complex::{
    build_cyclic_total_complex, build_hochschild_complex_regular, build_relative_hochschild_complex, reliable_betti,
};

fn bases() -> Vec<(&'static str, StructureAlgebra)> {
    let k = StructureAlgebra::ground_field();
    vec![
        ("k", k.clone()),
        ("k×k", product_algebra(&k, &k)),
        ("k[eps]", StructureAlgebra::dual_numbers()),
    ]
}

/// Idempotent basis elements of `R` summing to 1, for the bases above.
fn primitive_units(r: &StructureAlgebra) -> Vec<usize> {
    match r.dim() {
        1 => vec![0],
        2 if r.basis_product(1, 1).is_zero() => vec![0],
        _ => vec![0, 1],
    }
}

fn hh(r: &StructureAlgebra, cap: usize) -> Vec<usize> {
    reliable_betti(&build_hochschild_complex_regular(r, cap).unwrap()).unwrap()
}

/// HH of `M_n(R)` relative to the span of `e_{ii} ⊗ u` over primitive units `u`.
fn relative_matrix(r: &StructureAlgebra, n: usize, cap: usize) -> Vec<usize> {
    let a = matrix_algebra(r, n);
    let idem: Vec<usize> = (0..n)
        .flat_map(|i| primitive_units(r).into_iter().map(move |u| (i, u)))
        .map(|(i, u)| matrix_index(n, r.dim(), i, i, u))
        .collect();
    let w = SeparabilityWitness::diagonal(&a, &idem);
    let rel = build_relative_hochschild_complex(&a, &Bimodule::regular(&a), &w, cap).unwrap();
    reliable_betti(&rel.complex).unwrap()
}

#[test]
fn two_by_two_matches_base_absolutely_and_relatively() {
    for (name, r) in bases() {
        let want = hh(&r, 3);
        let m2 = matrix_algebra(&r, 2);
        assert_eq!(hh(&m2, 3), want, "absolute M2({name})");
        assert_eq!(relative_matrix(&r, 2, 3), want, "relative M2({name})");
    }
}

#[test]
fn three_by_three() {
    let k = StructureAlgebra::ground_field();
    assert_eq!(hh(&matrix_algebra(&k, 3), 4), vec![1, 0, 0, 0], "absolute M3(k)");
    for (name, r) in bases() {
        assert_eq!(relative_matrix(&r, 3, 3), hh(&r, 3), "relative M3({name})");
    }
}

#[test]
fn abelianization_is_morita_invariant() {
    for (name, r) in bases() {
        let base = abelianization(&r).unwrap().dim;
        assert_eq!(base, r.dim(), "{name} is commutative");
        for n in 1..=3 {
            assert_eq!(abelianization(&matrix_algebra(&r, n)).unwrap().dim, base, "M{n}({name})");
        }
    }
}

#[test]
fn cyclic_degree_zero_is_abelianization() {
    for (name, r) in bases() {
        let hc = reliable_betti(&build_cyclic_total_complex(&r, 2).unwrap()).unwrap();
        assert_eq!(hc[0], abelianization(&r).unwrap().dim, "{name}");
    }
    let m2 = matrix_algebra(&StructureAlgebra::ground_field(), 2);
    let hc = reliable_betti(&build_cyclic_total_complex(&m2, 1).unwrap()).unwrap();
    assert_eq!(hc[0], 1);
}
