use homalg::algebra::{product_algebra, StructureAlgebra};
use homalg::jacobi::cocycle::window;
use homalg::jacobi::{
    h0_preimage, reduce_to_tau, tau_witness, CocycleContext, GroupChain, JElement, JacobiAlgebra, Sequence,
};
use homalg::linalg::{image, int, kernel, rank_and_bases, SparseMatrix, SparseVec, Subspace};
use proptest::prelude::*;

fn base(which: usize) -> StructureAlgebra {
    let k = StructureAlgebra::ground_field();
    match which {
        0 => k,
        1 => product_algebra(&k, &k),
        _ => StructureAlgebra::dual_numbers(),
    }
}

fn coeffs(dim: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(-2i64..=2, dim).prop_map(|v| SparseVec::from_dense(&v.into_iter().map(int).collect::<Vec<_>>()))
}

/// Periodic diagonals within bandwidth 4 plus a few entries near the origin.
fn element(dim: usize) -> impl Strategy<Value = JElement> {
    (1usize..=2).prop_flat_map(move |period| {
        let diags = proptest::collection::vec(((-4i64..=4, 0..period), coeffs(dim)), 0..=3);
        let entries = proptest::collection::vec(((-3i64..=3, -4i64..=4), coeffs(dim)), 0..=2);
        (diags, entries).prop_map(move |(d, e)| {
            let x = JElement::periodic(dim, period, d);
            e.into_iter()
                .fold(x, |acc, ((i, off), r)| acc.add(&JElement::unit_entry(dim, i, i + off, r)))
        })
    })
}

fn triple() -> impl Strategy<Value = (usize, JElement, JElement, JElement)> {
    (0usize..3).prop_flat_map(|w| {
        let d = base(w).dim();
        (Just(w), element(d), element(d), element(d))
    })
}

fn diagonal_only(dim: usize) -> impl Strategy<Value = JElement> {
    proptest::collection::vec((0usize..2, coeffs(dim)), 1..=2)
        .prop_map(move |v| JElement::periodic(dim, 2, v.into_iter().map(|(a, r)| ((0, a), r))))
}

fn finite_sequence() -> impl Strategy<Value = Sequence> {
    proptest::collection::vec((-6i64..=6, coeffs(2)), 0..=4).prop_map(Sequence::finite)
}

fn sparse_matrix(rows: usize, cols: usize) -> impl Strategy<Value = SparseMatrix> {
    proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], rows * cols).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(cols).map(|x| x.to_vec()).collect();
        SparseMatrix::from_int_rows(&rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative((w, x, y, z) in triple()) {
        let j = JacobiAlgebra::new(base(w));
        prop_assert_eq!(j.mul(&j.mul(&x, &y), &z), j.mul(&x, &j.mul(&y, &z)));
    }

    #[test]
    fn bracket_satisfies_jacobi((w, x, y, z) in triple()) {
        let j = JacobiAlgebra::new(base(w));
        let s = j.bracket(&j.bracket(&x, &y), &z)
            .add(&j.bracket(&j.bracket(&y, &z), &x))
            .add(&j.bracket(&j.bracket(&z, &x), &y));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn cocycle_identities((w, x, y, z) in triple(), t in -2i64..=2) {
        let c = CocycleContext::new(JacobiAlgebra::new(base(w))).unwrap();
        prop_assert_eq!(c.psi(&x, &y), c.psi(&y, &x).neg());
        let cyc = c.psi(&c.j.bracket(&x, &y), &z)
            .add(&c.psi(&c.j.bracket(&y, &z), &x))
            .add(&c.psi(&c.j.bracket(&z, &x), &y));
        prop_assert!(cyc.is_zero());
        let t = int(t);
        prop_assert_eq!(c.psi(&x.add(&y.scale(&t)), &z), c.psi(&x, &z).add(&c.psi(&y, &z).scale(&t)));
    }

    #[test]
    fn cocycle_matches_window_definition((w, x, y, _z) in triple()) {
        let c = CocycleContext::new(JacobiAlgebra::new(base(w))).unwrap();
        prop_assert_eq!(c.psi(&x, &y), window::psi_by_definition(&c, &x, &y, 14));
    }

    #[test]
    fn cocycle_vanishes_on_main_diagonal((w, x, y) in (0usize..3).prop_flat_map(|w| {
        let d = base(w).dim();
        (Just(w), diagonal_only(d), diagonal_only(d))
    })) {
        let c = CocycleContext::new(JacobiAlgebra::new(base(w))).unwrap();
        prop_assert!(c.psi(&x, &y).is_zero());
    }

    #[test]
    fn block_map_is_a_bijective_lie_map((w, x, y, _z) in triple(), n in 2usize..=3, t in -2i64..=2) {
        let j = JacobiAlgebra::new(base(w));
        let (bx, by) = (j.phi_block_map(n, &x), j.phi_block_map(n, &y));
        prop_assert_eq!(j.phi_block_unmap(&bx), x.clone());
        prop_assert_eq!(j.phi_block_map(n, &j.bracket(&x, &y)), j.block_bracket(&bx, &by));
        let t = int(t);
        let sum: Vec<Vec<JElement>> = bx.iter().zip(&by)
            .map(|(u, v)| u.iter().zip(v).map(|(a, b)| a.add(&b.scale(&t))).collect())
            .collect();
        prop_assert_eq!(j.phi_block_map(n, &x.add(&y.scale(&t))), sum);
        for a in 1..=n as i64 {
            for b in 1..=n as i64 {
                for r in -3..=3 {
                    for s in -3..=3 {
                        prop_assert_eq!(
                            bx[a as usize - 1][b as usize - 1].entry(r, s),
                            x.entry(a + r * n as i64, b + s * n as i64)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip((w, x, _y, _z) in triple()) {
        let d = base(w).dim();
        prop_assert_eq!(JElement::parse_text(d, &x.to_text()).unwrap(), x);
    }

    #[test]
    fn degree_zero_preimages(m in finite_sequence()) {
        prop_assert_eq!(h0_preimage(&m).unwrap().boundary().coefficient(), m);
    }

    #[test]
    fn tau_reduction_is_a_boundary(m in finite_sequence(), c in coeffs(2), p in -5i64..=5) {
        let m = m.add(&Sequence::constant(c));
        let lhs = tau_witness(&m, p).boundary();
        let rhs = GroupChain::single(m.clone(), vec![p]).sub(&GroupChain::single(reduce_to_tau(&m, p), vec![1]));
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn rank_and_bases_is_deterministic(m in sparse_matrix(5, 6)) {
        let (a, b) = (rank_and_bases(&m).unwrap(), rank_and_bases(&m).unwrap());
        prop_assert_eq!(a.rank, b.rank);
        prop_assert_eq!(&a.kernel, &b.kernel);
        prop_assert_eq!(&a.image, &b.image);
    }

    #[test]
    fn composable_maps_have_image_in_kernel(d2 in sparse_matrix(5, 4), mix in sparse_matrix(3, 5)) {
        // d1 = mix · (rows annihilating the image of d2), so d1 ∘ d2 = 0
        let left = kernel(&d2.transpose()).unwrap();
        let rows: Vec<SparseVec> = (0..mix.rows())
            .map(|i| {
                left.basis().iter().enumerate().fold(SparseVec::new(), |s, (k, v)| s.add(&v.scale(&mix.get(i, k % mix.cols()))))
            })
            .collect();
        let d1 = SparseMatrix::from_columns(5, rows).unwrap().transpose();
        prop_assert!(d1.mul(&d2).unwrap().is_zero());
        let im: Subspace = image(&d2).unwrap();
        prop_assert!(kernel(&d1).unwrap().contains_subspace(&im));
    }
}
