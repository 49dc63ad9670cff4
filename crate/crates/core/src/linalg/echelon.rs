//! Exact elimination: ranks, kernels, images, quotients and linear solves.
//!
//! Forward elimination runs fraction-free on primitive integer rows; the
//! final basis is normalized to reduced row echelon form, which is unique,
//! so every result is independent of input ordering and pivot choices.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// Default cap on projected elimination work, in entry operations.
pub const DEFAULT_SIZE_GUARD: u64 = 200_000_000;

static SIZE_GUARD: AtomicU64 = AtomicU64::new(DEFAULT_SIZE_GUARD);

thread_local! {
    static LOCAL_GUARD: std::cell::Cell<Option<u64>> = const { std::cell::Cell::new(None) };
}

/// The cap in force on this thread: a scoped override if one is active,
/// else the process-wide value.
pub fn size_guard() -> u64 {
    LOCAL_GUARD
        .with(|g| g.get())
        .unwrap_or_else(|| SIZE_GUARD.load(Ordering::Relaxed))
}

/// Runs `f` with a different cap on the current thread only.
pub fn with_size_guard<T>(cap: u64, f: impl FnOnce() -> T) -> T {
    let old = LOCAL_GUARD.with(|g| g.replace(Some(cap)));
    let out = f();
    LOCAL_GUARD.with(|g| g.set(old));
    out
}

pub fn set_size_guard(cap: u64) {
    SIZE_GUARD.store(cap, Ordering::Relaxed);
}

/// Projected elimination work for a family of row vectors:
/// `min(Σ row_nnz², Σ col_nnz²)`. For a dense `r × c` matrix this is exactly
/// `r·c·min(r, c)`.
pub fn projected_workload(rows: &[SparseVec]) -> u128 {
    let mut by_row: u128 = 0;
    let mut col_counts: HashMap<usize, u128> = HashMap::new();
    for r in rows {
        let n = r.nnz() as u128;
        by_row += n * n;
        for (j, _) in r.iter() {
            *col_counts.entry(j).or_insert(0) += 1;
        }
    }
    let by_col: u128 = col_counts.values().map(|c| c * c).sum();
    by_row.min(by_col)
}

pub fn check_guard(context: &str, workload: u128) -> Result<()> {
    let cap = size_guard();
    if workload > cap as u128 {
        return Err(Error::SizeGuard {
            context: context.to_string(),
            workload,
            cap,
        });
    }
    Ok(())
}

type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators and content; the leading coefficient ends positive.
fn primitive_int_row(v: &SparseVec) -> IntRow {
    let mut l = BigInt::one();
    for (_, x) in v.iter() {
        l = l.lcm(x.denom());
    }
    let mut row: IntRow = v
        .iter()
        .map(|(i, x)| (i, x.numer() * (&l / x.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut IntRow) {
    let Some(first) = row.first() else { return };
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    let negate = first.1.sign() == Sign::Minus;
    if !g.is_one() || negate {
        let g = if negate { -g } else { g };
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// `a·v − x·p`, merged and zero-free.
fn combine(v: &IntRow, a: &BigInt, p: &IntRow, x: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j == p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if i == v.len() || p[j].0 < v[i].0 {
            out.push((p[j].0, -(x * &p[j].1)));
            j += 1;
        } else {
            let s = a * &v[i].1 - x * &p[j].1;
            if !s.is_zero() {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon form over primitive integer rows, keyed by the
/// leading column of each pivot row.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    dim: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl EchelonBuilder {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the current pivots; returns true if it was
    /// independent and has been added.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.max_index().map_or(true, |m| m < self.dim));
        let mut row = primitive_int_row(v);
        while let Some((lead, x)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    let a = &p[0].1;
                    let g = a.gcd(&x);
                    row = combine(&row, &(a / &g), p, &(&x / &g));
                    make_primitive(&mut row);
                }
            }
        }
        false
    }

    /// Inserts vectors with the sparsest first (Markowitz-style ordering);
    /// ties keep input order.
    pub fn extend_sparse_first(&mut self, vectors: &[SparseVec]) {
        let mut order: Vec<usize> = (0..vectors.len()).collect();
        order.sort_by_key(|&i| (vectors[i].nnz(), i));
        for i in order {
            self.insert(&vectors[i]);
        }
    }

    /// Back-substitutes into reduced row echelon form.
    pub fn into_subspace(self) -> Subspace {
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (lead, row) in self.pivots.iter().rev() {
            let lead_coeff = BigRational::from_integer(row[0].1.clone());
            let inv = lead_coeff.recip();
            let mut r = SparseVec::from_sorted(
                row.iter()
                    .map(|(i, x)| (*i, BigRational::from_integer(x.clone()) * &inv))
                    .collect(),
            );
            let later: Vec<(usize, Scalar)> = r
                .iter()
                .filter(|(c, _)| *c > *lead && reduced.contains_key(c))
                .map(|(c, x)| (c, x.clone()))
                .collect();
            for (c, x) in later {
                r = r.add_scaled(&reduced[&c], &-x);
            }
            reduced.insert(*lead, r);
        }
        Subspace::from_rref(self.dim, reduced.into_values().collect())
    }
}

/// A subspace of `Q^ambient_dim`, held by its unique reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_pos: HashMap<usize, usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    fn from_rref(ambient_dim: usize, basis: Vec<SparseVec>) -> Self {
        let pivots: Vec<usize> = basis.iter().map(|v| v.leading().unwrap().0).collect();
        let pivot_pos = pivots.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        Self {
            ambient_dim,
            basis,
            pivots,
            pivot_pos,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_rref(ambient_dim, Vec::new())
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_rref(ambient_dim, (0..ambient_dim).map(SparseVec::unit).collect())
    }

    /// The span of arbitrary vectors, canonicalized.
    pub fn span(ambient_dim: usize, vectors: &[SparseVec]) -> Result<Self> {
        check_guard("span", projected_workload(vectors))?;
        let mut b = EchelonBuilder::new(ambient_dim);
        b.extend_sparse_first(vectors);
        Ok(b.into_subspace())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_pos.contains_key(&col)
    }

    /// The residue of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (c, x) in v.iter() {
            if let Some(&k) = self.pivot_pos.get(&c) {
                out = out.add_scaled(&self.basis[k], &-x);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates with respect to the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v.get(p)).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }
}

/// Rank, kernel and image of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBases {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

pub fn rank(m: &SparseMatrix) -> Result<usize> {
    check_guard("rank", projected_workload(m.columns()))?;
    let mut b = EchelonBuilder::new(m.rows());
    b.extend_sparse_first(m.columns());
    Ok(b.rank())
}

/// The column space.
pub fn image(m: &SparseMatrix) -> Result<Subspace> {
    Subspace::span(m.rows(), m.columns())
}

pub fn kernel(m: &SparseMatrix) -> Result<Subspace> {
    let rows = m.row_vectors();
    let row_space = Subspace::span(m.cols(), &rows)?;
    let n = m.cols();
    let mut ker: BTreeMap<usize, Vec<(usize, Scalar)>> = (0..n)
        .filter(|c| !row_space.is_pivot(*c))
        .map(|f| (f, vec![(f, Scalar::one())]))
        .collect();
    for (r, &p) in row_space.basis().iter().zip(row_space.pivots()) {
        for (f, x) in r.iter() {
            if f != p {
                if let Some(v) = ker.get_mut(&f) {
                    v.push((p, -x));
                }
            }
        }
    }
    let vectors: Vec<SparseVec> = ker.into_values().map(SparseVec::from_pairs).collect();
    Subspace::span(n, &vectors)
}

pub fn rank_and_bases(m: &SparseMatrix) -> Result<RankBases> {
    let image = image(m)?;
    let kernel = kernel(m)?;
    debug_assert_eq!(image.dim() + kernel.dim(), m.cols());
    Ok(RankBases {
        rank: image.dim(),
        kernel,
        image,
    })
}

/// Solves `m·x = b`. Free variables are set to zero, so the answer is
/// determined by the reduced echelon form of the augmented system.
pub fn solve_linear(m: &SparseMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let mut rows = m.row_vectors();
    for (r, x) in rows.iter_mut().zip(b) {
        if !x.is_zero() {
            *r = r.add(&SparseVec::single(n, x.clone()));
        }
    }
    let rref = Subspace::span(n + 1, &rows)?;
    let mut x = vec![Scalar::zero(); n];
    for (row, &p) in rref.basis().iter().zip(rref.pivots()) {
        if p == n {
            return Ok(None);
        }
        x[p] = row.get(n);
    }
    Ok(Some(x))
}

/// `dim(big) − dim(small)` after checking `small ⊆ big`.
pub fn quotient_dim(big: &Subspace, small: &Subspace) -> Result<usize> {
    if big.ambient_dim() != small.ambient_dim() {
        return Err(Error::Dimension("subspaces live in different spaces".into()));
    }
    for (index, v) in small.basis().iter().enumerate() {
        if !big.contains(v) {
            return Err(Error::NotContained { index });
        }
    }
    Ok(big.dim() - small.dim())
}

/// `true` if every entry of the vector is an integer; used by tests of the
/// fraction-free path.
pub fn is_integral(v: &SparseVec) -> bool {
    v.iter().all(|(_, x)| x.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;
    use num_traits::Signed;

    fn dense(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|x| int(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn empty_matrix() {
        let m = SparseMatrix::zero(0, 0);
        let rb = rank_and_bases(&m).unwrap();
        assert_eq!((rb.rank, rb.kernel.dim(), rb.image.dim()), (0, 0, 0));
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let rb = rank_and_bases(&SparseMatrix::identity(2)).unwrap();
        assert_eq!((rb.rank, rb.kernel.dim()), (2, 0));
    }

    #[test]
    fn rank_one_example() {
        // Hand row reduction: [[1,2],[2,4]] -> [[1,2],[0,0]].
        let m = SparseMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        let rb = rank_and_bases(&m).unwrap();
        assert_eq!(rb.rank, 1);
        assert_eq!(rb.kernel.dim(), 1);
        assert!(rb.kernel.contains(&dense(&[-2, 1])));
        assert!(rb.image.contains(&dense(&[1, 2])));
        assert_eq!(rb.image.basis()[0], dense(&[1, 2]));
    }

    #[test]
    fn solve_examples() {
        let x = solve_linear(&SparseMatrix::identity(3), &[int(1), int(0), int(2)]).unwrap();
        assert_eq!(x, Some(vec![int(1), int(0), int(2)]));
        let m = SparseMatrix::from_int_rows(&[vec![1, 1]]);
        assert_eq!(solve_linear(&m, &[int(5)]).unwrap(), Some(vec![int(5), int(0)]));
        let m = SparseMatrix::from_int_rows(&[vec![1], vec![1]]);
        assert_eq!(solve_linear(&m, &[int(1), int(2)]).unwrap(), None);
    }

    #[test]
    fn quotient_examples() {
        let big = Subspace::full(2);
        assert_eq!(quotient_dim(&big, &big).unwrap(), 0);
        let small = Subspace::span(2, &[dense(&[1, 0])]).unwrap();
        assert_eq!(quotient_dim(&big, &small).unwrap(), 1);
        assert_eq!(
            quotient_dim(&small, &big),
            Err(Error::NotContained { index: 1 })
        );
    }

    #[test]
    fn guard_rejects_large_dense_work() {
        let m = SparseMatrix::from_int_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        let r = with_size_guard(10, || rank(&m));
        assert!(matches!(r, Err(Error::SizeGuard { workload: 27, .. })));
    }

    #[test]
    fn fraction_free_rows_stay_integral() {
        let mut b = EchelonBuilder::new(3);
        b.insert(&dense(&[2, 4, 6]));
        b.insert(&dense(&[3, 5, 7]));
        assert!(b.pivots.values().all(|r| r.iter().all(|(_, x)| x.abs() < BigInt::from(10))));
        let s = b.into_subspace();
        assert_eq!(s.basis()[0], dense(&[1, 0, -1]));
        assert_eq!(s.basis()[1], dense(&[0, 1, 2]));
        assert!(s.basis().iter().all(is_integral));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn sparse_matrix() -> impl Strategy<Value = SparseMatrix> {
            (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
                proptest::collection::vec(
                    prop_oneof![3 => Just(0i64), 2 => -3i64..=3],
                    r * c,
                )
                .prop_map(move |v| {
                    let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                    SparseMatrix::from_int_rows(&rows)
                })
            })
        }

        proptest! {
            #[test]
            fn rank_matches_transpose(m in sparse_matrix()) {
                prop_assert_eq!(rank(&m).unwrap(), rank(&m.transpose()).unwrap());
            }

            #[test]
            fn kernel_is_killed_and_dimensions_add(m in sparse_matrix()) {
                let rb = rank_and_bases(&m).unwrap();
                prop_assert_eq!(rb.rank + rb.kernel.dim(), m.cols());
                for v in rb.kernel.basis() {
                    prop_assert!(m.apply(v).is_zero());
                }
                for w in m.columns() {
                    prop_assert!(rb.image.contains(w));
                }
            }

            #[test]
            fn result_ignores_column_order(m in sparse_matrix()) {
                let mut cols = m.columns().to_vec();
                cols.reverse();
                let r = SparseMatrix::from_columns(m.rows(), cols).unwrap();
                prop_assert_eq!(image(&m).unwrap(), image(&r).unwrap());
            }

            #[test]
            fn solutions_solve(m in sparse_matrix(), seed in proptest::collection::vec(-2i64..=2, 6)) {
                let x: Vec<Scalar> = (0..m.cols()).map(|i| int(seed[i % seed.len()])).collect();
                let b = m.apply(&SparseVec::from_dense(&x)).to_dense(m.rows());
                let y = solve_linear(&m, &b).unwrap().expect("consistent by construction");
                prop_assert_eq!(m.apply(&SparseVec::from_dense(&y)).to_dense(m.rows()), b);
            }
        }
    }
}
