//! Seeded random banded elements for property checks.

use rand::Rng;

use crate::linalg::{int, Scalar, SparseVec};

use super::element::{JElement, JacobiAlgebra};

fn coefficient<R: Rng>(rng: &mut R, dim: usize) -> SparseVec {
    let v: Vec<Scalar> = (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect();
    SparseVec::from_dense(&v)
}

/// A few periodic diagonals (period 1 or 2) and a few corner entries near
/// the origin, all within `bandwidth` of the main diagonal, with
/// coefficients in `{−2, …, 2}`.
pub fn random_banded<R: Rng>(j: &JacobiAlgebra, rng: &mut R, bandwidth: i64) -> JElement {
    let d = j.dim();
    let period = rng.gen_range(1..=2usize);
    let diags = rng.gen_range(1..=3);
    let mut x = JElement::periodic(
        d,
        period,
        (0..diags).map(|_| {
            let p = rng.gen_range(-bandwidth..=bandwidth);
            ((p, rng.gen_range(0..period)), coefficient(rng, d))
        }),
    );
    for _ in 0..rng.gen_range(0..=2) {
        let i = rng.gen_range(-3..=3);
        let jj = i + rng.gen_range(-bandwidth..=bandwidth);
        x = x.add(&JElement::unit_entry(d, i, jj, coefficient(rng, d)));
    }
    x
}
