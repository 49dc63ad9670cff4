//! The Chevalley–Eilenberg complex `Λ^• g` with trivial coefficients.

use std::collections::HashMap;

use crate::algebra::LieAlgebraData;
use crate::error::Result;
use crate::linalg::{Accumulator, Scalar, SparseMatrix};

use super::chain::ChainComplex;
use super::hochschild::guard_dims;

/// Increasing `p`-subsets of `0..n` in lexicographic order.
pub fn wedge_basis(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            go(n, p, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, p, 0, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

/// `∂(x_1∧…∧x_p) = Σ_{i<j} (−1)^{i+j} [x_i, x_j] ∧ x_1 … x̂_i … x̂_j … x_p`
/// (positions counted from 1), for `p ≥ 1`.
pub fn ce_boundary(g: &LieAlgebraData, p: usize) -> Result<SparseMatrix> {
    let n = g.dim();
    let src = wedge_basis(n, p);
    let tgt = if p >= 1 { wedge_basis(n, p - 1) } else { Vec::new() };
    let index: HashMap<&[usize], usize> =
        tgt.iter().enumerate().map(|(k, w)| (w.as_slice(), k)).collect();
    let cols = src
        .iter()
        .map(|w| {
            let mut acc = Accumulator::new();
            for i in 0..w.len() {
                for j in (i + 1)..w.len() {
                    // 0-based positions give the same parity as 1-based ones.
                    let sign_ij = (i + j) % 2 == 1;
                    let rest: Vec<usize> = w
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, x)| *x)
                        .collect();
                    for (k, c) in g.basis_bracket(w[i], w[j]).iter() {
                        if rest.contains(&k) {
                            continue;
                        }
                        let before = rest.iter().filter(|x| **x < k).count();
                        let mut merged = rest.clone();
                        merged.insert(before, k);
                        let negative = sign_ij ^ (before % 2 == 1);
                        let c: Scalar = if negative { -c.clone() } else { c.clone() };
                        acc.add(index[merged.as_slice()], c);
                    }
                }
            }
            acc.into_vec()
        })
        .collect();
    SparseMatrix::from_columns(tgt.len(), cols)
}

pub fn wedge_label(g: &LieAlgebraData, w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|i| g.labels()[*i].as_str())
        .collect::<Vec<_>>()
        .join("∧")
}

/// `Λ^p g` for `0 ≤ p ≤ min(cap, dim g)`; when the cap reaches `dim g` the
/// complex is complete.
pub fn chevalley_eilenberg_complex(g: &LieAlgebraData, cap: usize) -> Result<ChainComplex> {
    let n = g.dim();
    let top = cap.min(n);
    let dims = guard_dims("Chevalley–Eilenberg complex", (0..=top).map(|p| binomial(n, p)))?;
    let boundaries = (1..=top).map(|p| ce_boundary(g, p)).collect::<Result<Vec<_>>>()?;
    let basis = (0..=top)
        .map(|p| wedge_basis(n, p).iter().map(|w| wedge_label(g, w)).collect())
        .collect();
    ChainComplex::new(dims, boundaries, basis, top == n)
}

/// Graded dimensions of the exterior algebra on generators of the given
/// odd degrees, in degrees `0..=max_degree`.
pub fn exterior_graded_dims(generator_degrees: &[usize], max_degree: usize) -> Vec<usize> {
    let mut dims = vec![0usize; max_degree + 1];
    dims[0] = 1;
    for &d in generator_degrees {
        for t in (d..=max_degree).rev() {
            dims[t] += dims[t - d];
        }
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{commutator_lie, gl, StructureAlgebra};
    use crate::complex::homology::reliable_betti;

    #[test]
    fn abelian_and_gl1() {
        let g = commutator_lie(&StructureAlgebra::dual_numbers());
        let c = chevalley_eilenberg_complex(&g, 2).unwrap();
        assert_eq!(reliable_betti(&c).unwrap(), vec![1, 2, 1]);
        let c = chevalley_eilenberg_complex(&gl(1), 1).unwrap();
        assert_eq!(reliable_betti(&c).unwrap(), vec![1, 1]);
    }

    #[test]
    fn gl2_matches_exterior_algebra() {
        let c = chevalley_eilenberg_complex(&gl(2), 4).unwrap();
        assert_eq!(reliable_betti(&c).unwrap(), vec![1, 1, 0, 1, 1]);
        assert_eq!(exterior_graded_dims(&[1, 3], 4), vec![1, 1, 0, 1, 1]);
    }

    #[test]
    fn wedge_enumeration() {
        assert_eq!(wedge_basis(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(wedge_basis(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(binomial(9, 4), Some(126));
    }
}
