//! Dense reference computations that share no code with the library beyond
//! reading structure constants. Everything is plain `Vec<Vec<BigRational>>`
//! with textbook Gaussian elimination.

#![allow(dead_code)]

use homalg::algebra::{LieAlgebraData, StructureAlgebra};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Dense = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Dense = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| (0..d).map(move |x| [t.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

fn index(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * d + x)
}

/// `e_i e_j` as a dense vector.
fn product(r: &StructureAlgebra, i: usize, j: usize) -> Vec<Q> {
    let d = r.dim();
    let v = r.basis_product(i, j);
    (0..d).map(|k| v.get(k)).collect()
}

/// Columns of `b: R^{⊗n+1} → R^{⊗n}` as rows of the returned matrix.
pub fn hochschild_b(r: &StructureAlgebra, n: usize) -> Dense {
    let d = r.dim();
    let target = d.pow(n as u32);
    tuples(d, n + 1)
        .iter()
        .map(|t| {
            let mut out = vec![Q::zero(); target];
            for i in 0..n {
                let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
                let prod = product(r, t[i], t[i + 1]);
                for (x, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let mut s = t[..i].to_vec();
                    s.push(x);
                    s.extend_from_slice(&t[i + 2..]);
                    out[index(&s, d)] += &sign * c;
                }
            }
            let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
            let prod = product(r, t[n], t[0]);
            for (x, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mut s = vec![x];
                s.extend_from_slice(&t[1..n]);
                out[index(&s, d)] += &sign * c;
            }
            out
        })
        .collect()
}

/// `dim HH_n(R)` for `n < cap`.
pub fn hochschild_betti(r: &StructureAlgebra, cap: usize) -> Vec<usize> {
    let d = r.dim();
    let ranks: Vec<usize> = (0..=cap).map(|n| if n == 0 { 0 } else { rank(&hochschild_b(r, n)) }).collect();
    (0..cap).map(|n| d.pow(n as u32 + 1) - ranks[n] - ranks[n + 1]).collect()
}

/// Rows `v − t·v` for `t(r_0⊗…⊗r_n) = (−1)^n r_n⊗r_0⊗…⊗r_{n−1}`.
fn one_minus_t(d: usize, n: usize) -> Dense {
    let size = d.pow(n as u32 + 1);
    tuples(d, n + 1)
        .iter()
        .map(|t| {
            let mut out = vec![Q::zero(); size];
            out[index(t, d)] += Q::one();
            let mut s = t.clone();
            s.rotate_right(1);
            let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
            out[index(&s, d)] -= sign;
            out
        })
        .collect()
}

/// `dim HC_n(R)` for `n < cap` through Connes' complex
/// `C^λ_n = R^{⊗n+1} / (1 − t)`, valid in characteristic 0.
pub fn cyclic_betti(r: &StructureAlgebra, cap: usize) -> Vec<usize> {
    let d = r.dim();
    let ideal: Vec<Dense> = (0..=cap).map(|n| one_minus_t(d, n)).collect();
    let ideal_rank: Vec<usize> = ideal.iter().map(|m| rank(m)).collect();
    let quotient_dim: Vec<usize> = (0..=cap).map(|n| d.pow(n as u32 + 1) - ideal_rank[n]).collect();
    // rank of b̄_n = dim(im b_n + I_{n−1}) − dim I_{n−1}
    let bar_rank: Vec<usize> = (0..=cap)
        .map(|n| {
            if n == 0 {
                return 0;
            }
            let mut rows = hochschild_b(r, n);
            rows.extend(ideal[n - 1].iter().cloned());
            rank(&rows) - ideal_rank[n - 1]
        })
        .collect();
    (0..cap).map(|n| quotient_dim[n] - bar_rank[n] - bar_rank[n + 1]).collect()
}

/// Betti numbers of the Chevalley–Eilenberg complex in all degrees, with
/// wedges encoded as bit masks.
pub fn lie_betti(g: &LieAlgebraData) -> Vec<usize> {
    let n = g.dim();
    let masks_of = |p: usize| -> Vec<u32> { (0u32..1 << n).filter(|m| m.count_ones() as usize == p).collect() };
    let bracket = |i: usize, j: usize| -> Vec<Q> {
        let v = g.basis_bracket(i, j);
        (0..n).map(|k| v.get(k)).collect()
    };
    let boundary_rank = |p: usize| -> usize {
        if p == 0 || p > n {
            return 0;
        }
        let target = masks_of(p - 1);
        let pos = |m: u32| target.iter().position(|&t| t == m).unwrap();
        let rows: Dense = masks_of(p)
            .iter()
            .map(|&m| {
                let idx: Vec<usize> = (0..n).filter(|b| m >> b & 1 == 1).collect();
                let mut out = vec![Q::zero(); target.len()];
                for a in 0..p {
                    for b in (a + 1)..p {
                        let rest: u32 = m & !(1 << idx[a]) & !(1 << idx[b]);
                        let sign = if (a + b) % 2 == 0 { Q::one() } else { -Q::one() };
                        for (x, c) in bracket(idx[a], idx[b]).iter().enumerate() {
                            if c.is_zero() || rest >> x & 1 == 1 {
                                continue;
                            }
                            // move x into sorted position among rest
                            let before = (rest & ((1u32 << x) - 1)).count_ones();
                            let s = if before % 2 == 0 { sign.clone() } else { -sign.clone() };
                            out[pos(rest | 1 << x)] += s * c;
                        }
                    }
                }
                out
            })
            .collect();
        rank(&rows)
    };
    let ranks: Vec<usize> = (0..=n + 1).map(boundary_rank).collect();
    (0..=n)
        .map(|p| masks_of(p).len() - ranks[p] - ranks[p + 1])
        .collect()
}

/// Dense `N × N` matrices over `k` on indices `−w..w`.
pub mod window {
    use super::*;

    pub fn shift(w: i64, p: i64) -> Dense {
        let n = (2 * w) as usize;
        let mut m = vec![vec![Q::zero(); n]; n];
        for i in 0..n as i64 {
            let j = i + p;
            if (0..n as i64).contains(&j) {
                m[i as usize][j as usize] = Q::one();
            }
        }
        m
    }

    pub fn mul(a: &Dense, b: &Dense) -> Dense {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(Q::zero(), |s, k| s + &a[i][k] * &b[k][j])).collect())
            .collect()
    }

    pub fn sub(a: &Dense, b: &Dense) -> Dense {
        a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
    }

    /// Keeps rows and columns with index `≥ 0`.
    pub fn upper(a: &Dense, w: i64) -> Dense {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| if i as i64 >= w && j as i64 >= w { a[i][j].clone() } else { Q::zero() }).collect())
            .collect()
    }

    /// `Tr([P x P, P y P] − P[x, y]P)`, summed over the rows at distance
    /// at least `margin` from the window edge.
    pub fn psi(x: &Dense, y: &Dense, w: i64, margin: i64) -> Q {
        let (px, py) = (upper(x, w), upper(y, w));
        let lhs = sub(&mul(&px, &py), &mul(&py, &px));
        let rhs = upper(&sub(&mul(x, y), &mul(y, x)), w);
        let d = sub(&lhs, &rhs);
        (margin..(2 * w - margin)).fold(Q::zero(), |s, i| s + &d[i as usize][i as usize])
    }
}
