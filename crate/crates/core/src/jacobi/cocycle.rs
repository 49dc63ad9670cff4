//! Corner compressions, the trace into `R^ab`, and the 2-cocycle
//! `Ψ(X, Y) = Tr((I₊YI₋)(I₋XI₊) − (I₊XI₋)(I₋YI₊))`.

use std::collections::BTreeMap;

use crate::algebra::{abelianization, Quotient};
use crate::error::Result;
use crate::linalg::SparseVec;

use super::element::{FiniteMatrix, JElement, JacobiAlgebra};

/// `I₊ = Σ_{i≥0} e_{i,i}`, `I₋ = Σ_{i<0} e_{i,i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    /// `I₊ x I₋`: rows `≥ 0`, columns `< 0`.
    PlusMinus,
    /// `I₋ x I₊`: rows `< 0`, columns `≥ 0`.
    MinusPlus,
}

impl Corner {
    fn contains(self, i: i64, j: i64) -> bool {
        match self {
            Corner::PlusMinus => i >= 0 && j < 0,
            Corner::MinusPlus => i < 0 && j >= 0,
        }
    }
}

/// The corner `I_σ x I_τ` with `σ ≠ τ` as a finite matrix. A diagonal of
/// offset `p` meets it in at most `|p|` entries.
pub fn corner_extract(x: &JElement, side: Corner) -> FiniteMatrix {
    let n = x.period() as i64;
    let mut out: FiniteMatrix = BTreeMap::new();
    for ((p, a), r) in x.laurent() {
        let rows = match side {
            Corner::PlusMinus if *p < 0 => 0..-p,
            Corner::MinusPlus if *p > 0 => -p..0,
            _ => 0..0,
        };
        for t in rows.filter(|t| t.rem_euclid(n) as usize == *a) {
            out.insert((t, t + p), r.clone());
        }
    }
    for ((i, j), r) in x.corner() {
        if side.contains(*i, *j) {
            let e = out.entry((*i, *j)).or_default();
            *e = e.add(r);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn finite_mul(j: &JacobiAlgebra, x: &FiniteMatrix, y: &FiniteMatrix) -> FiniteMatrix {
    let mut out: FiniteMatrix = BTreeMap::new();
    for ((i, k), r) in x {
        for ((_, l), s) in y.range((*k, i64::MIN)..=(*k, i64::MAX)) {
            let e = out.entry((*i, *l)).or_default();
            *e = e.add(&j.base().mul(r, s));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `Σ_i m_{i,i} ∈ R`.
pub fn trace(x: &FiniteMatrix) -> SparseVec {
    x.iter()
        .filter(|((i, j), _)| i == j)
        .fold(SparseVec::new(), |s, (_, v)| s.add(v))
}

/// `J(R)` together with the abelianization `π^ab: R → R^ab`.
#[derive(Clone, Debug)]
pub struct CocycleContext {
    pub j: JacobiAlgebra,
    pub ab: Quotient,
}

impl CocycleContext {
    pub fn new(j: JacobiAlgebra) -> Result<Self> {
        let ab = abelianization(j.base())?;
        Ok(Self { j, ab })
    }

    /// `Tr = π^ab ∘ tr`, in coordinates of `R^ab`.
    pub fn trace_ab(&self, x: &FiniteMatrix) -> SparseVec {
        self.ab.project(&trace(x))
    }

    pub fn psi(&self, x: &JElement, y: &JElement) -> SparseVec {
        let pm = |z| corner_extract(z, Corner::PlusMinus);
        let mp = |z| corner_extract(z, Corner::MinusPlus);
        let first = trace(&finite_mul(&self.j, &pm(y), &mp(x)));
        let second = trace(&finite_mul(&self.j, &pm(x), &mp(y)));
        self.ab.project(&first.sub(&second))
    }

    /// `[(x, c₁), (y, c₂)]′ = ([x, y], Ψ(x, y))`.
    pub fn extension_bracket(
        &self,
        x: &(JElement, SparseVec),
        y: &(JElement, SparseVec),
    ) -> (JElement, SparseVec) {
        (self.j.bracket(&x.0, &y.0), self.psi(&x.0, &y.0))
    }
}

/// Dense arithmetic on the index window `−w..=w`.
pub mod window {
    use super::*;

    pub type Dense = Vec<Vec<SparseVec>>;

    pub fn dense(x: &JElement, w: i64) -> Dense {
        x.window(-w, w)
    }

    pub fn mul(j: &JacobiAlgebra, x: &Dense, y: &Dense) -> Dense {
        let n = x.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|l| {
                        (0..n).fold(SparseVec::new(), |s, k| {
                            if x[i][k].is_zero() || y[k][l].is_zero() {
                                s
                            } else {
                                s.add(&j.base().mul(&x[i][k], &y[k][l]))
                            }
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn sub(x: &Dense, y: &Dense) -> Dense {
        x.iter()
            .zip(y)
            .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u.sub(v)).collect())
            .collect()
    }

    /// Compares `x` with `y` on the entries at least `margin` away from the
    /// window edge; `w` is the window radius both were built with.
    pub fn agree_inside(x: &Dense, y: &Dense, w: i64, margin: i64) -> bool {
        let inner = w - margin;
        (-inner..=inner).all(|i| {
            (-inner..=inner).all(|l| x[(i + w) as usize][(l + w) as usize] == y[(i + w) as usize][(l + w) as usize])
        })
    }

    /// `Tr([Φ(X), Φ(Y)] − Φ([X, Y]))` with `Φ(X) = I₊XI₊`, evaluated on the
    /// window. The difference only involves indices near 0, so any radius
    /// above the bandwidths gives the exact value.
    pub fn psi_by_definition(c: &CocycleContext, x: &JElement, y: &JElement, w: i64) -> SparseVec {
        let (dx, dy) = (dense(x, w), dense(y, w));
        let n = dx.len();
        let compress = |m: &Dense| -> Dense {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|l| {
                            if i as i64 >= w && l as i64 >= w {
                                m[i][l].clone()
                            } else {
                                SparseVec::new()
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let (px, py) = (compress(&dx), compress(&dy));
        let lhs = sub(&mul(&c.j, &px, &py), &mul(&c.j, &py, &px));
        let rhs = compress(&sub(&mul(&c.j, &dx, &dy), &mul(&c.j, &dy, &dx)));
        let d = sub(&lhs, &rhs);
        let tr = (0..n).fold(SparseVec::new(), |s, i| s.add(&d[i][i]));
        c.ab.project(&tr)
    }
}
