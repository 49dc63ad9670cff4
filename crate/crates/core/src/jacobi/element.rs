//! Finite descriptions of banded ℤ×ℤ matrices over `R`.
//!
//! An element is a periodic part plus a finite correction. The periodic part
//! maps `(offset, residue)` to `r ∈ R` and stands for
//! `Σ_{i ≡ residue mod period} r·e_{i,i+offset}`; the corner part is a
//! finitely supported matrix. A periodic pattern with finite support is zero,
//! so once the period is minimal the description is unique.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{fmt_fraction, parse_scalar, Scalar, SparseVec};

/// A finitely supported ℤ×ℤ matrix over `R`.
pub type FiniteMatrix = BTreeMap<(i64, i64), SparseVec>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JElement {
    dim: usize,
    period: usize,
    laurent: BTreeMap<(i64, usize), SparseVec>,
    corner: FiniteMatrix,
}

fn insert_add<K: Ord>(map: &mut BTreeMap<K, SparseVec>, k: K, v: &SparseVec) {
    if v.is_zero() {
        return;
    }
    let e = map.entry(k).or_default();
    *e = e.add(v);
}

fn drop_zeros<K: Ord + Clone>(map: &mut BTreeMap<K, SparseVec>) {
    map.retain(|_, v| !v.is_zero());
}

impl JElement {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            period: 1,
            laurent: BTreeMap::new(),
            corner: BTreeMap::new(),
        }
    }

    /// `Σ_i r·e_{i,i+offset}`.
    pub fn diagonal(dim: usize, offset: i64, r: SparseVec) -> Self {
        Self::periodic(dim, 1, [((offset, 0), r)])
    }

    pub fn periodic(
        dim: usize,
        period: usize,
        entries: impl IntoIterator<Item = ((i64, usize), SparseVec)>,
    ) -> Self {
        assert!(period >= 1);
        let mut laurent = BTreeMap::new();
        for ((p, a), r) in entries {
            insert_add(&mut laurent, (p, a % period), &r);
        }
        drop_zeros(&mut laurent);
        Self {
            dim,
            period,
            laurent,
            corner: BTreeMap::new(),
        }
        .normalized()
    }

    pub fn finite(dim: usize, entries: impl IntoIterator<Item = ((i64, i64), SparseVec)>) -> Self {
        let mut corner = BTreeMap::new();
        for (k, r) in entries {
            insert_add(&mut corner, k, &r);
        }
        drop_zeros(&mut corner);
        Self {
            dim,
            period: 1,
            laurent: BTreeMap::new(),
            corner,
        }
    }

    /// The matrix unit `r·e_{i,j}`.
    pub fn unit_entry(dim: usize, i: i64, j: i64, r: SparseVec) -> Self {
        Self::finite(dim, [((i, j), r)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn laurent(&self) -> &BTreeMap<(i64, usize), SparseVec> {
        &self.laurent
    }

    pub fn corner(&self) -> &FiniteMatrix {
        &self.corner
    }

    pub fn is_zero(&self) -> bool {
        self.laurent.is_empty() && self.corner.is_empty()
    }

    pub fn bandwidth(&self) -> u64 {
        let l = self.laurent.keys().map(|(p, _)| p.unsigned_abs());
        let c = self.corner.keys().map(|(i, j)| (i - j).unsigned_abs());
        l.chain(c).max().unwrap_or(0)
    }

    /// The `(i, j)` entry.
    pub fn entry(&self, i: i64, j: i64) -> SparseVec {
        let res = i.rem_euclid(self.period as i64) as usize;
        let mut v = self.laurent.get(&(j - i, res)).cloned().unwrap_or_default();
        if let Some(c) = self.corner.get(&(i, j)) {
            v = v.add(c);
        }
        v
    }

    /// The same element described with a period that is a multiple of the
    /// current one.
    pub fn refined(&self, period: usize) -> Self {
        assert!(period % self.period == 0, "{period} is not a multiple of {}", self.period);
        let mut laurent = BTreeMap::new();
        for ((p, a), r) in &self.laurent {
            for k in 0..period / self.period {
                laurent.insert((*p, a + k * self.period), r.clone());
            }
        }
        Self {
            dim: self.dim,
            period,
            laurent,
            corner: self.corner.clone(),
        }
    }

    /// Reduces the period to the smallest one the pattern admits.
    pub fn normalized(mut self) -> Self {
        drop_zeros(&mut self.laurent);
        drop_zeros(&mut self.corner);
        if self.laurent.is_empty() {
            self.period = 1;
            return self;
        }
        let n = self.period;
        for d in (1..n).filter(|d| n % d == 0) {
            let ok = self.laurent.iter().all(|((p, a), r)| {
                (0..n / d).all(|k| self.laurent.get(&(*p, (a + k * d) % n)) == Some(r))
            });
            if ok {
                let laurent = self
                    .laurent
                    .iter()
                    .filter(|((_, a), _)| *a < d)
                    .map(|(k, v)| (*k, v.clone()))
                    .collect();
                return Self {
                    dim: self.dim,
                    period: d,
                    laurent,
                    corner: self.corner,
                };
            }
        }
        self
    }

    fn combine(&self, other: &Self, f: impl Fn(&SparseVec, &SparseVec) -> SparseVec) -> Self {
        assert_eq!(self.dim, other.dim, "elements over different coefficient algebras");
        let n = self.period.lcm(&other.period);
        let (a, b) = (self.refined(n), other.refined(n));
        let zero = SparseVec::new();
        let mut laurent = BTreeMap::new();
        for k in a.laurent.keys().chain(b.laurent.keys()) {
            let v = f(a.laurent.get(k).unwrap_or(&zero), b.laurent.get(k).unwrap_or(&zero));
            laurent.insert(*k, v);
        }
        let mut corner = BTreeMap::new();
        for k in a.corner.keys().chain(b.corner.keys()) {
            let v = f(a.corner.get(k).unwrap_or(&zero), b.corner.get(k).unwrap_or(&zero));
            corner.insert(*k, v);
        }
        Self {
            dim: self.dim,
            period: n,
            laurent,
            corner,
        }
        .normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x.add(y))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x.sub(y))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for v in out.laurent.values_mut().chain(out.corner.values_mut()) {
            *v = v.scale(c);
        }
        out.normalized()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::from_integer(1.into()))
    }

    /// Dense entries on the window `lo..=hi` in both directions, row-major.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Vec<SparseVec>> {
        (lo..=hi)
            .map(|i| (lo..=hi).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// `L offset c…` lines (with `@residue:period` when the period exceeds 1)
    /// followed by `C i j c…` lines, each listing dense coordinates in `R`.
    pub fn to_text(&self) -> String {
        let coeffs = |v: &SparseVec| {
            v.to_dense(self.dim)
                .iter()
                .map(fmt_fraction)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        let mut diag: Vec<_> = self.laurent.iter().collect();
        diag.sort_by_key(|((p, a), _)| (*p, *a));
        for ((p, a), r) in diag {
            if self.period == 1 {
                out.push_str(&format!("L {p} {}\n", coeffs(r)));
            } else {
                out.push_str(&format!("L {p} @{a}:{} {}\n", self.period, coeffs(r)));
            }
        }
        for ((i, j), r) in &self.corner {
            out.push_str(&format!("C {i} {j} {}\n", coeffs(r)));
        }
        out
    }

    pub fn parse_text(dim: usize, text: &str) -> Result<Self> {
        let mut out = Self::zero(dim);
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", n + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            let int = |s: &str| s.parse::<i64>().map_err(|_| err(&format!("bad integer {s:?}")));
            let vec = |toks: &[&str]| -> Result<SparseVec> {
                if toks.len() != dim {
                    return Err(err(&format!("expected {dim} coefficients, found {}", toks.len())));
                }
                let vals = toks
                    .iter()
                    .map(|t| parse_scalar(t).map_err(|_| err(&format!("bad coefficient {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SparseVec::from_dense(&vals))
            };
            let term = match toks.first().copied() {
                Some("L") if toks.len() >= 2 => {
                    let p = int(toks[1])?;
                    if let Some(spec) = toks.get(2).and_then(|t| t.strip_prefix('@')) {
                        let (a, m) = spec.split_once(':').ok_or_else(|| err("expected @residue:period"))?;
                        let (a, m) = (int(a)?, int(m)?);
                        if m < 1 || a < 0 || a >= m {
                            return Err(err("residue must lie in 0..period"));
                        }
                        Self::periodic(dim, m as usize, [((p, a as usize), vec(&toks[3..])?)])
                    } else {
                        Self::diagonal(dim, p, vec(&toks[2..])?)
                    }
                }
                Some("C") if toks.len() >= 3 => {
                    Self::unit_entry(dim, int(toks[1])?, int(toks[2])?, vec(&toks[3..])?)
                }
                _ => return Err(err("expected a line starting with L or C")),
            };
            out = out.add(&term);
        }
        Ok(out)
    }
}

/// `J(R)` for a fixed coefficient algebra.
#[derive(Clone, Debug)]
pub struct JacobiAlgebra {
    r: StructureAlgebra,
}

impl JacobiAlgebra {
    pub fn new(r: StructureAlgebra) -> Self {
        Self { r }
    }

    pub fn base(&self) -> &StructureAlgebra {
        &self.r
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn zero(&self) -> JElement {
        JElement::zero(self.dim())
    }

    /// `r·I`.
    pub fn scalar(&self, r: &SparseVec) -> JElement {
        JElement::diagonal(self.dim(), 0, r.clone())
    }

    /// `I = Σ_i e_{i,i}`.
    pub fn identity(&self) -> JElement {
        self.scalar(self.r.unit())
    }

    /// `τ^p = Σ_i e_{i,i+p}`.
    pub fn tau(&self, p: i64) -> JElement {
        JElement::diagonal(self.dim(), p, self.r.unit().clone())
    }

    /// `e_{i,j}(p) = Σ_r e_{i+rn, j+(p+r)n}` for `1 ≤ i, j ≤ n`.
    pub fn affine_generator(&self, n: usize, i: usize, j: usize, p: i64) -> JElement {
        assert!(n >= 1 && (1..=n).contains(&i) && (1..=n).contains(&j));
        let offset = j as i64 - i as i64 + p * n as i64;
        JElement::periodic(self.dim(), n, [((offset, i % n), self.r.unit().clone())])
    }

    pub fn mul(&self, x: &JElement, y: &JElement) -> JElement {
        assert_eq!(x.dim, self.dim());
        assert_eq!(y.dim, self.dim());
        let n = x.period.lcm(&y.period);
        let (x, y) = (x.refined(n), y.refined(n));
        let ni = n as i64;
        let res = |i: i64| i.rem_euclid(ni) as usize;
        let mut laurent = BTreeMap::new();
        let mut corner = BTreeMap::new();
        for ((p, a), r) in &x.laurent {
            for ((q, b), s) in &y.laurent {
                if res(*a as i64 + p) == *b {
                    insert_add(&mut laurent, (p + q, *a), &self.r.mul(r, s));
                }
            }
            for ((j, k), s) in &y.corner {
                let i = j - p;
                if res(i) == *a {
                    insert_add(&mut corner, (i, *k), &self.r.mul(r, s));
                }
            }
        }
        for ((i, j), r) in &x.corner {
            for ((q, b), s) in &y.laurent {
                if res(*j) == *b {
                    insert_add(&mut corner, (*i, j + q), &self.r.mul(r, s));
                }
            }
            for ((j2, k), s) in y.corner.range((*j, i64::MIN)..=(*j, i64::MAX)) {
                debug_assert_eq!(j, j2);
                insert_add(&mut corner, (*i, *k), &self.r.mul(r, s));
            }
        }
        drop_zeros(&mut laurent);
        drop_zeros(&mut corner);
        JElement {
            dim: self.dim(),
            period: n,
            laurent,
            corner,
        }
        .normalized()
    }

    pub fn bracket(&self, x: &JElement, y: &JElement) -> JElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// Splits `x` into `n×n` blocks with `(M_{ī,j̄})_{r,s} = m_{i+rn, j+sn}`
    /// for representatives `i, j ∈ 1..=n`; `blocks[i−1][j−1]` is `M_{ī,j̄}`.
    pub fn phi_block_map(&self, n: usize, x: &JElement) -> Vec<Vec<JElement>> {
        assert!(n >= 1);
        let ni = n as i64;
        let big = x.period as i64;
        let mut blocks: Vec<Vec<Vec<JElement>>> = vec![vec![Vec::new(); n]; n];
        for ((p, a), r) in &x.laurent {
            for i in 1..=ni {
                let j = (i + p - 1).rem_euclid(ni) + 1;
                let q = (i + p - j) / ni;
                // rows r with i + r·n ≡ a (mod P); they form one class mod P/gcd(n, P)
                let sub = (big / big.gcd(&ni)) as usize;
                if let Some(r0) = (0..sub as i64).find(|r| (i + r * ni - *a as i64).rem_euclid(big) == 0) {
                    blocks[(i - 1) as usize][(j - 1) as usize].push(JElement::periodic(
                        x.dim,
                        sub,
                        [((q, r0 as usize), r.clone())],
                    ));
                }
            }
        }
        for ((t, u), r) in &x.corner {
            let i = (t - 1).rem_euclid(ni) + 1;
            let j = (u - 1).rem_euclid(ni) + 1;
            blocks[(i - 1) as usize][(j - 1) as usize].push(JElement::unit_entry(
                x.dim,
                (t - i) / ni,
                (u - j) / ni,
                r.clone(),
            ));
        }
        blocks
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|parts| parts.iter().fold(JElement::zero(x.dim), |s, e| s.add(e)))
                    .collect()
            })
            .collect()
    }

    /// Inverse of [`Self::phi_block_map`].
    pub fn phi_block_unmap(&self, blocks: &[Vec<JElement>]) -> JElement {
        let n = blocks.len();
        let ni = n as i64;
        let mut out = self.zero();
        for (bi, row) in blocks.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (bj, b) in row.iter().enumerate() {
                let (i, j) = (bi as i64 + 1, bj as i64 + 1);
                let big = b.period as i64;
                let period = (b.period * n) as usize;
                for ((q, r0), v) in &b.laurent {
                    // rows t = i + r·n with r ≡ r0 (mod P): t ≡ i + r0·n (mod P·n)
                    let a = (i + *r0 as i64 * ni).rem_euclid(big * ni) as usize;
                    let offset = j - i + q * ni;
                    out = out.add(&JElement::periodic(self.dim(), period, [((offset, a), v.clone())]));
                }
                for ((r, s), v) in &b.corner {
                    out = out.add(&JElement::unit_entry(self.dim(), i + r * ni, j + s * ni, v.clone()));
                }
            }
        }
        out
    }

    pub fn block_mul(&self, x: &[Vec<JElement>], y: &[Vec<JElement>]) -> Vec<Vec<JElement>> {
        let n = x.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(self.zero(), |s, k| s.add(&self.mul(&x[i][k], &y[k][j])))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn block_bracket(&self, x: &[Vec<JElement>], y: &[Vec<JElement>]) -> Vec<Vec<JElement>> {
        let xy = self.block_mul(x, y);
        let yx = self.block_mul(y, x);
        xy.iter()
            .zip(&yx)
            .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u.sub(v)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product_algebra;
    use crate::linalg::int;

    fn jk() -> JacobiAlgebra {
        JacobiAlgebra::new(StructureAlgebra::ground_field())
    }

    fn one() -> SparseVec {
        SparseVec::unit(0)
    }

    #[test]
    fn diagonal_times_shift() {
        let j = JacobiAlgebra::new(StructureAlgebra::dual_numbers());
        let eps = SparseVec::unit(1);
        let lhs = j.mul(&j.scalar(&eps), &j.tau(1));
        assert_eq!(lhs, JElement::diagonal(2, 1, eps));
        assert_eq!(j.mul(&j.tau(2), &j.tau(-3)), j.tau(-1));
    }

    #[test]
    fn matrix_units() {
        let j = jk();
        let e00 = JElement::unit_entry(1, 0, 0, one());
        assert_eq!(j.mul(&e00, &e00), e00);
        let e01 = JElement::unit_entry(1, 0, 1, one());
        assert!(j.mul(&e01, &e01).is_zero());
        // τ·e_{1,5} = e_{0,5}
        assert_eq!(j.mul(&j.tau(1), &JElement::unit_entry(1, 1, 5, one())), JElement::unit_entry(1, 0, 5, one()));
        assert_eq!(j.mul(&JElement::unit_entry(1, 3, 4, one()), &j.tau(-2)), JElement::unit_entry(1, 3, 2, one()));
    }

    #[test]
    fn affine_bracket_example() {
        let j = jk();
        let lhs = j.bracket(&j.affine_generator(2, 1, 2, 0), &j.affine_generator(2, 2, 1, 1));
        let rhs = j.affine_generator(2, 1, 1, 1).sub(&j.affine_generator(2, 2, 2, 1));
        assert_eq!(lhs, rhs);
        assert_eq!(j.affine_generator(1, 1, 1, 3), j.tau(3));
        assert!(j.bracket(&j.tau(2), &j.tau(-1)).is_zero());
    }

    #[test]
    fn affine_relations_exhaustive() {
        let j = jk();
        for n in 1..=3usize {
            for (i, jj, k, l) in quadruples(n) {
                for p in -2..=2 {
                    for q in -2..=2 {
                        let lhs = j.bracket(&j.affine_generator(n, i, jj, p), &j.affine_generator(n, k, l, q));
                        let mut rhs = j.zero();
                        if jj == k {
                            rhs = rhs.add(&j.affine_generator(n, i, l, p + q));
                        }
                        if l == i {
                            rhs = rhs.sub(&j.affine_generator(n, k, jj, p + q));
                        }
                        assert_eq!(lhs, rhs, "n={n} ({i},{jj},{p}) ({k},{l},{q})");
                    }
                }
            }
        }
    }

    fn quadruples(n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut v = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        v.push((a, b, c, d));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn identity_and_unit_blocks() {
        let j = jk();
        let b = j.phi_block_map(2, &j.identity());
        assert_eq!(b[0][0], j.identity());
        assert_eq!(b[1][1], j.identity());
        assert!(b[0][1].is_zero() && b[1][0].is_zero());
        let b = j.phi_block_map(2, &JElement::unit_entry(1, 1, 2, one()));
        assert_eq!(b[0][1], JElement::unit_entry(1, 0, 0, one()));
        // τ at n = 2: block (1,2) is I and block (2,1) is τ
        let b = j.phi_block_map(2, &j.tau(1));
        assert_eq!(b[0][1], j.identity());
        assert_eq!(b[1][0], j.tau(1));
        assert!(b[0][0].is_zero());
    }

    #[test]
    fn block_map_round_trip() {
        let kk = product_algebra(&StructureAlgebra::ground_field(), &StructureAlgebra::ground_field());
        let j = JacobiAlgebra::new(kk);
        let x = JElement::periodic(2, 3, [((1, 2), SparseVec::unit(0)), ((-2, 0), SparseVec::unit(1))])
            .add(&JElement::unit_entry(2, -4, 1, SparseVec::single(1, int(3))));
        for n in 1..=4 {
            let b = j.phi_block_map(n, &x);
            assert_eq!(j.phi_block_unmap(&b), x, "n = {n}");
        }
    }

    #[test]
    fn normalization_is_canonical() {
        let a = JElement::periodic(1, 2, [((0, 0), one()), ((0, 1), one())]);
        assert_eq!(a.period(), 1);
        let b = JElement::periodic(1, 4, [((1, 1), one()), ((1, 3), one())]);
        assert_eq!(b.period(), 2);
        assert_eq!(a.entry(-7, -7), one());
        assert_eq!(b.entry(-1, 0), one());
        assert!(b.entry(0, 1).is_zero());
    }

    #[test]
    fn text_round_trip() {
        let j = JacobiAlgebra::new(StructureAlgebra::dual_numbers());
        let x = j
            .tau(-1)
            .add(&JElement::periodic(2, 2, [((3, 1), SparseVec::single(1, crate::linalg::ratio(1, 2)))]))
            .add(&JElement::unit_entry(2, 0, -2, SparseVec::unit(1)));
        let text = x.to_text();
        assert_eq!(JElement::parse_text(2, &text).unwrap(), x);
        assert!(matches!(JElement::parse_text(2, "L 1 1"), Err(Error::Parse(_))));
        assert!(matches!(JElement::parse_text(2, "X 1 1 0"), Err(Error::Parse(_))));
    }
}
