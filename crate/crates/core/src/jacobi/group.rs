//! Bar chains of `k[ℤ] = k[τ, τ⁻¹]` with coefficients in `M = ∏_{i∈ℤ} V e_i`,
//! where `τ` acts on the left by `m ↦ m[1]`, `m[p]_i = m_{i+p}`, and on the
//! right trivially.
//!
//! Only sequences whose tails are eventually polynomial in `i` are
//! represented: a finite middle window plus one polynomial for each side.
//! Constants and finitely supported sequences are the cases of interest; the
//! polynomial tails make the class closed under the partial sums that
//! degree-0 preimages produce.

use std::collections::BTreeMap;

use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{int, Scalar, SparseVec};

/// The generalized binomial coefficient `C(x, k)` for any integer `x`.
fn binomial(x: i64, k: usize) -> Scalar {
    let mut num = Scalar::one();
    for j in 0..k {
        num *= int(x - j as i64);
        num /= int(j as i64 + 1);
    }
    num
}

fn forward_differences(vals: &[SparseVec]) -> Vec<SparseVec> {
    let mut row = vals.to_vec();
    let mut out = Vec::with_capacity(vals.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| w[1].sub(&w[0])).collect();
    }
    out
}

/// A `V`-valued polynomial in `i`, stored as `Σ_k d_k C(i, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    diffs: Vec<SparseVec>,
}

impl Poly {
    pub fn constant(c: SparseVec) -> Self {
        let mut p = Self { diffs: vec![c] };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.diffs.last().is_some_and(SparseVec::is_zero) {
            self.diffs.pop();
        }
    }

    /// The polynomial of degree `< vals.len()` through `vals` at
    /// `start, start + 1, …`.
    pub fn interpolate(start: i64, vals: &[SparseVec]) -> Self {
        let d = forward_differences(vals);
        let at = |x: i64| {
            d.iter()
                .enumerate()
                .fold(SparseVec::new(), |s, (k, v)| s.add(&v.scale(&binomial(x - start, k))))
        };
        let samples: Vec<SparseVec> = (0..vals.len() as i64).map(at).collect();
        let mut p = Self {
            diffs: forward_differences(&samples),
        };
        p.trim();
        p
    }

    pub fn eval(&self, x: i64) -> SparseVec {
        self.diffs
            .iter()
            .enumerate()
            .fold(SparseVec::new(), |s, (k, v)| s.add(&v.scale(&binomial(x, k))))
    }

    pub fn is_zero(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Number of coefficients, one more than the degree.
    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.diffs.len() <= 1
    }
}

/// An element of `∏_{i∈ℤ} V e_i`: `left(i)` for `i < lo`, `middle[i − lo]`
/// for `lo ≤ i < lo + middle.len()`, and `right(i)` beyond.
#[derive(Clone, Debug, Default)]
pub struct Sequence {
    left: Poly,
    right: Poly,
    lo: i64,
    middle: Vec<SparseVec>,
}

impl Sequence {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: SparseVec) -> Self {
        Self {
            left: Poly::constant(c.clone()),
            right: Poly::constant(c),
            lo: 0,
            middle: Vec::new(),
        }
    }

    /// `Σ m_i e_i` for finitely many `i`.
    pub fn finite(entries: impl IntoIterator<Item = (i64, SparseVec)>) -> Self {
        let map: BTreeMap<i64, SparseVec> = entries.into_iter().fold(BTreeMap::new(), |mut m, (i, v)| {
            let e: &mut SparseVec = m.entry(i).or_default();
            *e = e.add(&v);
            m
        });
        let (Some(lo), Some(hi)) = (map.keys().next().copied(), map.keys().last().copied()) else {
            return Self::zero();
        };
        Self {
            left: Poly::default(),
            right: Poly::default(),
            lo,
            middle: (lo..=hi).map(|i| map.get(&i).cloned().unwrap_or_default()).collect(),
        }
    }

    pub fn with_tails(left: Poly, right: Poly, lo: i64, middle: Vec<SparseVec>) -> Self {
        Self {
            left,
            right,
            lo,
            middle,
        }
    }

    /// Tabulates `f` on `lo..hi` and interpolates the tails from `left_len`
    /// values below `lo` and `right_len` values from `hi` on. `f` must agree
    /// with polynomials of those sizes on the respective tails.
    pub fn from_fn(lo: i64, hi: i64, left_len: usize, right_len: usize, f: impl Fn(i64) -> SparseVec) -> Self {
        let left_vals: Vec<SparseVec> = (lo - left_len as i64..lo).map(&f).collect();
        let right_vals: Vec<SparseVec> = (hi..hi + right_len as i64).map(&f).collect();
        Self {
            left: Poly::interpolate(lo - left_len as i64, &left_vals),
            right: Poly::interpolate(hi, &right_vals),
            lo,
            middle: (lo..hi).map(&f).collect(),
        }
    }

    pub fn left(&self) -> &Poly {
        &self.left
    }

    pub fn right(&self) -> &Poly {
        &self.right
    }

    /// `(lo, hi)` with the middle on `lo..hi`.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.middle.len() as i64)
    }

    pub fn value(&self, i: i64) -> SparseVec {
        let (lo, hi) = self.window();
        if i < lo {
            self.left.eval(i)
        } else if i < hi {
            self.middle[(i - lo) as usize].clone()
        } else {
            self.right.eval(i)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    /// Zero at every negative index: an element of the half-line module
    /// `∏_{i≥0} V e_i ⊕ ⊕_{i<0} V e_i` restricted further to vanish far left.
    pub fn vanishes_far_left(&self) -> bool {
        self.left.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.is_finite() && self.middle.iter().all(SparseVec::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(SparseVec, SparseVec) -> SparseVec) -> Self {
        let (a, b) = (self.window(), other.window());
        Self::from_fn(
            a.0.min(b.0),
            a.1.max(b.1),
            self.left.len().max(other.left.len()),
            self.right.len().max(other.right.len()),
            |i| f(self.value(i), other.value(i)),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x.add(&y))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x.sub(&y))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let (lo, hi) = self.window();
        Self::from_fn(lo, hi, self.left.len(), self.right.len(), |i| self.value(i).scale(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// `m[p]`, with `m[p]_i = m_{i+p}`.
    pub fn shift(&self, p: i64) -> Self {
        let (lo, hi) = self.window();
        Self::from_fn(lo - p, hi - p, self.left.len(), self.right.len(), |i| self.value(i + p))
    }

    /// `m̃_i = Σ_{0<r≤i} m_r` for `i > 0`, `0` at `0`, `−Σ_{i<r≤0} m_r` for `i < 0`.
    pub fn partial_sums(&self) -> Self {
        let (lo, hi) = self.window();
        let (a, b) = (lo.min(0), hi.max(1));
        let f = |i: i64| {
            if i > 0 {
                (1..=i).fold(SparseVec::new(), |s, r| s.add(&self.value(r)))
            } else {
                (i + 1..=0).fold(SparseVec::new(), |s, r| s.sub(&self.value(r)))
            }
        };
        Self::from_fn(a, b, self.left.len() + 1, self.right.len() + 1, f)
    }
}

impl PartialEq for Sequence {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.window(), other.window());
        self.left == other.left
            && self.right == other.right
            && (a.0.min(b.0)..a.1.max(b.1)).all(|i| self.value(i) == other.value(i))
    }
}

impl Eq for Sequence {}

/// A chain `Σ m ⊗ τ^{p_1} ⊗ … ⊗ τ^{p_k}` of degree `k`.
#[derive(Clone, Debug, Default)]
pub struct GroupChain {
    degree: usize,
    terms: BTreeMap<Vec<i64>, Sequence>,
}

impl GroupChain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(m: Sequence, exponents: Vec<i64>) -> Self {
        let mut out = Self::zero(exponents.len());
        out.add_term(exponents, &m);
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Sequence> {
        &self.terms
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, m: &Sequence) {
        assert_eq!(exponents.len(), self.degree);
        let e = self.terms.entry(exponents.clone()).or_default();
        *e = e.add(m);
        if e.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, m) in &other.terms {
            out.add_term(k.clone(), m);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, m)| (k.clone(), m.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Sequence::is_zero)
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.degree == other.degree && self.sub(other).is_zero()
    }

    /// The degree-0 coefficient.
    pub fn coefficient(&self) -> Sequence {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    /// `b(m⊗g_1⊗…⊗g_k) = m⊗g_2… + Σ_{i<k} (−1)^i m⊗…⊗g_i g_{i+1}⊗… + (−1)^k g_k·m⊗g_1…g_{k−1}`.
    pub fn boundary(&self) -> Self {
        let k = self.degree;
        if k == 0 {
            return Self::zero(0);
        }
        let mut out = Self::zero(k - 1);
        for (g, m) in &self.terms {
            out.add_term(g[1..].to_vec(), m);
            for i in 0..k - 1 {
                let mut h = g[..i].to_vec();
                h.push(g[i] + g[i + 1]);
                h.extend_from_slice(&g[i + 2..]);
                let t = if i % 2 == 0 { m.neg() } else { m.clone() };
                out.add_term(h, &t);
            }
            let t = m.shift(g[k - 1]);
            let t = if k % 2 == 1 { t.neg() } else { t };
            out.add_term(g[..k - 1].to_vec(), &t);
        }
        out
    }
}

/// `m̃ ⊗ τ⁻¹` with `b(m̃ ⊗ τ⁻¹) = m`, for finitely supported `m`.
pub fn h0_preimage(m: &Sequence) -> Result<GroupChain> {
    if !m.is_finite() {
        return Err(Error::NotFinitelySupported);
    }
    Ok(GroupChain::single(m.partial_sums(), vec![-1]))
}

/// `m′` with `m⊗τ^p ≡ m′⊗τ` modulo boundaries.
pub fn reduce_to_tau(m: &Sequence, p: i64) -> Sequence {
    let terms: Box<dyn Iterator<Item = i64>> = if p >= 0 { Box::new(0..p) } else { Box::new(p..0) };
    let sum = terms.fold(Sequence::zero(), |s, k| s.add(&m.shift(k)));
    if p >= 0 {
        sum
    } else {
        sum.neg()
    }
}

/// A 2-chain `W` with `b(W) = m⊗τ^p − reduce_to_tau(m, p)⊗τ`.
pub fn tau_witness(m: &Sequence, p: i64) -> GroupChain {
    match p {
        0 => GroupChain::single(m.clone(), vec![0, 0]),
        1 => GroupChain::zero(2),
        p if p > 1 => tau_witness(&m.shift(1), p - 1).sub(&GroupChain::single(m.clone(), vec![p - 1, 1])),
        p => {
            let mp = m.shift(p);
            GroupChain::single(mp.clone(), vec![p, -p])
                .add(&GroupChain::single(mp.clone(), vec![0, 0]))
                .sub(&tau_witness(&mp, -p))
        }
    }
}

/// `m⊗τ` is a cycle iff `m = m[1]`.
pub fn h1_kernel_test(m: &Sequence) -> bool {
    GroupChain::single(m.clone(), vec![1]).boundary().is_zero()
}

/// Rewrites a 1-chain `z` as `m′⊗τ + b(W)`.
pub fn reduce_chain(z: &GroupChain) -> (Sequence, GroupChain) {
    assert_eq!(z.degree(), 1);
    let mut m = Sequence::zero();
    let mut w = GroupChain::zero(2);
    for (g, s) in z.terms() {
        m = m.add(&reduce_to_tau(s, g[0]));
        w = w.add(&tau_witness(s, g[0]));
    }
    (m, w)
}

/// `m̃ ⊗ τ⁻¹` with `m̃_i = Σ_{r≤i} m_r`, which stays in the half-line module.
pub fn halfline_preimage(m: &Sequence) -> Result<GroupChain> {
    if !m.vanishes_far_left() {
        return Err(Error::Precondition("the element does not vanish far to the left".into()));
    }
    let (lo, hi) = m.window();
    let f = |i: i64| (lo..=i).fold(SparseVec::new(), |s, r| s.add(&m.value(r)));
    let tilde = Sequence::from_fn(lo, hi, 0, m.right().len() + 1, f);
    Ok(GroupChain::single(tilde, vec![-1]))
}

/// Seeded samples of the representable classes.
pub mod sample {
    use super::*;

    fn vector<R: Rng>(rng: &mut R, dim: usize, nonzero: bool) -> SparseVec {
        loop {
            let v: Vec<Scalar> = (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect();
            let v = SparseVec::from_dense(&v);
            if !nonzero || !v.is_zero() {
                return v;
            }
        }
    }

    pub fn finite<R: Rng>(rng: &mut R, dim: usize, radius: i64) -> Sequence {
        let n = rng.gen_range(1..=4);
        Sequence::finite((0..n).map(|_| (rng.gen_range(-radius..=radius), vector(rng, dim, false))))
    }

    pub fn constant<R: Rng>(rng: &mut R, dim: usize) -> Sequence {
        Sequence::constant(vector(rng, dim, true))
    }

    /// Constant on the right, finite elsewhere.
    pub fn halfline<R: Rng>(rng: &mut R, dim: usize, radius: i64) -> Sequence {
        let c = vector(rng, dim, false);
        let step = Sequence::from_fn(0, 0, 0, 1, |_| c.clone());
        step.add(&finite(rng, dim, radius))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(i: i64) -> Sequence {
        Sequence::finite([(i, SparseVec::unit(0))])
    }

    fn one() -> Sequence {
        Sequence::constant(SparseVec::unit(0))
    }

    #[test]
    fn polynomial_interpolation() {
        let vals: Vec<SparseVec> = (3..7).map(|x| SparseVec::single(0, int(x * x - 2))).collect();
        let p = Poly::interpolate(3, &vals);
        assert_eq!(p.len(), 3);
        assert_eq!(p.eval(-5), SparseVec::single(0, int(23)));
        assert_eq!(Poly::interpolate(-2, &[SparseVec::new(), SparseVec::new()]), Poly::default());
    }

    #[test]
    fn shifts() {
        assert_eq!(e(3).shift(1), e(2));
        assert_eq!(one().shift(-4), one());
        let s = Sequence::from_fn(0, 0, 2, 2, |i| SparseVec::single(0, int(i)));
        assert_eq!(s.shift(2).value(-10), SparseVec::single(0, int(-8)));
    }

    #[test]
    fn unit_preimage() {
        let w = h0_preimage(&e(0)).unwrap();
        let tilde = &w.terms()[&vec![-1]];
        assert!(tilde.value(0).is_zero());
        assert!(tilde.value(5).is_zero());
        assert_eq!(tilde.value(-1), SparseVec::single(0, int(-1)));
        assert_eq!(tilde.value(-30), SparseVec::single(0, int(-1)));
        assert_eq!(w.boundary().coefficient(), e(0));
        assert!(h0_preimage(&Sequence::zero()).unwrap().is_zero());
        let m = e(1).sub(&e(0));
        assert_eq!(h0_preimage(&m).unwrap().boundary().coefficient(), m);
        assert!(matches!(h0_preimage(&one()), Err(Error::NotFinitelySupported)));
    }

    #[test]
    fn reductions_and_witnesses() {
        let m = e(0).add(&e(2).scale(&int(3)));
        assert_eq!(reduce_to_tau(&m, 1), m);
        assert_eq!(reduce_to_tau(&m, 2), m.add(&m.shift(1)));
        assert_eq!(reduce_to_tau(&m, -1), m.shift(-1).neg());
        assert!(reduce_to_tau(&m, 0).is_zero());
        for p in -4..=4 {
            let lhs = tau_witness(&m, p).boundary();
            let rhs = GroupChain::single(m.clone(), vec![p]).sub(&GroupChain::single(reduce_to_tau(&m, p), vec![1]));
            assert!(lhs.equals(&rhs), "p = {p}");
        }
    }

    #[test]
    fn kernel_characterization() {
        assert!(h1_kernel_test(&one()));
        assert!(!h1_kernel_test(&e(0)));
        assert!(!h1_kernel_test(&one().add(&e(0))));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = sample::halfline(&mut rng, 2, 3);
            let c = GroupChain::single(m, vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3), 2]);
            assert!(c.boundary().boundary().is_zero());
        }
    }

    #[test]
    fn halfline_witnesses() {
        let step = Sequence::from_fn(0, 0, 0, 1, |_| SparseVec::unit(0));
        assert!(!h1_kernel_test(&step));
        let w = halfline_preimage(&step).unwrap();
        assert_eq!(w.boundary().coefficient(), step);
        // linear growth on the right
        assert_eq!(w.terms()[&vec![-1]].value(9), SparseVec::single(0, int(10)));
        assert!(halfline_preimage(&one()).is_err());
    }
}
