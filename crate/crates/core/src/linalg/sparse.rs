//! Sparse vectors and column-major sparse matrices over [`Scalar`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::scalar::{fmt_fraction, parse_scalar, Scalar};
use crate::error::{Error, Result};

/// A sparse coordinate vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        Self {
            entries: vec![(index, Scalar::one())],
        }
    }

    pub fn single(index: usize, value: Scalar) -> Self {
        if value.is_zero() {
            Self::new()
        } else {
            Self {
                entries: vec![(index, value)],
            }
        }
    }

    /// Builds a vector from arbitrary pairs; duplicate indices are summed.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut acc = Accumulator::new();
        for (i, v) in pairs {
            acc.add(i, v);
        }
        acc.into_vec()
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    /// Trusted constructor for already sorted, zero-free data.
    pub(crate) fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        Self { entries }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> Scalar {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    /// `self + c * other`, by a sorted merge.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(other, &-Scalar::one())
    }

    /// Reindexes through `f`, summing collisions.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::new(),
            Some((_, lead)) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
        }
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

/// Order-independent accumulation of `(index, value)` contributions.
#[derive(Clone, Debug, Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, value: Scalar) {
        if value.is_zero() {
            return;
        }
        let slot = self.map.entry(index).or_insert_with(Scalar::zero);
        *slot += value;
    }

    pub fn add_vec(&mut self, v: &SparseVec, c: &Scalar) {
        for (i, x) in v.iter() {
            self.add(i, x * c);
        }
    }

    pub fn into_vec(self) -> SparseVec {
        SparseVec {
            entries: self.map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }
}

/// A sparse matrix stored by columns. Column `j` is the image of the `j`-th
/// basis vector of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            if let Some(m) = c.max_index() {
                if m >= rows {
                    return Err(Error::Dimension(format!(
                        "column {j} has entry in row {m} but the matrix has {rows} rows"
                    )));
                }
            }
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            columns,
        })
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Scalar)>>(
        rows: usize,
        cols: usize,
        triplets: I,
    ) -> Result<Self> {
        let mut acc: Vec<Accumulator> = vec![Accumulator::new(); cols];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::Dimension(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            acc[j].add(i, v);
        }
        Ok(Self {
            rows,
            cols,
            columns: acc.into_iter().map(Accumulator::into_vec).collect(),
        })
    }

    /// Convenience constructor from dense integer rows.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let trip = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i, j, super::scalar::int(*v)))
        });
        Self::from_triplets(r, c, trip).expect("in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[i].push((j, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            columns: cols.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    /// The rows of the matrix as sparse vectors of length `cols`.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        self.transpose().columns
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, x) in v.iter() {
            acc.add_vec(&self.columns[j], x);
        }
        acc.into_vec()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// All nonzero entries in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        let mut t: Vec<_> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (i, j, v.clone())))
            .collect();
        t.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        t
    }

    /// Line-based debug dump: a `rows cols` header followed by one
    /// `row col numerator/denominator` line per nonzero entry.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            let _ = writeln!(s, "{i} {j} {}", fmt_fraction(&v));
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        if dims.len() != 2 {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let mut trip = Vec::new();
        for (n, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected `row col value`", n + 1)));
            }
            let i = parts[0]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad row", n + 1)))?;
            let j = parts[1]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad column", n + 1)))?;
            trip.push((i, j, parse_scalar(parts[2])?));
        }
        Self::from_triplets(dims[0], dims[1], trip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    #[test]
    fn add_scaled_cancels() {
        let a = SparseVec::from_pairs([(0, int(1)), (3, int(2))]);
        let b = SparseVec::from_pairs([(3, int(1)), (5, int(1))]);
        let c = a.add_scaled(&b, &int(-2));
        assert_eq!(c, SparseVec::from_pairs([(0, int(1)), (5, int(-2))]));
    }

    #[test]
    fn dump_round_trip() {
        let m = SparseMatrix::from_int_rows(&[vec![1, 0, -2], vec![0, 0, 3]]);
        let text = m.dump();
        assert_eq!(text, "2 3\n0 0 1/1\n0 2 -2/1\n1 2 3/1\n");
        assert_eq!(SparseMatrix::parse_dump(&text).unwrap(), m);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]]);
        let b = SparseMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            a.mul(&b).unwrap(),
            SparseMatrix::from_int_rows(&[vec![2, 1], vec![4, 3]])
        );
        assert_eq!(a.transpose().get(0, 1), int(3));
    }
}
