//! The periodicity sequence `… → HH_n → HC_n → HC_{n−2} → HH_{n−1} → …`
//! computed on homology, with an exactness check at every node that the
//! truncation does not affect.

use crate::algebra::{Bimodule, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{rank, solve_linear, SparseMatrix, SparseVec};

use super::chain::ChainComplex;
use super::connes::{build_cyclic_total_complex, TotalLayout};
use super::hochschild::build_hochschild_complex;
use super::homology::{homology_basis, HomologyBasis};

/// Induced maps in the coordinates of the canonical homology bases.
#[derive(Clone, Debug)]
pub struct PeriodicityDegree {
    pub n: usize,
    /// `I_n: HH_n → HC_n`
    pub i_map: SparseMatrix,
    /// `S_n: HC_n → HC_{n−2}`
    pub s_map: SparseMatrix,
    /// `∂_n: HC_{n−2} → HH_{n−1}`
    pub connecting: SparseMatrix,
}

#[derive(Clone, Debug)]
pub struct NodeVerdict {
    pub node: String,
    pub dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct PeriodicityReport {
    pub hh_betti: Vec<usize>,
    pub hc_betti: Vec<usize>,
    pub degrees: Vec<PeriodicityDegree>,
    pub nodes: Vec<NodeVerdict>,
}

impl PeriodicityReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }
}

/// `S: Tot_n → Tot_{n−2}` drops column 0 and moves column `p` to `p − 1`
/// with sign `(−1)^{p−1}`, which makes it a chain map for `d = b + (−1)^p B`.
pub fn s_matrix(r: &StructureAlgebra, n: usize) -> Result<SparseMatrix> {
    let layout = TotalLayout::new(r);
    let src = layout.dim(n);
    if n < 2 {
        return Ok(SparseMatrix::zero(0, src));
    }
    let cols = (0..src)
        .map(|i| {
            let (p, j) = layout.locate(n, i);
            if p == 0 {
                SparseVec::new()
            } else {
                let sign = if p % 2 == 1 { 1 } else { -1 };
                SparseVec::single(layout.offset(n - 2, p - 1) + j, crate::linalg::int(sign))
            }
        })
        .collect();
    SparseMatrix::from_columns(layout.dim(n - 2), cols)
}

fn class_matrix(
    target: Option<&HomologyBasis>,
    images: Vec<SparseVec>,
    what: &str,
) -> Result<SparseMatrix> {
    let Some(t) = target else {
        return Ok(SparseMatrix::zero(0, images.len()));
    };
    let cols = images
        .iter()
        .map(|z| {
            t.class_of(z)
                .map(|c| SparseVec::from_dense(&c))
                .ok_or_else(|| Error::Precondition(format!("{what} does not produce a cycle")))
        })
        .collect::<Result<Vec<_>>>()?;
    SparseMatrix::from_columns(t.betti(), cols)
}

fn exact_at(name: String, dim: usize, incoming: &SparseMatrix, outgoing: &SparseMatrix) -> Result<NodeVerdict> {
    let composite_zero = if incoming.cols() == 0 || outgoing.rows() == 0 {
        true
    } else {
        outgoing.mul(incoming)?.is_zero()
    };
    let exact = composite_zero && rank(incoming)? + rank(outgoing)? == dim;
    Ok(NodeVerdict { node: name, dim, exact })
}

/// Builds `HH` and `HC` of `R` up to `cap`, the maps `I`, `S`, `∂` in
/// every degree `n` with `n + 1 < cap`, and checks exactness at each node
/// `HH_n`, `HC_n` and `HC_{n−2}` in that range.
pub fn periodicity_maps(r: &StructureAlgebra, cap: usize) -> Result<PeriodicityReport> {
    if cap < 2 {
        return Err(Error::Precondition("periodicity needs cap ≥ 2".into()));
    }
    let reg = Bimodule::regular(r);
    let hh: ChainComplex = build_hochschild_complex(r, &reg, cap)?;
    let hc: ChainComplex = build_cyclic_total_complex(r, cap)?;
    let top = cap - 1;
    let hh_b = (0..top).map(|n| homology_basis(&hh, n)).collect::<Result<Vec<_>>>()?;
    let hc_b = (0..top).map(|n| homology_basis(&hc, n)).collect::<Result<Vec<_>>>()?;
    let hh_at = |n: isize| (n >= 0 && (n as usize) < top).then(|| &hh_b[n as usize]);
    let hc_at = |n: isize| (n >= 0 && (n as usize) < top).then(|| &hc_b[n as usize]);
    let layout = TotalLayout::new(r);

    let mut degrees = Vec::new();
    for n in 0..top {
        let ni = n as isize;
        let i_imgs = hh_b[n].representatives().to_vec();
        let i_map = class_matrix(hc_at(ni), i_imgs, "I")?;
        let s = s_matrix(r, n)?;
        let s_imgs = hc_b[n].representatives().iter().map(|y| s.apply(y)).collect();
        let s_map = class_matrix(hc_at(ni - 2), s_imgs, "S")?;
        let connecting = connecting_map(r, &hc, &layout, n, hc_at(ni - 2), hh_at(ni - 1))?;
        degrees.push(PeriodicityDegree {
            n,
            i_map,
            s_map,
            connecting,
        });
    }
    // The node at HH_n needs ∂_{n+1}; only the last one is not computed yet.
    let mut nodes = Vec::new();
    for n in 0..top {
        let ni = n as isize;
        let dim_hh = hh_b[n].betti();
        let dim_hc = hc_b[n].betti();
        let d = &degrees[n];
        let incoming_hh = if n + 1 < top {
            degrees[n + 1].connecting.clone()
        } else {
            connecting_map(r, &hc, &layout, n + 1, hc_at(ni - 1), hh_at(ni))?
        };
        nodes.push(exact_at(format!("HH_{n}"), dim_hh, &incoming_hh, &d.i_map)?);
        nodes.push(exact_at(format!("HC_{n}"), dim_hc, &d.i_map, &d.s_map)?);
        if n >= 2 {
            let dim = hc_b[n - 2].betti();
            nodes.push(exact_at(format!("HC_{} (after S_{n})", n - 2), dim, &d.s_map, &d.connecting)?);
        }
    }
    Ok(PeriodicityReport {
        hh_betti: hh_b.iter().map(HomologyBasis::betti).collect(),
        hc_betti: hc_b.iter().map(HomologyBasis::betti).collect(),
        degrees,
        nodes,
    })
}

/// `∂_n: HC_{n−2} → HH_{n−1}`: lift a cycle `y` of `Tot_{n−2}` through `S`
/// with `solve_linear`, apply `d`, and read off column 0.
fn connecting_map(
    r: &StructureAlgebra,
    hc: &ChainComplex,
    layout: &TotalLayout,
    n: usize,
    source: Option<&HomologyBasis>,
    target: Option<&HomologyBasis>,
) -> Result<SparseMatrix> {
    let Some(src) = source else {
        return Ok(SparseMatrix::zero(target.map_or(0, HomologyBasis::betti), 0));
    };
    let s = s_matrix(r, n)?;
    let d = hc.boundary(n);
    let mut images = Vec::new();
    for y in src.representatives() {
        let rhs = y.to_dense(s.rows());
        let x = solve_linear(&s, &rhs)?
            .ok_or_else(|| Error::Precondition("S is not surjective".into()))?;
        let dx = d.apply(&SparseVec::from_dense(&x));
        let parts = layout.split(n - 1, &dx);
        if parts.iter().skip(1).any(|v| !v.is_zero()) {
            return Err(Error::Precondition("d of a lift leaves column 0".into()));
        }
        images.push(parts[0].clone());
    }
    class_matrix(target, images, "the connecting map")
}
