//! Bounded chain complexes of free modules, homology as cokernel
//! presentations, Fitting-ideal support data and tensor products.
//!
//! A complex stores, for each degree `i` in `(lo, hi]`, the matrix of
//! `∂_i : X_i → X_{i-1}` with `rank(i-1)` rows and `rank(i)` columns.
//! Homology in degree `i` is presented on a syzygy basis of `∂_i`, with
//! relations given by lifting the columns of `∂_{i+1}` into those
//! coordinates together with the syzygies among the kernel generators
//! themselves (without the latter the presentation would wrongly claim a
//! free module whenever the kernel is not free).

use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::field::FieldElement;
use crate::groebner::{
    groebner_basis, syzygies, GroebnerBasis, IdealPresentation, TrackedSubmodule, VectorPoly,
};
use crate::matrix::PolyMatrix;
use crate::poly::{PolyRing, Polynomial};
use itertools::Itertools;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Arc<PolyRing>,
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>, // diffs[k] : X_{lo+k+1} -> X_{lo+k}
}

impl FreeComplex {
    pub fn new(
        ring: &Arc<PolyRing>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Ok(FreeComplex { ring: ring.clone(), lo, ranks: vec![0], diffs: vec![] });
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::invalid(format!(
                "expected {} differentials for {} degrees, got {}",
                ranks.len() - 1,
                ranks.len(),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::invalid(format!(
                    "differential into degree {} has shape {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        Ok(FreeComplex { ring: ring.clone(), lo, ranks, diffs })
    }

    /// The complex with a single free module in degree `deg`.
    pub fn concentrated(ring: &Arc<PolyRing>, deg: i64, rank: usize) -> Self {
        FreeComplex { ring: ring.clone(), lo: deg, ranks: vec![rank], diffs: vec![] }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, degree: i64) -> usize {
        if degree < self.lo || degree > self.hi() {
            0
        } else {
            self.ranks[(degree - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Matrix of `∂_degree`; a zero matrix of the right shape outside the
    /// stored window.
    pub fn diff(&self, degree: i64) -> PolyMatrix {
        if degree > self.lo && degree <= self.hi() {
            self.diffs[(degree - self.lo - 1) as usize].clone()
        } else {
            PolyMatrix::zero(&self.ring, self.rank(degree - 1), self.rank(degree))
        }
    }

    /// Check `∂ ∘ ∂ = 0` for every composable pair, reporting the first
    /// nonzero entry on failure.
    pub fn validate(&self) -> Result<()> {
        for i in (self.lo + 1)..self.hi() {
            let d_i = self.diff(i);
            let d_next = self.diff(i + 1);
            let prod = d_i.mul(&d_next)?;
            for r in 0..prod.rows() {
                for c in 0..prod.cols() {
                    if !prod.get(r, c).is_zero() {
                        return Err(Error::ComplexViolation {
                            degree: i,
                            row: r + 1,
                            col: c + 1,
                            entry: prod.get(r, c).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Presentation of `H_degree = ker ∂_degree / im ∂_{degree+1}`.
    pub fn homology(&self, degree: i64) -> Result<ModulePresentation> {
        let ri = self.rank(degree);
        if ri == 0 {
            return Ok(ModulePresentation::zero(&self.ring));
        }
        let d_i = self.diff(degree);
        let image_cols: Vec<VectorPoly> = {
            let d_next = self.diff(degree + 1);
            (0..d_next.cols()).map(|j| VectorPoly::new(d_next.col(j))).collect()
        };

        if d_i.rows() == 0 || d_i.is_zero() {
            // kernel is everything; relations are the image columns verbatim
            let relations = PolyMatrix::from_cols(
                &self.ring,
                ri,
                image_cols.into_iter().map(|v| v.coords().to_vec()).collect(),
            )?;
            return Ok(ModulePresentation::new(&self.ring, ri, relations));
        }

        let kernel = syzygies(&d_i);
        let kernel_gens: Vec<VectorPoly> =
            (0..kernel.cols()).map(|j| VectorPoly::new(kernel.col(j))).collect();
        let t = kernel_gens.len();
        if t == 0 {
            return Ok(ModulePresentation::zero(&self.ring));
        }
        let tracked = TrackedSubmodule::new(&self.ring, ri, &kernel_gens);
        let mut relation_cols: Vec<Vec<Polynomial>> = Vec::new();
        for col in &image_cols {
            match tracked.lift(col) {
                Some(lambda) => relation_cols.push(lambda),
                None => {
                    return Err(Error::invalid(
                        "image column not contained in kernel; run validate first",
                    ))
                }
            }
        }
        for syz in tracked.syzygies() {
            relation_cols.push(syz.coords().to_vec());
        }
        let relations = PolyMatrix::from_cols(&self.ring, t, relation_cols)?;
        Ok(ModulePresentation::new(&self.ring, t, relations))
    }

    /// Reindex by `offset`; differentials pick up the usual `(-1)^offset`.
    pub fn shifted(&self, offset: i64) -> FreeComplex {
        let diffs = if offset.rem_euclid(2) == 0 {
            self.diffs.clone()
        } else {
            self.diffs
                .iter()
                .map(|d| {
                    let mut neg = PolyMatrix::zero(&self.ring, d.rows(), d.cols());
                    for r in 0..d.rows() {
                        for c in 0..d.cols() {
                            neg.set(r, c, d.get(r, c).negate());
                        }
                    }
                    neg
                })
                .collect()
        };
        FreeComplex { ring: self.ring.clone(), lo: self.lo + offset, ranks: self.ranks.clone(), diffs }
    }

    /// Total tensor complex `self ⊗ other` with the sign
    /// `∂(a⊗b) = ∂a⊗b + (-1)^{|a|} a⊗∂b`. Per total degree the blocks are
    /// laid out by ascending left degree, row-major within a block.
    pub fn tensor(&self, other: &FreeComplex) -> Result<FreeComplex> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch("tensor of complexes over different rings".into()));
        }
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        let blocks = |m: i64| -> Vec<(i64, usize, usize, usize)> {
            // (left degree p, offset, left rank, right rank)
            let mut out = Vec::new();
            let mut offset = 0;
            for p in self.lo..=self.hi() {
                let q = m - p;
                let (rl, rr) = (self.rank(p), other.rank(q));
                if rl > 0 && rr > 0 {
                    out.push((p, offset, rl, rr));
                    offset += rl * rr;
                }
            }
            out
        };
        let total_rank = |m: i64| blocks(m).iter().map(|b| b.2 * b.3).sum::<usize>();

        let mut ranks = Vec::new();
        for m in lo..=hi {
            ranks.push(total_rank(m));
        }
        let mut diffs = Vec::new();
        for m in (lo + 1)..=hi {
            let src = blocks(m);
            let dst = blocks(m - 1);
            let mut mat = PolyMatrix::zero(&self.ring, total_rank(m - 1), total_rank(m));
            let find_dst = |p: i64| dst.iter().find(|b| b.0 == p).copied();
            for &(p, off_src, rl, rr) in &src {
                let q = m - p;
                // ∂_left ⊗ id : block (p,q) -> (p-1,q)
                if let Some((_, off_dst, rl_dst, rr_dst)) = find_dst(p - 1) {
                    debug_assert_eq!(rr_dst, rr);
                    let dl = self.diff(p);
                    debug_assert_eq!(dl.rows(), rl_dst);
                    for a_dst in 0..rl_dst {
                        for a_src in 0..rl {
                            let entry = dl.get(a_dst, a_src);
                            if entry.is_zero() {
                                continue;
                            }
                            for b in 0..rr {
                                let row = off_dst + a_dst * rr + b;
                                let col = off_src + a_src * rr + b;
                                mat.set(row, col, entry.clone());
                            }
                        }
                    }
                }
                // (-1)^p id ⊗ ∂_right : block (p,q) -> (p,q-1)
                if let Some((_, off_dst, rl_dst, rr_dst)) = find_dst(p) {
                    debug_assert_eq!(rl_dst, rl);
                    let dr = other.diff(q);
                    debug_assert_eq!(dr.rows(), rr_dst);
                    let negate = p.rem_euclid(2) == 1;
                    for b_dst in 0..rr_dst {
                        for b_src in 0..rr {
                            let entry = dr.get(b_dst, b_src);
                            if entry.is_zero() {
                                continue;
                            }
                            let signed = if negate { entry.negate() } else { entry.clone() };
                            for a in 0..rl {
                                let row = off_dst + a * rr_dst + b_dst;
                                let col = off_src + a * rr + b_src;
                                mat.set(row, col, signed.clone());
                            }
                        }
                    }
                }
            }
            diffs.push(mat);
        }
        FreeComplex::new(&self.ring, lo, ranks, diffs)
    }

    /// Dimensions of the homology of the fiber complex at a scalar point.
    pub fn fiber_homology_dims(&self, point: &[FieldElement]) -> Vec<(i64, usize)> {
        (self.lo..=self.hi())
            .map(|i| {
                let rank_in = self.diff(i).rank_at_point(point);
                let rank_out = self.diff(i + 1).rank_at_point(point);
                (i, self.rank(i) - rank_in - rank_out)
            })
            .collect()
    }
}

/// Koszul tensor `K(x) ⊗ X`; the empty sequence returns `X` unchanged.
/// Entries must lie in the graded maximal ideal.
pub fn tensor_with_koszul(x: &FreeComplex, seq: &[Polynomial]) -> Result<FreeComplex> {
    if seq.is_empty() {
        return Ok(x.clone());
    }
    let algebra = crate::koszul::KoszulAlgebra::new(x.ring(), seq.to_vec())?;
    algebra.to_free_complex().tensor(x)
}

/// A finitely generated module presented as the cokernel of its relations
/// matrix. Zero relation columns are dropped at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    ring: Arc<PolyRing>,
    rank: usize,
    relations: PolyMatrix,
}

impl ModulePresentation {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, relations: PolyMatrix) -> Self {
        assert_eq!(relations.rows(), rank, "relations must have one row per generator");
        let cols: Vec<Vec<Polynomial>> = (0..relations.cols())
            .map(|j| relations.col(j))
            .filter(|c| c.iter().any(|p| !p.is_zero()))
            .collect();
        let relations = PolyMatrix::from_cols(ring, rank, cols).expect("column shapes fixed");
        ModulePresentation { ring: ring.clone(), rank, relations }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        ModulePresentation::new(ring, 0, PolyMatrix::zero(ring, 0, 0))
    }

    pub fn free(ring: &Arc<PolyRing>, rank: usize) -> Self {
        ModulePresentation::new(ring, rank, PolyMatrix::zero(ring, rank, 0))
    }

    /// `R / (gens)` as a rank-one presentation.
    pub fn cyclic(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Self {
        let cols: Vec<Vec<Polynomial>> = gens.iter().map(|g| vec![g.clone()]).collect();
        let relations = PolyMatrix::from_cols(ring, 1, cols).expect("rank one columns");
        ModulePresentation::new(ring, 1, relations)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    /// `M/(seq)M`: the same generators with `x_j e_i` adjoined as relations.
    pub fn quotient_by_sequence(&self, seq: &[Polynomial]) -> ModulePresentation {
        let mut cols = self.relations.columns();
        for f in seq {
            for i in 0..self.rank {
                let mut col = vec![Polynomial::zero(&self.ring); self.rank];
                col[i] = f.clone();
                cols.push(col);
            }
        }
        let relations =
            PolyMatrix::from_cols(&self.ring, self.rank, cols).expect("shapes preserved");
        ModulePresentation::new(&self.ring, self.rank, relations)
    }

    /// Zeroth Fitting ideal: all `rank × rank` minors of the relations
    /// matrix. Same radical as the annihilator. The zero module (no
    /// generators) yields the unit ideal, too few relations the zero ideal.
    pub fn fitting_ideal(&self) -> IdealPresentation {
        let g = self.rank;
        if g == 0 {
            return IdealPresentation::unit(&self.ring);
        }
        let s = self.relations.cols();
        if s < g {
            return IdealPresentation::zero(&self.ring);
        }
        let mut minors = Vec::new();
        for combo in (0..s).combinations(g) {
            let mut sub = PolyMatrix::zero(&self.ring, g, g);
            for (jj, &j) in combo.iter().enumerate() {
                for i in 0..g {
                    sub.set(i, jj, self.relations.get(i, j).clone());
                }
            }
            let det = sub.det();
            if !det.is_zero() {
                minors.push(det);
            }
        }
        IdealPresentation::new(&self.ring, minors)
    }

    pub fn fitting_basis(&self) -> GroebnerBasis {
        groebner_basis(&self.fitting_ideal())
    }

    /// Krull dimension; the zero module reports `-infinity`.
    pub fn dim(&self) -> ExtInt {
        dim_from_fitting(&self.fitting_basis())
    }

    pub fn is_zero_module(&self) -> bool {
        self.fitting_basis().is_unit_ideal()
    }

    /// Under the graded-local convention, finite length means dimension at
    /// most zero.
    pub fn is_finite_length(&self) -> bool {
        self.dim() <= ExtInt::Finite(0)
    }
}

/// A unit Fitting ideal means the zero module, reported as `-infinity`.
pub fn dim_from_fitting(fitting: &GroebnerBasis) -> ExtInt {
    if fitting.is_unit_ideal() {
        ExtInt::NegInf
    } else {
        ExtInt::Finite(fitting.quotient_dimension())
    }
}

/// Per-degree homology data for a complex: presentation, reduced Fitting
/// basis and dimension.
#[derive(Debug, Clone)]
pub struct HomologyEntry {
    pub degree: i64,
    pub presentation: ModulePresentation,
    pub fitting: GroebnerBasis,
    pub dim: ExtInt,
}

#[derive(Debug, Clone)]
pub struct HomologyTable {
    entries: Vec<HomologyEntry>,
}

impl HomologyTable {
    pub fn compute(x: &FreeComplex) -> Result<Self> {
        let mut entries = Vec::new();
        for degree in x.lo()..=x.hi() {
            let presentation = x.homology(degree)?;
            let fitting = presentation.fitting_basis();
            let dim = dim_from_fitting(&fitting);
            entries.push(HomologyEntry { degree, presentation, fitting, dim });
        }
        Ok(HomologyTable { entries })
    }

    pub fn entries(&self) -> &[HomologyEntry] {
        &self.entries
    }

    pub fn get(&self, degree: i64) -> Option<&HomologyEntry> {
        self.entries.iter().find(|e| e.degree == degree)
    }

    /// Least degree with nonvanishing homology; `+infinity` for an exact
    /// complex.
    pub fn inf(&self) -> ExtInt {
        self.entries
            .iter()
            .find(|e| e.dim != ExtInt::NegInf)
            .map(|e| ExtInt::Finite(e.degree))
            .unwrap_or(ExtInt::PosInf)
    }

    pub fn is_exact(&self) -> bool {
        self.inf() == ExtInt::PosInf
    }

    pub fn dims(&self) -> Vec<(i64, ExtInt)> {
        self.entries.iter().map(|e| (e.degree, e.dim)).collect()
    }

    /// Every homology module has finite length.
    pub fn all_finite_length(&self) -> bool {
        self.entries.iter().all(|e| e.dim <= ExtInt::Finite(0))
    }
}
