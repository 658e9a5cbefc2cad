//! Buchberger's algorithm for ideals and submodules of free modules,
//! syzygies, normal forms and the combinatorial Krull dimension of a
//! quotient ring.
//!
//! Module terms are ordered position-over-term: a term at a lower position
//! beats any term at a higher position, ties are broken by the ring's
//! monomial order. Putting the tracking coordinates *after* the ambient ones
//! makes this an elimination order, which is what `TrackedSubmodule` relies
//! on for syzygies and membership lifts.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial, Term};
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

/// The prime ideal generated by a subset of the ring variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialPrime {
    vars: BTreeSet<usize>,
}

impl MonomialPrime {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        MonomialPrime { vars: vars.into_iter().collect() }
    }

    pub fn zero() -> Self {
        MonomialPrime { vars: BTreeSet::new() }
    }

    pub fn full(nvars: usize) -> Self {
        MonomialPrime { vars: (0..nvars).collect() }
    }

    pub fn vars(&self) -> &BTreeSet<usize> {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    /// Krull dimension of `R/p` in an `n`-variable polynomial ring.
    pub fn quotient_dim(&self, nvars: usize) -> i64 {
        nvars as i64 - self.vars.len() as i64
    }

    /// Ideal containment `self ⊇ other`, i.e. the generating variable set of
    /// `other` is a subset of ours.
    pub fn contains(&self, other: &MonomialPrime) -> bool {
        other.vars.is_subset(&self.vars)
    }

    pub fn to_ideal(&self, ring: &Arc<PolyRing>) -> IdealPresentation {
        IdealPresentation::new(
            ring,
            self.vars.iter().map(|&i| Polynomial::var(ring, i)).collect(),
        )
    }

    pub fn describe(&self, ring: &PolyRing) -> String {
        let names: Vec<&str> = self.vars.iter().map(|&i| ring.vars()[i].as_str()).collect();
        format!("({})", names.join(","))
    }
}

/// A finitely generated ideal, given by its generators. Zero generators are
/// dropped at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Self {
        IdealPresentation {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        IdealPresentation::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        IdealPresentation::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Ideal sum, by concatenating generators.
    pub fn sum(&self, other: &IdealPresentation) -> IdealPresentation {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        IdealPresentation::new(&self.ring, gens)
    }
}

/// An element of the free module `R^rank`, stored by coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorPoly {
    coords: Vec<Polynomial>,
}

impl VectorPoly {
    pub fn new(coords: Vec<Polynomial>) -> Self {
        VectorPoly { coords }
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        VectorPoly { coords: vec![Polynomial::zero(ring); rank] }
    }

    pub fn unit(ring: &Arc<PolyRing>, rank: usize, pos: usize) -> Self {
        let mut v = VectorPoly::zero(ring, rank);
        v.coords[pos] = Polynomial::one(ring);
        v
    }

    pub fn from_poly(p: Polynomial) -> Self {
        VectorPoly { coords: vec![p] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Polynomial {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &VectorPoly) -> VectorPoly {
        assert_eq!(self.rank(), other.rank());
        VectorPoly {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorPoly) -> VectorPoly {
        assert_eq!(self.rank(), other.rank());
        VectorPoly {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn negate(&self) -> VectorPoly {
        VectorPoly { coords: self.coords.iter().map(|p| p.negate()).collect() }
    }

    pub fn mul_term(&self, c: &crate::field::FieldElement, mono: &Monomial) -> VectorPoly {
        VectorPoly { coords: self.coords.iter().map(|p| p.mul_term(c, mono)).collect() }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> VectorPoly {
        VectorPoly { coords: self.coords.iter().map(|q| q * p).collect() }
    }

    /// Leading module term under position-over-term: the lowest position with
    /// a nonzero coordinate, together with that coordinate's leading term.
    pub fn lead(&self) -> Option<(usize, &Term)> {
        for (i, p) in self.coords.iter().enumerate() {
            if let Some(t) = p.leading_term() {
                return Some((i, t));
            }
        }
        None
    }

    fn monic(&self) -> VectorPoly {
        match self.lead() {
            None => self.clone(),
            Some((_, t)) => {
                let inv = t.coeff.inv();
                VectorPoly { coords: self.coords.iter().map(|p| p.scale(&inv)).collect() }
            }
        }
    }
}

impl fmt::Display for VectorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleGroebnerBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    elems: Vec<VectorPoly>,
}

impl ModuleGroebnerBasis {
    pub fn elems(&self) -> &[VectorPoly] {
        &self.elems
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, v: &VectorPoly) -> bool {
        module_normal_form(v, &self.elems).is_zero()
    }
}

/// Full normal form of `v` against `basis`: no term of the result is
/// divisible by a leading term of the basis.
pub fn module_normal_form(v: &VectorPoly, basis: &[VectorPoly]) -> VectorPoly {
    let rank = v.rank();
    let ring = v
        .coords()
        .first()
        .map(|p| p.ring().clone())
        .expect("rank must be positive");
    let mut remainder = VectorPoly::zero(&ring, rank);
    let mut work = v.clone();
    'outer: while let Some((pos, lt)) = work.lead() {
        let (lt_coeff, lt_mono) = (lt.coeff.clone(), lt.mono.clone());
        for g in basis {
            if let Some((gpos, glt)) = g.lead() {
                if gpos == pos && glt.mono.divides(&lt_mono) {
                    let c = lt_coeff.div(&glt.coeff);
                    let m = glt.mono.div(&lt_mono);
                    work = work.sub(&g.mul_term(&c, &m));
                    continue 'outer;
                }
            }
        }
        // irreducible leading term: move it to the remainder
        let t = Polynomial::from_terms(
            &ring,
            vec![Term { coeff: lt_coeff, mono: lt_mono }],
        );
        let mut shifted = VectorPoly::zero(&ring, rank);
        shifted.coords[pos] = t;
        remainder = remainder.add(&shifted);
        work = work.sub(&shifted);
    }
    remainder
}

/// Buchberger with the chain criterion (and, for rank one, the coprimality
/// criterion, which is unsound for module positions) followed by
/// interreduction. The result is the unique reduced basis for the fixed
/// order, with monic leading terms, sorted by leading term.
pub fn module_groebner(ring: &Arc<PolyRing>, rank: usize, gens: &[VectorPoly]) -> ModuleGroebnerBasis {
    let mut basis: Vec<VectorPoly> = Vec::new();
    for g in gens {
        assert_eq!(g.rank(), rank, "generator rank mismatch");
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }

    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let add_pairs = |queue: &mut BTreeSet<(u32, usize, usize)>, basis: &[VectorPoly], k: usize| {
        let (kpos, klt) = basis[k].lead().unwrap();
        for (i, g) in basis.iter().enumerate().take(k) {
            let (ipos, ilt) = g.lead().unwrap();
            if ipos == kpos {
                let lcm = ilt.mono.lcm(&klt.mono);
                queue.insert((lcm.total_degree(), i, k));
            }
        }
    };
    for k in 0..basis.len() {
        add_pairs(&mut queue, &basis, k);
    }

    while let Some(&(deg, i, j)) = queue.iter().next() {
        queue.remove(&(deg, i, j));
        done.insert((i, j));
        let (ipos, ilt) = basis[i].lead().unwrap();
        let (_, jlt) = basis[j].lead().unwrap();
        let (imono, jmono) = (ilt.mono.clone(), jlt.mono.clone());
        let lcm = imono.lcm(&jmono);
        if rank == 1 && imono.coprime(&jmono) {
            continue;
        }
        // chain criterion: some k with lead at the same position dividing the
        // lcm, both smaller pairs already treated
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (kpos, klt) = basis[k].lead().unwrap();
            kpos == ipos
                && klt.mono.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let ui = imono.div(&lcm);
        let uj = jmono.div(&lcm);
        let one = ring.field().one();
        let s = basis[i]
            .mul_term(&one, &ui)
            .sub(&basis[j].mul_term(&one, &uj));
        let nf = module_normal_form(&s, &basis);
        if !nf.is_zero() {
            basis.push(nf.monic());
            add_pairs(&mut queue, &basis, basis.len() - 1);
        }
    }

    // minimalize: drop elements whose lead is divisible by another's lead
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        let (apos, alt) = basis[a].lead().unwrap();
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            let (bpos, blt) = basis[b].lead().unwrap();
            if apos == bpos && blt.mono.divides(&alt.mono) {
                if blt.mono == alt.mono && b > a {
                    continue; // equal leads: keep the earlier one
                }
                keep[a] = false;
                break;
            }
        }
    }
    let minimal: Vec<VectorPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // tail-reduce each element against the others
    let mut reduced: Vec<VectorPoly> = Vec::with_capacity(minimal.len());
    for a in 0..minimal.len() {
        let others: Vec<VectorPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(b, _)| a != *b)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(module_normal_form(&minimal[a], &others).monic());
    }

    // canonical order: sort by leading term, greatest first
    reduced.sort_by(|a, b| {
        let (apos, alt) = a.lead().unwrap();
        let (bpos, blt) = b.lead().unwrap();
        apos.cmp(&bpos)
            .then_with(|| ring.order().cmp_mono(&blt.mono, &alt.mono))
    });
    ModuleGroebnerBasis { ring: ring.clone(), rank, elems: reduced }
}

/// Reduced Gröbner basis of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    /// The ideal is generated by monomials iff its reduced basis consists of
    /// single-term polynomials.
    pub fn is_monomial(&self) -> bool {
        self.polys.iter().all(|p| p.is_monomial())
    }

    /// Homogeneous (for the standard grading) iff every reduced basis element
    /// is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.polys.iter().all(|p| p.is_homogeneous())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_term().unwrap().mono.clone())
            .collect()
    }

    /// Krull dimension of `R/I` read off the initial ideal; `-1` for the
    /// unit ideal.
    pub fn quotient_dimension(&self) -> i64 {
        let supports: Vec<Vec<usize>> = self
            .lead_monomials()
            .iter()
            .map(|m| m.support())
            .collect();
        dimension_from_supports(self.ring.nvars(), &supports)
    }

    pub fn to_ideal(&self) -> IdealPresentation {
        IdealPresentation::new(&self.ring, self.polys.clone())
    }
}

pub fn groebner_basis(ideal: &IdealPresentation) -> GroebnerBasis {
    let ring = ideal.ring();
    let gens: Vec<VectorPoly> = ideal
        .gens()
        .iter()
        .map(|g| VectorPoly::from_poly(g.clone()))
        .collect();
    let module = module_groebner(ring, 1, &gens);
    GroebnerBasis {
        ring: ring.clone(),
        polys: module
            .elems()
            .iter()
            .map(|v| v.coord(0).clone())
            .collect(),
    }
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    let basis: Vec<VectorPoly> = gb
        .polys
        .iter()
        .map(|p| VectorPoly::from_poly(p.clone()))
        .collect();
    module_normal_form(&VectorPoly::from_poly(f.clone()), &basis)
        .coord(0)
        .clone()
}

/// Do two generating sets span the same ideal? Decided by comparing reduced
/// bases, which are unique for the fixed order.
pub fn same_ideal(a: &IdealPresentation, b: &IdealPresentation) -> bool {
    groebner_basis(a) == groebner_basis(b)
}

/// Independent validity check: every S-polynomial of the basis reduces to
/// zero against it. This bypasses the pair-selection criteria used during
/// the construction, so it also guards them.
pub fn buchberger_criterion_holds(gb: &GroebnerBasis) -> bool {
    let polys = gb.polys();
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            let ti = polys[i].leading_term().unwrap();
            let tj = polys[j].leading_term().unwrap();
            let lcm = ti.mono.lcm(&tj.mono);
            let ci = ti.coeff.inv();
            let cj = tj.coeff.inv();
            let s = polys[i]
                .mul_term(&ci, &ti.mono.div(&lcm))
                .checked_sub(&polys[j].mul_term(&cj, &tj.mono.div(&lcm)))
                .unwrap();
            if !normal_form(&s, gb).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Generators of a submodule of `R^r` together with its tracking basis:
/// each generator `f_i` is extended to `f_i ⊕ e_i` in `R^{r+s}`, and a
/// Gröbner basis of the extended module simultaneously answers membership,
/// expresses members in terms of the generators, and cuts out the syzygies
/// as the basis elements supported on the tracking coordinates.
#[derive(Debug, Clone)]
pub struct TrackedSubmodule {
    ring: Arc<PolyRing>,
    ambient_rank: usize,
    ngens: usize,
    gb: ModuleGroebnerBasis,
}

impl TrackedSubmodule {
    pub fn new(ring: &Arc<PolyRing>, ambient_rank: usize, gens: &[VectorPoly]) -> Self {
        let s = gens.len();
        let extended: Vec<VectorPoly> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                assert_eq!(g.rank(), ambient_rank);
                let mut coords = g.coords().to_vec();
                coords.extend((0..s).map(|j| {
                    if j == i {
                        Polynomial::one(ring)
                    } else {
                        Polynomial::zero(ring)
                    }
                }));
                VectorPoly::new(coords)
            })
            .collect();
        let gb = module_groebner(ring, ambient_rank + s, &extended);
        TrackedSubmodule { ring: ring.clone(), ambient_rank, ngens: s, gb }
    }

    /// Generators of the syzygy module of the original generators.
    pub fn syzygies(&self) -> Vec<VectorPoly> {
        self.gb
            .elems()
            .iter()
            .filter(|v| v.coords()[..self.ambient_rank].iter().all(|p| p.is_zero()))
            .map(|v| VectorPoly::new(v.coords()[self.ambient_rank..].to_vec()))
            .collect()
    }

    /// If `target` lies in the submodule, coefficients `λ` with
    /// `Σ λ_i f_i = target`.
    pub fn lift(&self, target: &VectorPoly) -> Option<Vec<Polynomial>> {
        assert_eq!(target.rank(), self.ambient_rank);
        let mut coords = target.coords().to_vec();
        coords.extend(vec![Polynomial::zero(&self.ring); self.ngens]);
        let nf = module_normal_form(&VectorPoly::new(coords), self.gb.elems());
        if nf.coords()[..self.ambient_rank].iter().any(|p| !p.is_zero()) {
            return None;
        }
        Some(
            nf.coords()[self.ambient_rank..]
                .iter()
                .map(|p| p.negate())
                .collect(),
        )
    }

    pub fn contains(&self, target: &VectorPoly) -> bool {
        self.lift(target).is_some()
    }
}

/// Columns of the result generate `{v : M v = 0}`.
pub fn syzygies(m: &PolyMatrix) -> PolyMatrix {
    let ring = m.ring();
    if m.rows() == 0 {
        // every vector is in the kernel
        return PolyMatrix::identity(ring, m.cols());
    }
    let cols: Vec<VectorPoly> = (0..m.cols()).map(|j| VectorPoly::new(m.col(j))).collect();
    let tracked = TrackedSubmodule::new(ring, m.rows(), &cols);
    let syz = tracked.syzygies();
    PolyMatrix::from_cols(
        ring,
        m.cols(),
        syz.into_iter().map(|v| v.coords().to_vec()).collect(),
    )
    .expect("syzygy columns have generator count as rank")
}

/// Krull dimension of `R/I`, computed as the largest cardinality of a set of
/// variables independent modulo the initial ideal. The unit ideal gets the
/// convention `-1`.
pub fn ideal_dimension(ideal: &IdealPresentation) -> i64 {
    let gb = groebner_basis(ideal);
    let supports: Vec<Vec<usize>> = gb
        .lead_monomials()
        .iter()
        .map(|m| m.support())
        .collect();
    dimension_from_supports(ideal.ring().nvars(), &supports)
}

/// Max size of a variable subset containing no generator support; `-1` when
/// a generator is supported on the empty set (a unit).
pub fn dimension_from_supports(nvars: usize, supports: &[Vec<usize>]) -> i64 {
    assert!(nvars <= 24, "variable subset enumeration limited to 24 variables");
    let masks: Vec<u32> = supports
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &i| m | (1 << i)))
        .collect();
    let mut best: i64 = -1;
    for subset in 0..(1u32 << nvars) {
        if (subset.count_ones() as i64) <= best {
            continue;
        }
        if masks.iter().all(|&m| m & !subset != 0) {
            best = subset.count_ones() as i64;
        }
    }
    best
}

/// Minimal primes of a monomial ideal: the inclusion-minimal variable
/// subsets meeting every generator's support. The zero ideal yields the
/// zero prime; the unit ideal has empty spectrum.
pub fn minimal_primes_monomial(ideal: &IdealPresentation) -> Result<Vec<MonomialPrime>> {
    let mut supports: Vec<BTreeSet<usize>> = Vec::new();
    for g in ideal.gens() {
        if !g.is_monomial() {
            return Err(Error::unsupported(format!(
                "minimal primes need monomial generators, got {g}"
            )));
        }
        let sup: BTreeSet<usize> = g.terms()[0].mono.support().into_iter().collect();
        if sup.is_empty() {
            return Ok(Vec::new()); // unit ideal
        }
        supports.push(sup);
    }
    if supports.is_empty() {
        return Ok(vec![MonomialPrime::zero()]);
    }
    // drop supports that contain another support; they are covered for free
    supports.sort_by_key(|s| s.len());
    let mut essential: Vec<BTreeSet<usize>> = Vec::new();
    for s in supports {
        if !essential.iter().any(|t| t.is_subset(&s)) {
            essential.push(s);
        }
    }

    let mut covers: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut current: BTreeSet<usize> = BTreeSet::new();
    branch_covers(&essential, &mut current, &mut covers);
    let mut minimal: Vec<BTreeSet<usize>> = covers
        .iter()
        .filter(|c| !covers.iter().any(|d| d.len() < c.len() && d.is_subset(c)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().collect::<Vec<_>>().cmp(&b.iter().collect::<Vec<_>>()))
    });
    Ok(minimal.into_iter().map(|vars| MonomialPrime { vars }).collect())
}

fn branch_covers(
    supports: &[BTreeSet<usize>],
    current: &mut BTreeSet<usize>,
    out: &mut BTreeSet<BTreeSet<usize>>,
) {
    match supports
        .iter()
        .find(|s| s.iter().all(|v| !current.contains(v)))
    {
        None => {
            out.insert(current.clone());
        }
        Some(uncovered) => {
            for &v in uncovered {
                current.insert(v);
                branch_covers(supports, current, out);
                current.remove(&v);
            }
        }
    }
}
