//! The Koszul complex on a sequence as a DG algebra: exterior basis indexed
//! by subsets, wedge product with its sign rule, the differential, a
//! randomized axiom checker and the export to a plain free complex.

use crate::complex::{FreeComplex, ModulePresentation};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{PolyRing, Polynomial};
use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exterior basis elements are indexed by subsets of `{0..s-1}` as bit
/// masks; within a homological degree the fixed basis is the size-`k`
/// subsets in lexicographic order of their index tuples.
pub type SubsetMask = u32;

#[derive(Debug, PartialEq, Eq)]
pub struct KoszulAlgebra {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
}

impl KoszulAlgebra {
    /// Sequence entries must lie in the graded maximal ideal (zero constant
    /// term) and share the ring.
    pub fn new(ring: &Arc<PolyRing>, elements: Vec<Polynomial>) -> Result<Arc<Self>> {
        if elements.len() > 30 {
            return Err(Error::unsupported("Koszul sequences limited to 30 entries"));
        }
        for (j, f) in elements.iter().enumerate() {
            if !f.same_ring(&Polynomial::zero(ring)) {
                return Err(Error::RingMismatch(format!("sequence entry {} off-ring", j + 1)));
            }
            if !f.constant_term().is_zero() {
                return Err(Error::invalid(format!(
                    "sequence entry {f} has nonzero constant term; it must lie in the graded maximal ideal"
                )));
            }
        }
        Ok(Arc::new(KoszulAlgebra { ring: ring.clone(), elements }))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// Size-`k` subsets as masks, tuple-lexicographic.
    pub fn basis_of_degree(&self, k: usize) -> Vec<SubsetMask> {
        (0..self.len())
            .combinations(k)
            .map(|combo| combo.into_iter().fold(0u32, |m, i| m | (1 << i)))
            .collect()
    }

    /// The ideal generated by the sequence, i.e. `im ∂_1`.
    pub fn sequence_ideal(&self) -> crate::groebner::IdealPresentation {
        crate::groebner::IdealPresentation::new(&self.ring, self.elements.clone())
    }

    /// `H_0 = R/(x)` as a cyclic presentation.
    pub fn h0_presentation(&self) -> ModulePresentation {
        ModulePresentation::cyclic(&self.ring, &self.elements)
    }

    /// Underlying free complex: ranks `C(s,k)`, differential matrices in the
    /// fixed subset basis.
    pub fn to_free_complex(self: &Arc<Self>) -> FreeComplex {
        let s = self.len();
        let ranks: Vec<usize> = (0..=s).map(|k| self.basis_of_degree(k).len()).collect();
        let mut diffs = Vec::new();
        for k in 1..=s {
            let rows_basis = self.basis_of_degree(k - 1);
            let cols_basis = self.basis_of_degree(k);
            let mut m = PolyMatrix::zero(&self.ring, rows_basis.len(), cols_basis.len());
            for (j, &mask) in cols_basis.iter().enumerate() {
                let d = KoszulElement::basis(self, mask).differential();
                for (row_mask, coeff) in d.terms {
                    let i = rows_basis.iter().position(|&b| b == row_mask).unwrap();
                    m.set(i, j, coeff);
                }
            }
            diffs.push(m);
        }
        FreeComplex::new(&self.ring, 0, ranks, diffs).expect("shapes are consistent")
    }
}

fn mask_indices(mask: SubsetMask) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Parity of the merge: pairs `(i, j)` with `i ∈ left`, `j ∈ right`,
/// `i > j`.
fn merge_sign(left: SubsetMask, right: SubsetMask) -> i32 {
    let mut inversions = 0;
    for i in mask_indices(left) {
        let below = right & ((1u32 << i) - 1);
        inversions += below.count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of the Koszul algebra: polynomial coefficients on the subset
/// basis, zero coefficients omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulElement {
    algebra: Arc<KoszulAlgebra>,
    terms: BTreeMap<SubsetMask, Polynomial>,
}

impl KoszulElement {
    pub fn zero(algebra: &Arc<KoszulAlgebra>) -> Self {
        KoszulElement { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    pub fn one(algebra: &Arc<KoszulAlgebra>) -> Self {
        KoszulElement::scalar(algebra, Polynomial::one(algebra.ring()))
    }

    pub fn scalar(algebra: &Arc<KoszulAlgebra>, p: Polynomial) -> Self {
        KoszulElement::from_terms(algebra, [(0, p)])
    }

    pub fn basis(algebra: &Arc<KoszulAlgebra>, mask: SubsetMask) -> Self {
        assert!(mask < (1u32 << algebra.len()), "mask outside the exterior basis");
        KoszulElement::from_terms(algebra, [(mask, Polynomial::one(algebra.ring()))])
    }

    /// `e_i`, zero-based.
    pub fn generator(algebra: &Arc<KoszulAlgebra>, i: usize) -> Self {
        assert!(i < algebra.len());
        KoszulElement::basis(algebra, 1 << i)
    }

    pub fn from_terms(
        algebra: &Arc<KoszulAlgebra>,
        terms: impl IntoIterator<Item = (SubsetMask, Polynomial)>,
    ) -> Self {
        let mut map: BTreeMap<SubsetMask, Polynomial> = BTreeMap::new();
        for (mask, p) in terms {
            if p.is_zero() {
                continue;
            }
            match map.remove(&mask) {
                None => {
                    map.insert(mask, p);
                }
                Some(q) => {
                    let sum = &q + &p;
                    if !sum.is_zero() {
                        map.insert(mask, sum);
                    }
                }
            }
        }
        KoszulElement { algebra: algebra.clone(), terms: map }
    }

    pub fn algebra(&self) -> &Arc<KoszulAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<SubsetMask, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_some() || self.is_zero()
    }

    /// Homological degree when homogeneous; `None` for zero or mixed.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.count_ones());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &KoszulElement) -> KoszulElement {
        assert_eq!(self.algebra, other.algebra, "mixed algebras");
        let mut terms = self.terms.clone();
        for (mask, p) in &other.terms {
            let entry = terms.remove(mask);
            let sum = match entry {
                None => p.clone(),
                Some(q) => &q + p,
            };
            if !sum.is_zero() {
                terms.insert(*mask, sum);
            }
        }
        KoszulElement { algebra: self.algebra.clone(), terms }
    }

    pub fn sub(&self, other: &KoszulElement) -> KoszulElement {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> KoszulElement {
        KoszulElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, p)| (*m, p.negate())).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> KoszulElement {
        KoszulElement::from_terms(
            &self.algebra,
            self.terms.iter().map(|(m, q)| (*m, q * p)),
        )
    }

    /// Wedge product: `e_S ∧ e_T = sign(S,T) e_{S∪T}`, zero on overlap,
    /// extended bilinearly.
    pub fn wedge(&self, other: &KoszulElement) -> Result<KoszulElement> {
        if self.algebra != other.algebra {
            return Err(Error::RingMismatch("wedge of elements from different algebras".into()));
        }
        let mut acc: Vec<(SubsetMask, Polynomial)> = Vec::new();
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(*ma, *mb);
                let coeff = pa * pb;
                acc.push((ma | mb, if sign < 0 { coeff.negate() } else { coeff }));
            }
        }
        Ok(KoszulElement::from_terms(&self.algebra, acc))
    }

    /// Koszul differential, `R`-linear with
    /// `∂ e_{i_1<..<i_k} = Σ_j (-1)^{j+1} x_{i_j} e_{S\{i_j}}`.
    pub fn differential(&self) -> KoszulElement {
        let mut acc: Vec<(SubsetMask, Polynomial)> = Vec::new();
        for (mask, coeff) in &self.terms {
            for (j, i) in mask_indices(*mask).into_iter().enumerate() {
                let x = &self.algebra.elements[i];
                let signed = if j % 2 == 0 { coeff * x } else { (coeff * x).negate() };
                acc.push((mask & !(1 << i), signed));
            }
        }
        KoszulElement::from_terms(&self.algebra, acc)
    }

    /// Coordinates in the fixed basis of one homological degree; the element
    /// must be homogeneous of that degree (or zero).
    pub fn to_vector(&self, degree: usize) -> crate::groebner::VectorPoly {
        let basis = self.algebra.basis_of_degree(degree);
        let ring = self.algebra.ring();
        let coords = basis
            .iter()
            .map(|mask| self.terms.get(mask).cloned().unwrap_or_else(|| Polynomial::zero(ring)))
            .collect();
        crate::groebner::VectorPoly::new(coords)
    }
}

impl fmt::Display for KoszulElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *mask == 0 {
                write!(f, "{p}")?;
            } else {
                let idx: Vec<String> =
                    mask_indices(*mask).iter().map(|i| (i + 1).to_string()).collect();
                if p.is_one() {
                    write!(f, "e[{}]", idx.join(","))?;
                } else {
                    write!(f, "({p})*e[{}]", idx.join(","))?;
                }
            }
        }
        Ok(())
    }
}

/// Outcome of randomized DG-axiom checking.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<AxiomFailure>,
}

#[derive(Debug, Clone)]
pub struct AxiomFailure {
    pub law: String,
    pub detail: String,
}

/// Verify the DG-algebra laws on random homogeneous samples: associativity,
/// distributivity, unitality, graded commutativity, vanishing odd squares
/// and the Leibniz rule.
pub fn dg_axiom_check(algebra: &Arc<KoszulAlgebra>, samples: usize, seed: u64) -> AxiomReport {
    axiom_check_with(algebra, samples, seed, &|a, b| a.wedge(b).expect("same algebra"))
}

/// Same laws, with the product supplied by the caller. Lets the tests
/// exercise the checker against a broken product.
pub fn axiom_check_with(
    algebra: &Arc<KoszulAlgebra>,
    samples: usize,
    seed: u64,
    mul: &dyn Fn(&KoszulElement, &KoszulElement) -> KoszulElement,
) -> AxiomReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = 0;
    let mut failures = Vec::new();
    let record = |law: &str, ok: bool, detail: String, failures: &mut Vec<AxiomFailure>| {
        if !ok {
            failures.push(AxiomFailure { law: law.to_string(), detail });
        }
    };
    for _ in 0..samples {
        let a = random_homogeneous(algebra, &mut rng);
        let b = random_homogeneous(algebra, &mut rng);
        let c = random_homogeneous(algebra, &mut rng);
        let da = a.degree().unwrap_or(0);
        let db = b.degree().unwrap_or(0);

        checks += 1;
        let assoc = mul(&mul(&a, &b), &c).sub(&mul(&a, &mul(&b, &c)));
        record("associative", assoc.is_zero(), format!("a={a}, b={b}, c={c}"), &mut failures);

        checks += 1;
        let b2 = random_homogeneous_of_degree(algebra, &mut rng, db);
        let dist = mul(&b.add(&b2), &c).sub(&mul(&b, &c).add(&mul(&b2, &c)));
        record("distributive", dist.is_zero(), format!("b={b}, b'={b2}, c={c}"), &mut failures);

        checks += 1;
        let unit = mul(&KoszulElement::one(algebra), &a).sub(&a);
        record("unital", unit.is_zero(), format!("a={a}"), &mut failures);

        checks += 1;
        let mut ab = mul(&a, &b);
        if (da * db) % 2 == 1 {
            ab = ab.negate();
        }
        let comm = mul(&b, &a).sub(&ab);
        record(
            "graded-commutative",
            comm.is_zero(),
            format!("a={a} (|a|={da}), b={b} (|b|={db})"),
            &mut failures,
        );

        if da % 2 == 1 {
            checks += 1;
            let sq = mul(&a, &a);
            record("odd-square-zero", sq.is_zero(), format!("a={a}"), &mut failures);
        }

        checks += 1;
        let mut leibniz_rhs = a.differential();
        leibniz_rhs = mul(&leibniz_rhs, &b);
        let mut second = mul(&a, &b.differential());
        if da % 2 == 1 {
            second = second.negate();
        }
        leibniz_rhs = leibniz_rhs.add(&second);
        let leibniz = mul(&a, &b).differential().sub(&leibniz_rhs);
        record("leibniz", leibniz.is_zero(), format!("a={a}, b={b}"), &mut failures);
    }
    AxiomReport { passed: failures.is_empty(), checks, failures }
}

pub(crate) fn random_poly(ring: &Arc<PolyRing>, rng: &mut StdRng) -> Polynomial {
    let nterms = rng.gen_range(1..=2);
    let mut acc = Polynomial::zero(ring);
    for _ in 0..nterms {
        let c = loop {
            let v = rng.gen_range(-3i64..=3);
            if v != 0 {
                break v;
            }
        };
        let mut mono = crate::monomial::Monomial::one(ring.nvars());
        if ring.nvars() > 0 {
            for _ in 0..rng.gen_range(0..=2) {
                mono.0[rng.gen_range(0..ring.nvars())] += 1;
            }
        }
        let term = Polynomial::from_int(ring, c)
            .mul_term(&ring.field().one(), &mono);
        acc = &acc + &term;
    }
    acc
}

pub(crate) fn random_homogeneous(algebra: &Arc<KoszulAlgebra>, rng: &mut StdRng) -> KoszulElement {
    let degree = rng.gen_range(0..=algebra.len() as u32);
    random_homogeneous_of_degree(algebra, rng, degree)
}

pub(crate) fn random_homogeneous_of_degree(
    algebra: &Arc<KoszulAlgebra>,
    rng: &mut StdRng,
    degree: u32,
) -> KoszulElement {
    let basis = algebra.basis_of_degree(degree as usize);
    if basis.is_empty() {
        return KoszulElement::zero(algebra);
    }
    let nterms = rng.gen_range(1..=2.min(basis.len()));
    let mut acc = KoszulElement::zero(algebra);
    for _ in 0..nterms {
        let mask = basis[rng.gen_range(0..basis.len())];
        let coeff = random_poly(algebra.ring(), rng);
        acc = acc.add(&KoszulElement::from_terms(algebra, [(mask, coeff)]));
    }
    acc
}
