//! DG ideals, the contraction of ideals of `H_0` to DG ideals, DG primality
//! for the supported classes, and DG Krull dimension.
//!
//! Primality is decided for Koszul algebras with monomial degree-zero data
//! (where a prime must contain the whole positive part and a monomial ideal
//! is prime exactly when its minimal generators are distinct variables) and
//! for the trivial-differential one-generator algebra (whose graded primes
//! are the zero ideal and the irrelevant ideal). Everything else is
//! reported as unsupported rather than guessed.

use crate::error::{Error, Result};
use crate::field::FieldKind;
use crate::groebner::{
    groebner_basis, ideal_dimension, module_groebner, GroebnerBasis, IdealPresentation,
    MonomialPrime,
};
use crate::koszul::{KoszulAlgebra, KoszulElement};
use crate::poly::Polynomial;
use std::sync::Arc;

/// `k[X]` with one generator of even degree `d ≥ 2` and zero differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialDiffAlgebra {
    field: FieldKind,
    generator: String,
    degree: u32,
}

impl TrivialDiffAlgebra {
    pub fn new(field: FieldKind, generator: impl Into<String>, degree: u32) -> Result<Arc<Self>> {
        field.validate()?;
        if degree < 2 || !degree.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "generator degree must be even and at least 2, got {degree}"
            )));
        }
        Ok(Arc::new(TrivialDiffAlgebra { field, generator: generator.into(), degree }))
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn generator_degree(&self) -> u32 {
        self.degree
    }

    /// The graded primes are `0 ⊂ (X)`, so the dimension is 1.
    pub fn dgdim(&self) -> i64 {
        1
    }

    /// `H_0 = k`.
    pub fn h0_dim(&self) -> i64 {
        0
    }
}

/// Graded ideals of the trivial-differential algebra that the artifact
/// works with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialDiffIdeal {
    Zero,
    /// `(X^k)`; `k = 1` is the irrelevant ideal.
    GeneratorPower(u32),
    Unit,
}

/// A DG ideal of a Koszul algebra, given by per-degree generator lists.
/// The degree-`d` component is the `R`-span of its generators; closure
/// under the differential and under multiplication is a property checked by
/// [`KoszulDgIdeal::is_dg_ideal`], not an invariant of the representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulDgIdeal {
    algebra: Arc<KoszulAlgebra>,
    degree0: Vec<Polynomial>,
    higher: Vec<Vec<KoszulElement>>, // higher[d-1] holds the degree-d generators
}

impl KoszulDgIdeal {
    pub fn new(
        algebra: &Arc<KoszulAlgebra>,
        degree0: Vec<Polynomial>,
        higher: Vec<Vec<KoszulElement>>,
    ) -> Result<Self> {
        if higher.len() > algebra.len() {
            return Err(Error::invalid("generator lists beyond the top degree"));
        }
        for (d, gens) in higher.iter().enumerate() {
            for g in gens {
                if g.algebra() != algebra {
                    return Err(Error::RingMismatch("generator from another algebra".into()));
                }
                if !g.is_zero() && g.degree() != Some(d as u32 + 1) {
                    return Err(Error::invalid(format!(
                        "generator {g} is not homogeneous of degree {}",
                        d + 1
                    )));
                }
            }
        }
        Ok(KoszulDgIdeal {
            algebra: algebra.clone(),
            degree0: degree0.into_iter().filter(|p| !p.is_zero()).collect(),
            higher,
        })
    }

    /// `dgcontr(I)`: degree zero is the preimage `Ĩ = I + im ∂_1`, every
    /// positive degree is all of the algebra.
    pub fn dgcontr(algebra: &Arc<KoszulAlgebra>, h0_ideal: &[Polynomial]) -> Self {
        let mut degree0 = algebra.elements().to_vec();
        degree0.extend(h0_ideal.iter().cloned());
        let higher = (1..=algebra.len())
            .map(|d| {
                algebra
                    .basis_of_degree(d)
                    .into_iter()
                    .map(|mask| KoszulElement::basis(algebra, mask))
                    .collect()
            })
            .collect();
        KoszulDgIdeal::new(algebra, degree0, higher).expect("construction is well-formed")
    }

    pub fn algebra(&self) -> &Arc<KoszulAlgebra> {
        &self.algebra
    }

    pub fn degree0_gens(&self) -> &[Polynomial] {
        &self.degree0
    }

    pub fn degree0_ideal(&self) -> IdealPresentation {
        IdealPresentation::new(self.algebra.ring(), self.degree0.clone())
    }

    pub fn degree_gens(&self, d: usize) -> &[KoszulElement] {
        static EMPTY: &[KoszulElement] = &[];
        if d == 0 || d > self.higher.len() {
            EMPTY
        } else {
            &self.higher[d - 1]
        }
    }

    fn component_basis(&self, d: usize) -> crate::groebner::ModuleGroebnerBasis {
        let ring = self.algebra.ring();
        let rank = self.algebra.basis_of_degree(d).len();
        let gens: Vec<crate::groebner::VectorPoly> = self
            .degree_gens(d)
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.to_vector(d))
            .collect();
        module_groebner(ring, rank, &gens)
    }

    fn contains_in_degree(&self, elem: &KoszulElement, d: usize) -> bool {
        if elem.is_zero() {
            return true;
        }
        if d == 0 {
            let gb = groebner_basis(&self.degree0_ideal());
            let scalar = elem.terms().get(&0).cloned().unwrap_or_else(|| {
                Polynomial::zero(self.algebra.ring())
            });
            return gb.contains(&scalar);
        }
        self.component_basis(d).contains(&elem.to_vector(d))
    }

    /// Closure under the differential (each `∂ g` lands in the span one
    /// degree down) and under multiplication by the algebra generators.
    pub fn is_dg_ideal(&self) -> bool {
        let s = self.algebra.len();
        // differential closure
        for d in 1..=s {
            for g in self.degree_gens(d) {
                if !self.contains_in_degree(&g.differential(), d - 1) {
                    return false;
                }
            }
        }
        // multiplication closure by the degree-one generators; multiplication
        // by A_0 is automatic since components are R-spans
        for d in 0..=s {
            let gens: Vec<KoszulElement> = if d == 0 {
                self.degree0
                    .iter()
                    .map(|p| KoszulElement::scalar(&self.algebra, p.clone()))
                    .collect()
            } else {
                self.degree_gens(d).to_vec()
            };
            for g in &gens {
                for i in 0..s {
                    let product = KoszulElement::generator(&self.algebra, i)
                        .wedge(g)
                        .expect("same algebra");
                    if product.is_zero() {
                        continue;
                    }
                    if !self.contains_in_degree(&product, d + 1) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Does the degree-`d` component exhaust `A_d`?
    fn component_is_full(&self, d: usize) -> bool {
        self.algebra
            .basis_of_degree(d)
            .into_iter()
            .all(|mask| self.contains_in_degree(&KoszulElement::basis(&self.algebra, mask), d))
    }

    /// DG primality for monomial degree-zero data. In the exterior algebra
    /// every positive-degree element is nilpotent, so a prime must contain
    /// all of the positive part, and primality reduces to the degree-zero
    /// ideal being generated by variables.
    pub fn is_dg_prime(&self) -> Result<bool> {
        if !self.is_dg_ideal() {
            return Err(Error::invalid("not a DG ideal"));
        }
        let gb = groebner_basis(&self.degree0_ideal());
        if !gb.is_monomial() {
            return Err(Error::unsupported(
                "DG primality is only decided for monomial degree-zero data",
            ));
        }
        for d in 1..=self.algebra.len() {
            if !self.component_is_full(d) {
                return Ok(false);
            }
        }
        Ok(monomial_basis_is_prime(&gb))
    }

    /// Containment of DG ideals, degreewise.
    pub fn contains(&self, other: &KoszulDgIdeal) -> bool {
        let gb = groebner_basis(&self.degree0_ideal());
        if !other.degree0.iter().all(|p| gb.contains(p)) {
            return false;
        }
        for d in 1..=self.algebra.len() {
            for g in other.degree_gens(d) {
                if !self.contains_in_degree(g, d) {
                    return false;
                }
            }
        }
        true
    }

    /// Degree-zero generators of the reduced basis, for canonical reports.
    pub fn canonical_degree0(&self) -> Vec<String> {
        groebner_basis(&self.degree0_ideal())
            .polys()
            .iter()
            .map(|p| p.to_string())
            .collect()
    }
}

/// A monomial ideal (given by its reduced basis) is prime iff its minimal
/// generators are distinct single variables.
fn monomial_basis_is_prime(gb: &GroebnerBasis) -> bool {
    if gb.is_unit_ideal() {
        return false;
    }
    gb.polys().iter().all(|p| {
        let mono = &p.terms()[0].mono;
        mono.total_degree() == 1
    })
}

/// The two supported DG algebra classes.
#[derive(Debug, Clone)]
pub enum DgAlgebra {
    Koszul(Arc<KoszulAlgebra>),
    TrivialDiff(Arc<TrivialDiffAlgebra>),
}

/// A DG ideal of either supported algebra.
#[derive(Debug, Clone)]
pub enum DgIdeal {
    Koszul(KoszulDgIdeal),
    TrivialDiff { algebra: Arc<TrivialDiffAlgebra>, ideal: TrivialDiffIdeal },
}

impl DgIdeal {
    pub fn is_dg_ideal(&self) -> bool {
        match self {
            DgIdeal::Koszul(j) => j.is_dg_ideal(),
            // the differential vanishes and powers of the generator are
            // closed under multiplication
            DgIdeal::TrivialDiff { .. } => true,
        }
    }

    pub fn is_dg_prime(&self) -> Result<bool> {
        match self {
            DgIdeal::Koszul(j) => j.is_dg_prime(),
            DgIdeal::TrivialDiff { ideal, .. } => Ok(matches!(
                ideal,
                TrivialDiffIdeal::Zero | TrivialDiffIdeal::GeneratorPower(1)
            )),
        }
    }

    /// Degree-zero generators in canonical order, for reports.
    pub fn describe_degree0(&self) -> Vec<String> {
        match self {
            DgIdeal::Koszul(j) => j.canonical_degree0(),
            DgIdeal::TrivialDiff { algebra, ideal } => match ideal {
                TrivialDiffIdeal::Zero => vec![],
                TrivialDiffIdeal::GeneratorPower(k) => {
                    if *k == 1 {
                        vec![algebra.generator().to_string()]
                    } else {
                        vec![format!("{}^{k}", algebra.generator())]
                    }
                }
                TrivialDiffIdeal::Unit => vec!["1".to_string()],
            },
        }
    }
}

impl DgAlgebra {
    /// DG Krull dimension. For a Koszul algebra this is `dim R/(x)`; for
    /// the trivial-differential algebra the chain `0 ⊂ (X)` gives 1.
    pub fn dgdim(&self) -> i64 {
        match self {
            DgAlgebra::Koszul(a) => ideal_dimension(&a.sequence_ideal()),
            DgAlgebra::TrivialDiff(a) => a.dgdim(),
        }
    }

    /// Krull dimension of `H_0`.
    pub fn h0_dim(&self) -> i64 {
        match self {
            DgAlgebra::Koszul(a) => ideal_dimension(&a.sequence_ideal()),
            DgAlgebra::TrivialDiff(a) => a.h0_dim(),
        }
    }

    /// All DG primes with monomial degree-zero data, in canonical order
    /// (by height, then by generating variables). For a Koszul algebra on a
    /// monomial sequence this is the complete DG spectrum via contraction
    /// from `Spec H_0`; non-monomial sequences are unsupported.
    pub fn dg_spec(&self) -> Result<Vec<DgIdeal>> {
        match self {
            DgAlgebra::TrivialDiff(a) => Ok(vec![
                DgIdeal::TrivialDiff { algebra: a.clone(), ideal: TrivialDiffIdeal::Zero },
                DgIdeal::TrivialDiff {
                    algebra: a.clone(),
                    ideal: TrivialDiffIdeal::GeneratorPower(1),
                },
            ]),
            DgAlgebra::Koszul(a) => {
                let primes = monomial_primes_containing(a)?;
                Ok(primes
                    .into_iter()
                    .map(|p| {
                        let gens: Vec<Polynomial> = p
                            .vars()
                            .iter()
                            .map(|&i| Polynomial::var(a.ring(), i))
                            .collect();
                        DgIdeal::Koszul(KoszulDgIdeal::dgcontr(a, &gens))
                    })
                    .collect())
            }
        }
    }
}

/// Monomial primes of `R` containing the sequence ideal: the variable
/// subsets covering every generator's support, sorted by height then by
/// variables.
pub fn monomial_primes_containing(a: &Arc<KoszulAlgebra>) -> Result<Vec<MonomialPrime>> {
    let n = a.ring().nvars();
    if n > 24 {
        return Err(Error::unsupported("enumeration limited to 24 variables"));
    }
    let mut supports = Vec::new();
    for g in a.elements() {
        if !g.is_monomial() {
            return Err(Error::unsupported(format!(
                "DG spectrum enumeration needs a monomial sequence, got {g}"
            )));
        }
        supports.push(g.terms()[0].mono.support());
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let covers = supports
            .iter()
            .all(|s| s.iter().any(|&v| mask & (1 << v) != 0));
        if covers {
            out.push(MonomialPrime::new((0..n).filter(|&i| mask & (1 << i) != 0)));
        }
    }
    out.sort_by(|a, b| {
        a.height()
            .cmp(&b.height())
            .then_with(|| a.vars().cmp(b.vars()))
    });
    Ok(out)
}
