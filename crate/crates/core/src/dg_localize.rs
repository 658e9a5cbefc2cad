//! DG localization of a Koszul algebra at a multiplicatively closed set:
//! the fraction equivalence with its witness search, the quotient-rule
//! differential, and the property suite the CLI exposes as `localize-check`.
//!
//! Equality of fractions is never structural; every assertion goes through
//! [`loc_equiv`], which returns an explicit witness, a proven `No`, or
//! `Unknown` when the bounded closure cannot settle the question.

use crate::error::{Error, Result};
use crate::koszul::{
    random_homogeneous, random_homogeneous_of_degree, KoszulAlgebra, KoszulElement,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::sync::Arc;

/// A multiplicatively closed subset, described by homogeneous generators
/// (1 is adjoined if missing). The closure is materialized up to words of
/// the configured length at construction; membership beyond the bound is
/// never assumed.
#[derive(Debug, Clone)]
pub struct MultiplicativeSet {
    algebra: Arc<KoszulAlgebra>,
    generators: Vec<KoszulElement>,
    closure_bound: usize,
    closure: Vec<KoszulElement>,
}

pub const DEFAULT_CLOSURE_BOUND: usize = 4;

impl MultiplicativeSet {
    pub fn new(
        algebra: &Arc<KoszulAlgebra>,
        mut generators: Vec<KoszulElement>,
        closure_bound: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.algebra() != algebra {
                return Err(Error::RingMismatch("generator from another algebra".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::invalid(format!(
                    "multiplicative set generators must be homogeneous, got {g}"
                )));
            }
        }
        let one = KoszulElement::one(algebra);
        if !generators.contains(&one) {
            generators.insert(0, one.clone());
        }
        let mut closure: Vec<KoszulElement> = vec![one];
        let mut frontier = closure.clone();
        for _ in 0..closure_bound {
            let mut next = Vec::new();
            for w in &frontier {
                for g in &generators {
                    let prod = w.wedge(g)?;
                    if !closure.contains(&prod) {
                        closure.push(prod.clone());
                        next.push(prod);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(MultiplicativeSet {
            algebra: algebra.clone(),
            generators,
            closure_bound,
            closure,
        })
    }

    pub fn algebra(&self) -> &Arc<KoszulAlgebra> {
        &self.algebra
    }

    pub fn generators(&self) -> &[KoszulElement] {
        &self.generators
    }

    pub fn closure_bound(&self) -> usize {
        self.closure_bound
    }

    /// Products of generators up to the word-length bound, deduplicated,
    /// in deterministic construction order. May contain zero.
    pub fn closure(&self) -> &[KoszulElement] {
        &self.closure
    }

    /// All generators sit in degree zero, so the full closure consists of
    /// nonzero polynomials.
    pub fn contained_in_degree_zero(&self) -> bool {
        self.generators
            .iter()
            .all(|g| !g.is_zero() && g.degree() == Some(0))
    }

    /// An odd-degree generator makes every fraction equivalent to zero.
    pub fn has_odd_generator(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.degree().is_some_and(|d| d % 2 == 1))
    }

    fn nonzero_closure(&self) -> Vec<&KoszulElement> {
        self.closure.iter().filter(|w| !w.is_zero()).collect()
    }
}

/// `m/u` with homogeneous denominator; the degree is `|m| - |u|` and is
/// `None` for a zero numerator (a wildcard in degree comparisons).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    numerator: KoszulElement,
    denominator: KoszulElement,
}

impl Fraction {
    pub fn new(numerator: KoszulElement, denominator: KoszulElement) -> Result<Self> {
        if numerator.algebra() != denominator.algebra() {
            return Err(Error::RingMismatch("fraction parts from different algebras".into()));
        }
        if !denominator.is_homogeneous() {
            return Err(Error::invalid(format!(
                "denominator must be homogeneous, got {denominator}"
            )));
        }
        Ok(Fraction { numerator, denominator })
    }

    pub fn from_element(e: KoszulElement) -> Self {
        let one = KoszulElement::one(e.algebra());
        Fraction { numerator: e, denominator: one }
    }

    pub fn zero(algebra: &Arc<KoszulAlgebra>) -> Self {
        Fraction::from_element(KoszulElement::zero(algebra))
    }

    pub fn numerator(&self) -> &KoszulElement {
        &self.numerator
    }

    pub fn denominator(&self) -> &KoszulElement {
        &self.denominator
    }

    pub fn degree(&self) -> Option<i64> {
        let n = self.numerator.degree()? as i64;
        let d = self.denominator.degree()? as i64;
        Some(n - d)
    }

    pub fn negate(&self) -> Fraction {
        Fraction { numerator: self.numerator.negate(), denominator: self.denominator.clone() }
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivVerdict {
    Yes(KoszulElement),
    No,
    Unknown,
}

impl EquivVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, EquivVerdict::Yes(_))
    }
}

fn parity(e: &KoszulElement) -> u32 {
    e.degree().map_or(0, |d| d % 2)
}

/// Decide `(m,u) ~ (n,v)`: a witness `w ∈ U` with
/// `w(un - (-1)^{|u||v|} vm) = 0`. `No` is only returned when the closure
/// is provably complete for the question (all generators in degree zero
/// over a domain); otherwise an exhausted search answers `Unknown`.
pub fn loc_equiv(a: &Fraction, b: &Fraction, u: &MultiplicativeSet) -> Result<EquivVerdict> {
    if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
        if da != db {
            return Ok(EquivVerdict::No);
        }
    }
    let sign_flip = parity(&a.denominator) * parity(&b.denominator) % 2 == 1;
    let un = a.denominator.wedge(&b.numerator)?;
    let vm = b.denominator.wedge(&a.numerator)?;
    let cross = if sign_flip { un.add(&vm) } else { un.sub(&vm) };
    if cross.is_zero() {
        return Ok(EquivVerdict::Yes(KoszulElement::one(&u.algebra().clone())));
    }
    for w in u.closure() {
        if w.wedge(&cross)?.is_zero() {
            return Ok(EquivVerdict::Yes(w.clone()));
        }
    }
    if u.contained_in_degree_zero() {
        // every element of the full closure is a nonzero polynomial and the
        // base ring is a domain, so no witness can exist
        return Ok(EquivVerdict::No);
    }
    Ok(EquivVerdict::Unknown)
}

/// Quotient rule: `∂(m/u) = (u ∂m - ∂(u) m) / u²`.
pub fn loc_differential(f: &Fraction) -> Result<Fraction> {
    let u = &f.denominator;
    let m = &f.numerator;
    let num = u.wedge(&m.differential())?.sub(&u.differential().wedge(m)?);
    let den = u.wedge(u)?;
    Fraction::new(num, den)
}

/// `m/u + m'/u' = (u m' + (-1)^{|u||u'|} u' m) / (u u')`; degrees must
/// agree.
pub fn loc_add(a: &Fraction, b: &Fraction) -> Result<Fraction> {
    if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
        if da != db {
            return Err(Error::invalid(format!(
                "adding fractions of degrees {da} and {db}"
            )));
        }
    }
    let first = a.denominator.wedge(&b.numerator)?;
    let mut second = b.denominator.wedge(&a.numerator)?;
    if parity(&a.denominator) * parity(&b.denominator) % 2 == 1 {
        second = second.negate();
    }
    Fraction::new(first.add(&second), a.denominator.wedge(&b.denominator)?)
}

/// `(a/u)(m/v) = am/uv`.
pub fn loc_mul(a: &Fraction, f: &Fraction) -> Result<Fraction> {
    Fraction::new(
        a.numerator.wedge(&f.numerator)?,
        a.denominator.wedge(&f.denominator)?,
    )
}

/// True when the set contains an odd-degree element, in which case the
/// whole localization collapses to zero.
pub fn odd_denominator_collapse(u: &MultiplicativeSet) -> bool {
    u.has_odd_generator()
}

#[derive(Debug, Clone, Serialize)]
pub struct PositivityReport {
    pub samples: usize,
    pub min_degree: i64,
    pub passed: bool,
}

/// All fraction degrees are nonnegative when `U ⊆ A_0`.
pub fn positivity_check(
    u: &MultiplicativeSet,
    samples: usize,
    seed: u64,
) -> Result<PositivityReport> {
    if !u.contained_in_degree_zero() {
        return Err(Error::invalid(
            "positivity check requires the multiplicative set to sit in degree zero",
        ));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut min_degree = i64::MAX;
    let mut count = 0;
    while count < samples {
        let f = random_fraction(u, &mut rng)?;
        let Some(d) = f.degree() else { continue };
        min_degree = min_degree.min(d);
        count += 1;
    }
    Ok(PositivityReport { samples: count, min_degree, passed: min_degree >= 0 })
}

fn random_fraction(u: &MultiplicativeSet, rng: &mut StdRng) -> Result<Fraction> {
    let algebra = u.algebra();
    let num = random_homogeneous(algebra, rng);
    let denominators = u.nonzero_closure();
    let den = denominators[rng.gen_range(0..denominators.len())].clone();
    Fraction::new(num, den)
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub reflexivity_samples: usize,
    pub equivalence_triples: usize,
    pub dd_zero_samples: usize,
    pub well_defined_pairs: usize,
    pub leibniz_pairs: usize,
    pub positivity_samples: usize,
    pub collapse_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            reflexivity_samples: 200,
            equivalence_triples: 100,
            dd_zero_samples: 1000,
            well_defined_pairs: 200,
            leibniz_pairs: 500,
            positivity_samples: 500,
            collapse_samples: 100,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CollapseReport {
    pub detected: bool,
    pub zero_equivalence_samples: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizationSuiteReport {
    pub closure_size: usize,
    pub reflexivity_checks: usize,
    pub equivalence_triples: usize,
    pub dd_zero_samples: usize,
    pub well_defined_pairs: usize,
    pub add_well_defined_pairs: usize,
    pub leibniz_pairs: usize,
    pub positivity: Option<PositivityReport>,
    pub collapse: CollapseReport,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Run the whole localization property suite: the equivalence laws,
/// well-definedness of the differential and of addition on representative
/// swaps, `∂∘∂ ≡ 0`, the Leibniz rule, positivity for degree-zero sets and
/// the odd-denominator collapse.
pub fn run_localization_suite(
    u: &MultiplicativeSet,
    config: &SuiteConfig,
    seed: u64,
) -> Result<LocalizationSuiteReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures: Vec<String> = Vec::new();
    let algebra = u.algebra().clone();
    let zero = Fraction::zero(&algebra);

    // even nonzero closure elements for representative swaps
    let even_ws: Vec<KoszulElement> = u
        .closure()
        .iter()
        .filter(|w| !w.is_zero() && w.degree().is_some_and(|d| d % 2 == 0))
        .cloned()
        .collect();

    let mut reflexivity_checks = 0;
    for _ in 0..config.reflexivity_samples {
        let f = random_fraction(u, &mut rng)?;
        reflexivity_checks += 1;
        if !loc_equiv(&f, &f, u)?.is_yes() {
            failures.push(format!("reflexivity failed for {f}"));
        }
    }

    let mut equivalence_triples = 0;
    if !even_ws.is_empty() {
        for _ in 0..config.equivalence_triples {
            let f1 = random_fraction(u, &mut rng)?;
            let w1 = &even_ws[rng.gen_range(0..even_ws.len())];
            let w2 = &even_ws[rng.gen_range(0..even_ws.len())];
            let f2 = Fraction::new(
                w1.wedge(f1.numerator())?,
                w1.wedge(f1.denominator())?,
            )?;
            let f3 = Fraction::new(
                w2.wedge(f2.numerator())?,
                w2.wedge(f2.denominator())?,
            )?;
            equivalence_triples += 1;
            let sym_ab = loc_equiv(&f1, &f2, u)?.is_yes() && loc_equiv(&f2, &f1, u)?.is_yes();
            let sym_bc = loc_equiv(&f2, &f3, u)?.is_yes() && loc_equiv(&f3, &f2, u)?.is_yes();
            let trans = loc_equiv(&f1, &f3, u)?.is_yes();
            if !(sym_ab && sym_bc && trans) {
                failures.push(format!(
                    "equivalence laws failed on {f1}, {f2}, {f3}"
                ));
            }
        }
    }

    let mut dd_zero_samples = 0;
    for _ in 0..config.dd_zero_samples {
        let f = random_fraction(u, &mut rng)?;
        let dd = loc_differential(&loc_differential(&f)?)?;
        dd_zero_samples += 1;
        if !loc_equiv(&dd, &zero, u)?.is_yes() {
            failures.push(format!("dd != 0 for {f}"));
        }
    }

    let mut well_defined_pairs = 0;
    let mut add_well_defined_pairs = 0;
    if !even_ws.is_empty() {
        for _ in 0..config.well_defined_pairs {
            let f1 = random_fraction(u, &mut rng)?;
            let w = &even_ws[rng.gen_range(0..even_ws.len())];
            let f2 = Fraction::new(
                w.wedge(f1.numerator())?,
                w.wedge(f1.denominator())?,
            )?;
            well_defined_pairs += 1;
            if !loc_equiv(&loc_differential(&f1)?, &loc_differential(&f2)?, u)?.is_yes() {
                failures.push(format!(
                    "differential not constant on the class of {f1}"
                ));
            }
            // addition must also be independent of representatives
            if let Some(target_degree) = f1.degree() {
                let den_deg = f1.denominator().degree().unwrap_or(0) as i64;
                let num_degree = target_degree + den_deg;
                if num_degree >= 0 && num_degree <= algebra.len() as i64 {
                    let other_num =
                        random_homogeneous_of_degree(&algebra, &mut rng, num_degree as u32);
                    let g = Fraction::new(other_num, f1.denominator().clone())?;
                    add_well_defined_pairs += 1;
                    let s1 = loc_add(&f1, &g)?;
                    let s2 = loc_add(&f2, &g)?;
                    if !loc_equiv(&s1, &s2, u)?.is_yes() {
                        failures.push(format!(
                            "addition not constant on the class of {f1}"
                        ));
                    }
                }
            }
        }
    }

    let mut leibniz_pairs = 0;
    for _ in 0..config.leibniz_pairs {
        let f = random_fraction(u, &mut rng)?;
        let g = random_fraction(u, &mut rng)?;
        leibniz_pairs += 1;
        let lhs = loc_differential(&loc_mul(&f, &g)?)?;
        let mut second = loc_mul(&f, &loc_differential(&g)?)?;
        if f.degree().map_or(0, |d| d.rem_euclid(2)) == 1 {
            second = second.negate();
        }
        let rhs = loc_add(&loc_mul(&loc_differential(&f)?, &g)?, &second)?;
        if !loc_equiv(&lhs, &rhs, u)?.is_yes() {
            failures.push(format!("Leibniz failed for {f} and {g}"));
        }
    }

    let positivity = if u.contained_in_degree_zero() {
        let report = positivity_check(u, config.positivity_samples, seed ^ 0x9e3779b9)?;
        if !report.passed {
            failures.push(format!(
                "a fraction of negative degree {} exists over a degree-zero set",
                report.min_degree
            ));
        }
        Some(report)
    } else {
        None
    };

    let collapse = if odd_denominator_collapse(u) {
        let mut samples = 0;
        for _ in 0..config.collapse_samples {
            let f = random_fraction(u, &mut rng)?;
            samples += 1;
            if !loc_equiv(&f, &zero, u)?.is_yes() {
                failures.push(format!("collapse expected but {f} is not equivalent to 0"));
            }
        }
        CollapseReport { detected: true, zero_equivalence_samples: samples, passed: true }
    } else {
        CollapseReport { detected: false, zero_equivalence_samples: 0, passed: true }
    };

    let passed = failures.is_empty();
    Ok(LocalizationSuiteReport {
        closure_size: u.closure().len(),
        reflexivity_checks,
        equivalence_triples,
        dd_zero_samples,
        well_defined_pairs,
        add_well_defined_pairs,
        leibniz_pairs,
        positivity,
        collapse,
        failures,
        passed,
    })
}
