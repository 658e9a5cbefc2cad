//! Krull dimension of complexes, anchor primes, length sequences and both
//! notions of a system of parameters, together with the harness that checks
//! the predicate equivalences and the dimension equalities on Koszul
//! algebras.
//!
//! Prime-localized computations work combinatorially on monomial primes and
//! therefore need per-degree support data: the minimal primes of each
//! homology Fitting ideal. Those are available when a Fitting ideal is
//! monomial, and also when it is homogeneous of dimension at most zero (the
//! only prime over such an ideal is the irrelevant maximal ideal). Anything
//! else is answered with an unsupported-input error, never approximated.

use crate::complex::{tensor_with_koszul, FreeComplex, HomologyTable, ModulePresentation};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::groebner::{minimal_primes_monomial, same_ideal, IdealPresentation, MonomialPrime};
use crate::koszul::KoszulAlgebra;
use crate::poly::Polynomial;
use itertools::Itertools;
use serde::Serialize;
use std::sync::Arc;

/// Validated complex with its homology table.
#[derive(Debug, Clone)]
pub struct ComplexAnalysis {
    complex: FreeComplex,
    table: HomologyTable,
}

impl ComplexAnalysis {
    pub fn new(x: &FreeComplex) -> Result<Self> {
        x.validate()?;
        let table = HomologyTable::compute(x)?;
        Ok(ComplexAnalysis { complex: x.clone(), table })
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn table(&self) -> &HomologyTable {
        &self.table
    }

    pub fn inf(&self) -> ExtInt {
        self.table.inf()
    }

    /// `sup_i { dim H_i - i }`; `-infinity` for an exact complex.
    pub fn foxby_dim(&self) -> ExtInt {
        self.table
            .entries()
            .iter()
            .filter_map(|e| e.dim.finite().map(|d| ExtInt::Finite(d - e.degree)))
            .max()
            .unwrap_or(ExtInt::NegInf)
    }

    /// Minimal primes of the homology Fitting ideals, per nonvanishing
    /// degree.
    pub fn support(&self) -> Result<Vec<(i64, Vec<MonomialPrime>)>> {
        let nvars = self.complex.ring().nvars();
        let mut out = Vec::new();
        for entry in self.table.entries() {
            if entry.dim == ExtInt::NegInf {
                continue;
            }
            let primes = if entry.fitting.is_monomial() {
                minimal_primes_monomial(&entry.fitting.to_ideal())?
            } else if entry.fitting.is_homogeneous() && entry.dim <= ExtInt::Finite(0) {
                // a homogeneous ideal of dimension zero sits only under the
                // irrelevant maximal ideal
                vec![MonomialPrime::full(nvars)]
            } else {
                return Err(Error::unsupported(format!(
                    "homology in degree {} has a non-monomial Fitting ideal",
                    entry.degree
                )));
            };
            out.push((entry.degree, primes));
        }
        Ok(out)
    }

    /// Least degree whose homology survives localization at `p`.
    pub fn inf_at_prime(&self, p: &MonomialPrime) -> Result<ExtInt> {
        let support = self.support()?;
        for (degree, primes) in &support {
            if primes.iter().any(|q| p.contains(q)) {
                return Ok(ExtInt::Finite(*degree));
            }
        }
        Ok(ExtInt::PosInf)
    }

    /// Localized Krull dimension
    /// `sup_i max { height(p) - height(q) - i : q minimal over Fitt H_i, q ⊆ p }`,
    /// using that monomial primes in a polynomial ring are catenary.
    pub fn dim_at_prime(&self, p: &MonomialPrime) -> Result<ExtInt> {
        let support = self.support()?;
        let mut best = ExtInt::NegInf;
        for (degree, primes) in &support {
            for q in primes {
                if p.contains(q) {
                    let value = p.height() as i64 - q.height() as i64 - degree;
                    best = best.max(ExtInt::Finite(value));
                }
            }
        }
        Ok(best)
    }

    /// `p` is an anchor prime when the localized dimension attains its
    /// least possible value `-inf` at `p`. Requires `p` in the support.
    pub fn is_anchor_prime(&self, p: &MonomialPrime) -> Result<bool> {
        let inf_p = self.inf_at_prime(p)?;
        if inf_p == ExtInt::PosInf {
            return Err(Error::invalid(format!(
                "prime of height {} is not in the support",
                p.height()
            )));
        }
        Ok(self.dim_at_prime(p)? == inf_p.neg())
    }

    /// Anchor verdicts over every monomial prime in the support.
    pub fn anchor_primes(&self) -> Result<Vec<AnchorEntry>> {
        let nvars = self.complex.ring().nvars();
        if nvars > 20 {
            return Err(Error::unsupported("anchor enumeration limited to 20 variables"));
        }
        let mut out = Vec::new();
        for mask in 0u32..(1 << nvars) {
            let p = MonomialPrime::new((0..nvars).filter(|&i| mask & (1 << i) != 0));
            let inf_p = self.inf_at_prime(&p)?;
            if inf_p == ExtInt::PosInf {
                continue;
            }
            let dim_p = self.dim_at_prime(&p)?;
            out.push(AnchorEntry {
                prime: p.describe(self.complex.ring()),
                height: p.height(),
                inf_at_prime: inf_p,
                dim_at_prime: dim_p,
                is_anchor: dim_p == inf_p.neg(),
            });
        }
        out.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.prime.cmp(&b.prime)));
        Ok(out)
    }

    /// Anchor condition at the irrelevant maximal ideal. Falls back to the
    /// finite-length criterion when the support is not computable: if every
    /// homology module has finite length the maximal ideal is an anchor
    /// prime.
    pub fn anchor_at_maximal(&self) -> Result<bool> {
        if self.table.all_finite_length() {
            return Ok(true);
        }
        let full = MonomialPrime::full(self.complex.ring().nvars());
        self.is_anchor_prime(&full)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnchorEntry {
    pub prime: String,
    pub height: usize,
    pub inf_at_prime: ExtInt,
    pub dim_at_prime: ExtInt,
    pub is_anchor: bool,
}

pub fn foxby_dim(x: &FreeComplex) -> Result<ExtInt> {
    Ok(ComplexAnalysis::new(x)?.foxby_dim())
}

pub fn inf_at_prime(x: &FreeComplex, p: &MonomialPrime) -> Result<ExtInt> {
    ComplexAnalysis::new(x)?.inf_at_prime(p)
}

pub fn dim_at_prime(x: &FreeComplex, p: &MonomialPrime) -> Result<ExtInt> {
    ComplexAnalysis::new(x)?.dim_at_prime(p)
}

pub fn is_anchor_prime(x: &FreeComplex, p: &MonomialPrime) -> Result<bool> {
    ComplexAnalysis::new(x)?.is_anchor_prime(p)
}

fn check_in_maximal_ideal(x: &FreeComplex, seq: &[Polynomial]) -> Result<()> {
    for f in seq {
        if !f.same_ring(&Polynomial::zero(x.ring())) {
            return Err(Error::RingMismatch("sequence entry off-ring".into()));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::invalid(format!(
                "sequence entry {f} has nonzero constant term"
            )));
        }
    }
    Ok(())
}

/// Every homology of `K(seq) ⊗ X` has finite length.
pub fn is_length_sequence(x: &FreeComplex, seq: &[Polynomial]) -> Result<bool> {
    check_in_maximal_ideal(x, seq)?;
    let tensor = tensor_with_koszul(x, seq)?;
    Ok(HomologyTable::compute(&tensor)?.all_finite_length())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LdimVerdict {
    Exact,
    Interval,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeDim {
    pub degree: i64,
    pub dim: ExtInt,
}

/// Length-dimension search result. The lower bound is the Foxby dimension,
/// the upper bound comes from the shortest pool witness; `exact` is claimed
/// only when the bounds meet or every strictly shorter candidate is ruled
/// out (which a finite pool can do only for witness lengths 0 and 1).
#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub label: String,
    pub inf: ExtInt,
    pub homology_dims: Vec<DegreeDim>,
    pub foxby_dim: ExtInt,
    pub ldim_lower: ExtInt,
    pub ldim_upper: ExtInt,
    pub witness: Option<Vec<String>>,
    pub verdict: LdimVerdict,
}

pub fn ldim(
    x: &FreeComplex,
    pool: &[Polynomial],
    exhaustive_limit: usize,
    label: &str,
) -> Result<DimensionReport> {
    let analysis = ComplexAnalysis::new(x)?;
    ldim_with_analysis(&analysis, pool, exhaustive_limit, label)
}

fn ldim_with_analysis(
    analysis: &ComplexAnalysis,
    pool: &[Polynomial],
    exhaustive_limit: usize,
    label: &str,
) -> Result<DimensionReport> {
    let x = analysis.complex();
    check_in_maximal_ideal(x, pool)?;
    let inf = analysis.inf();
    let homology_dims: Vec<DegreeDim> = analysis
        .table()
        .dims()
        .into_iter()
        .map(|(degree, dim)| DegreeDim { degree, dim })
        .collect();
    let foxby = analysis.foxby_dim();
    if inf == ExtInt::PosInf {
        // exact complex: the empty sequence works and ldim degenerates
        return Ok(DimensionReport {
            label: label.to_string(),
            inf,
            homology_dims,
            foxby_dim: foxby,
            ldim_lower: ExtInt::NegInf,
            ldim_upper: ExtInt::NegInf,
            witness: Some(vec![]),
            verdict: LdimVerdict::Exact,
        });
    }
    let inf_value = inf.finite().expect("bounded complex");

    let mut witness: Option<Vec<Polynomial>> = None;
    'search: for size in 0..=exhaustive_limit.min(pool.len()) {
        for combo in (0..pool.len()).combinations(size) {
            let seq: Vec<Polynomial> = combo.iter().map(|&i| pool[i].clone()).collect();
            if is_length_sequence(x, &seq)? {
                witness = Some(seq);
                break 'search;
            }
        }
    }

    let (upper, verdict) = match &witness {
        None => (ExtInt::PosInf, LdimVerdict::Interval),
        Some(seq) => {
            let upper = ExtInt::Finite(seq.len() as i64 - inf_value);
            let exact = upper == foxby || seq.len() <= 1;
            (upper, if exact { LdimVerdict::Exact } else { LdimVerdict::Interval })
        }
    };
    assert!(foxby <= upper, "length-sequence witness below the dimension lower bound");
    Ok(DimensionReport {
        label: label.to_string(),
        inf,
        homology_dims,
        foxby_dim: foxby,
        ldim_lower: foxby,
        ldim_upper: upper,
        witness: witness.map(|seq| seq.iter().map(|p| p.to_string()).collect()),
        verdict,
    })
}

/// Classical system of parameters for a module: the sequence length equals
/// the dimension (zero for finite-length modules) and cutting by it leaves
/// dimension at most zero.
#[derive(Debug, Clone, Serialize)]
pub struct SopModuleCheck {
    pub module_dim: ExtInt,
    pub required_length: usize,
    pub length_matches: bool,
    pub quotient_dim: ExtInt,
    pub is_sop: bool,
}

pub fn is_sop_module(m: &ModulePresentation, seq: &[Polynomial]) -> Result<SopModuleCheck> {
    for f in seq {
        if !f.constant_term().is_zero() {
            return Err(Error::invalid(format!(
                "sequence entry {f} has nonzero constant term"
            )));
        }
    }
    let module_dim = m.dim();
    let required_length = module_dim.finite().map_or(0, |d| d.max(0) as usize);
    let length_matches = seq.len() == required_length;
    let quotient_dim = m.quotient_by_sequence(seq).dim();
    Ok(SopModuleCheck {
        module_dim,
        required_length,
        length_matches,
        quotient_dim,
        is_sop: length_matches && quotient_dim <= ExtInt::Finite(0),
    })
}

/// The anchor-based system of parameters for a complex: the maximal ideal
/// anchors `K(seq) ⊗ X` and the length matches `dim + inf`.
#[derive(Debug, Clone, Serialize)]
pub struct ChristensenCheck {
    pub foxby_dim: ExtInt,
    pub inf: ExtInt,
    pub required_length: i64,
    pub length_matches: bool,
    /// `None` when the anchor condition was not needed (the length already
    /// fails) and could not be decided.
    pub anchor_at_max: Option<bool>,
    pub is_sop: bool,
}

pub fn is_sop_christensen(x: &FreeComplex, seq: &[Polynomial]) -> Result<ChristensenCheck> {
    let analysis = ComplexAnalysis::new(x)?;
    is_sop_christensen_with(&analysis, seq)
}

fn is_sop_christensen_with(
    analysis: &ComplexAnalysis,
    seq: &[Polynomial],
) -> Result<ChristensenCheck> {
    let x = analysis.complex();
    check_in_maximal_ideal(x, seq)?;
    let foxby = analysis.foxby_dim();
    let inf = analysis.inf();
    let (Some(d), Some(i)) = (foxby.finite(), inf.finite()) else {
        return Err(Error::invalid("systems of parameters need a non-exact complex"));
    };
    let required = d + i;
    let length_matches = seq.len() as i64 == required;
    let tensor = tensor_with_koszul(x, seq)?;
    let tensor_analysis = ComplexAnalysis::new(&tensor)?;
    match tensor_analysis.anchor_at_maximal() {
        Ok(anchor) => Ok(ChristensenCheck {
            foxby_dim: foxby,
            inf,
            required_length: required,
            length_matches,
            anchor_at_max: Some(anchor),
            is_sop: length_matches && anchor,
        }),
        Err(Error::Unsupported(_)) if !length_matches => Ok(ChristensenCheck {
            foxby_dim: foxby,
            inf,
            required_length: required,
            length_matches,
            anchor_at_max: None,
            is_sop: false,
        }),
        Err(e) => Err(e),
    }
}

/// `H_0(K(seq) ⊗ A) ≅ H_0(A)/(seq)H_0(A)`, decided by comparing the
/// defining ideals of the two cyclic presentations.
pub fn h0_iso_check(algebra: &Arc<KoszulAlgebra>, seq: &[Polynomial]) -> Result<bool> {
    let complex = algebra.to_free_complex();
    check_in_maximal_ideal(&complex, seq)?;
    let tensor = tensor_with_koszul(&complex, seq)?;
    let h0 = tensor.homology(0)?;
    if h0.rank() != 1 {
        return Err(Error::invalid("degree-zero part of the tensor complex is not cyclic"));
    }
    let lhs = IdealPresentation::new(
        algebra.ring(),
        (0..h0.relations().cols()).map(|j| h0.relations().get(0, j).clone()).collect(),
    );
    let mut rhs_gens = algebra.elements().to_vec();
    rhs_gens.extend(seq.iter().cloned());
    let rhs = IdealPresentation::new(algebra.ring(), rhs_gens);
    Ok(same_ideal(&lhs, &rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremVerdict {
    Verified,
    Counterexample,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionQuadruple {
    pub dgdim: i64,
    pub ldim: ExtInt,
    pub ldim_verdict: LdimVerdict,
    pub foxby_dim: ExtInt,
    pub h0_dim: ExtInt,
    /// `None` while the ldim search is inconclusive.
    pub all_equal: Option<bool>,
}

/// Evaluation of the three system-of-parameters predicates on one
/// candidate sequence, with the supporting data.
#[derive(Debug, Clone, Serialize)]
pub struct SopCertificate {
    pub sequence: Vec<String>,
    pub is_length_sequence: bool,
    pub christensen_sop: Option<bool>,
    pub h0_sop: Option<bool>,
    pub length_sop: Option<bool>,
    pub anchor_at_max: Option<bool>,
    pub h0_quotient_dim: ExtInt,
    pub tensor_homology_dims: Vec<DegreeDim>,
    /// `None` when some predicate could not be decided.
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub algebra: String,
    pub dimensions: DimensionQuadruple,
    pub h0_iso: bool,
    pub certificate: SopCertificate,
    pub verdict: TheoremVerdict,
    pub notes: Vec<String>,
}

/// Shared per-algebra data for evaluating many candidate sequences: the
/// four dimensions are computed once, candidates reuse them.
pub struct TheoremContext {
    algebra: Arc<KoszulAlgebra>,
    analysis: ComplexAnalysis,
    h0: ModulePresentation,
    dimensions: DimensionQuadruple,
    /// Length of the shortest pool length-sequence within the search limit.
    shortest_pool_witness: ExtInt,
}

impl TheoremContext {
    pub fn new(
        algebra: &Arc<KoszulAlgebra>,
        pool: &[Polynomial],
        exhaustive_limit: usize,
    ) -> Result<Self> {
        let complex = algebra.to_free_complex();
        let analysis = ComplexAnalysis::new(&complex)?;
        let dg = crate::dg_spec::DgAlgebra::Koszul(algebra.clone()).dgdim();
        let h0 = algebra.h0_presentation();
        let h0_dim = h0.dim();
        let ldim_report = ldim_with_analysis(&analysis, pool, exhaustive_limit, "")?;
        let shortest_pool_witness = match &ldim_report.witness {
            Some(seq) => ExtInt::Finite(seq.len() as i64),
            None => ExtInt::PosInf,
        };
        let all_equal = match ldim_report.verdict {
            LdimVerdict::Interval => None,
            LdimVerdict::Exact => Some(
                ExtInt::Finite(dg) == ldim_report.ldim_upper
                    && ldim_report.ldim_upper == analysis.foxby_dim()
                    && analysis.foxby_dim() == h0_dim,
            ),
        };
        let dimensions = DimensionQuadruple {
            dgdim: dg,
            ldim: ldim_report.ldim_upper,
            ldim_verdict: ldim_report.verdict,
            foxby_dim: analysis.foxby_dim(),
            h0_dim,
            all_equal,
        };
        Ok(TheoremContext {
            algebra: algebra.clone(),
            analysis,
            h0,
            dimensions,
            shortest_pool_witness,
        })
    }

    pub fn dimensions(&self) -> &DimensionQuadruple {
        &self.dimensions
    }

    pub fn analysis(&self) -> &ComplexAnalysis {
        &self.analysis
    }

    /// Evaluate the predicate triple on one candidate.
    pub fn check_candidate(&self, seq: &[Polynomial]) -> Result<SopCertificate> {
        let x = self.analysis.complex();
        check_in_maximal_ideal(x, seq)?;
        let tensor = tensor_with_koszul(x, seq)?;
        let tensor_analysis = ComplexAnalysis::new(&tensor)?;
        let tensor_homology_dims: Vec<DegreeDim> = tensor_analysis
            .table()
            .dims()
            .into_iter()
            .map(|(degree, dim)| DegreeDim { degree, dim })
            .collect();
        let is_length_seq = tensor_analysis.table().all_finite_length();

        // Christensen: length equation plus the anchor condition at the
        // maximal ideal of the tensor complex
        let foxby = self.analysis.foxby_dim().finite().expect("non-exact algebra complex");
        let inf = self.analysis.inf().finite().expect("non-exact algebra complex");
        let required = foxby + inf;
        let length_matches = seq.len() as i64 == required;
        let christensen = match tensor_analysis.anchor_at_maximal() {
            Ok(anchor) => Some((length_matches && anchor, Some(anchor))),
            Err(Error::Unsupported(_)) if !length_matches => Some((false, None)),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        let (christensen_sop, anchor_at_max) = match christensen {
            Some((sop, anchor)) => (Some(sop), anchor),
            None => (None, None),
        };

        // module sop for H_0
        let module_check = is_sop_module(&self.h0, seq)?;

        // length sop: a length sequence of globally minimal length
        let length_sop = if !is_length_seq {
            Some(false)
        } else if seq.len() as i64 == required {
            // no shorter length sequence exists (ldim >= dim)
            Some(true)
        } else if ExtInt::Finite(seq.len() as i64) > self.shortest_pool_witness {
            Some(false)
        } else {
            None
        };

        let agree = match (christensen_sop, Some(module_check.is_sop), length_sop) {
            (Some(a), Some(b), Some(c)) => Some(a == b && b == c),
            _ => None,
        };
        Ok(SopCertificate {
            sequence: seq.iter().map(|p| p.to_string()).collect(),
            is_length_sequence: is_length_seq,
            christensen_sop,
            h0_sop: Some(module_check.is_sop),
            length_sop,
            anchor_at_max,
            h0_quotient_dim: module_check.quotient_dim,
            tensor_homology_dims,
            agree,
        })
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> =
            self.algebra.elements().iter().map(|p| p.to_string()).collect();
        format!("Koszul({}) over {}", gens.join(", "), self.algebra.ring())
    }
}

/// Full check for a single candidate: predicate equivalences plus the
/// dimension chain.
pub fn verify_theorem(
    algebra: &Arc<KoszulAlgebra>,
    seq: &[Polynomial],
    pool: &[Polynomial],
    exhaustive_limit: usize,
) -> Result<TheoremReport> {
    let ctx = TheoremContext::new(algebra, pool, exhaustive_limit)?;
    let certificate = ctx.check_candidate(seq)?;
    let h0_iso = h0_iso_check(algebra, seq)?;
    let mut notes = Vec::new();
    let verdict = match certificate.agree {
        Some(false) => {
            notes.push("system-of-parameters predicates disagree".to_string());
            TheoremVerdict::Counterexample
        }
        Some(true) => match ctx.dimensions().all_equal {
            Some(true) if h0_iso => TheoremVerdict::Verified,
            Some(true) => {
                notes.push("degree-zero homology comparison failed".to_string());
                TheoremVerdict::Counterexample
            }
            Some(false) => {
                notes.push("dimension chain failed".to_string());
                TheoremVerdict::Counterexample
            }
            None => {
                notes.push("ldim search inconclusive".to_string());
                TheoremVerdict::Inconclusive
            }
        },
        None => {
            notes.push("a predicate could not be decided".to_string());
            TheoremVerdict::Inconclusive
        }
    };
    Ok(TheoremReport {
        algebra: ctx.describe(),
        dimensions: ctx.dimensions().clone(),
        h0_iso,
        certificate,
        verdict,
        notes,
    })
}
