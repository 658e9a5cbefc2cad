//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with its runtime and asserting the stated budget.

use dgdim_core::complex::{tensor_with_koszul, FreeComplex, HomologyTable};
use dgdim_core::dg_localize::{
    loc_equiv, odd_denominator_collapse, run_localization_suite, Fraction, MultiplicativeSet,
    SuiteConfig,
};
use dgdim_core::dg_spec::{monomial_primes_containing, DgAlgebra, TrivialDiffAlgebra};
use dgdim_core::dimension::{
    h0_iso_check, is_sop_christensen, is_sop_module, ldim, ComplexAnalysis, LdimVerdict,
    TheoremContext,
};
use dgdim_core::extint::ExtInt;
use dgdim_core::field::FieldKind;
use dgdim_core::groebner::{
    buchberger_criterion_holds, groebner_basis, ideal_dimension, syzygies, IdealPresentation,
    MonomialPrime,
};
use dgdim_core::jobs::seeded_linear_forms;
use dgdim_core::koszul::{dg_axiom_check, KoszulAlgebra, KoszulElement};
use dgdim_core::matrix::PolyMatrix;
use dgdim_core::monomial::MonomialOrder;
use dgdim_core::parse::{parse_polynomial, parse_polynomial_list};
use dgdim_core::poly::{PolyRing, Polynomial};
use itertools::Itertools;
use std::sync::Arc;
use std::time::{Duration, Instant};

const SEED: u64 = 12345;

fn finish(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("{criterion}: PASS ({} ms)", elapsed.as_millis());
    assert!(
        elapsed <= budget,
        "{criterion} exceeded its budget: {} ms > {} ms",
        elapsed.as_millis(),
        budget.as_millis()
    );
}

/// Two-term complex over Q[T] with H_0 = k and H_1 = R, as its free model.
fn two_term_fixture() -> (Arc<PolyRing>, FreeComplex) {
    let ring = PolyRing::rational(&["T"]);
    let mut d = PolyMatrix::zero(&ring, 1, 2);
    d.set(0, 0, parse_polynomial(&ring, "T").unwrap());
    let x = FreeComplex::new(&ring, 0, vec![1, 2], vec![d]).unwrap();
    (ring, x)
}

fn koszul(vars: &[&str], gens: &str) -> Arc<KoszulAlgebra> {
    let r = PolyRing::rational(vars);
    KoszulAlgebra::new(&r, parse_polynomial_list(&r, gens).unwrap()).unwrap()
}

/// The six Koszul instances used by criteria 3 and 7.
fn theorem_corpus() -> Vec<Arc<KoszulAlgebra>> {
    let mut out = Vec::new();
    for vars in [vec!["x", "y"], vec!["x", "y", "z"]] {
        for gens in ["x", "x, y", "x*y"] {
            out.push(koszul(&vars, gens));
        }
    }
    out
}

/// Deterministic candidate sequences: every subsequence of the pool up to
/// `max_len`, stride-sampled down to at most `cap`.
fn candidate_sequences(
    pool: &[Polynomial],
    max_len: usize,
    cap: usize,
) -> Vec<Vec<Polynomial>> {
    let mut all = Vec::new();
    for size in 0..=max_len.min(pool.len()) {
        for combo in (0..pool.len()).combinations(size) {
            all.push(combo.into_iter().map(|i| pool[i].clone()).collect::<Vec<_>>());
        }
    }
    if all.len() <= cap {
        return all;
    }
    let step = all.len().div_ceil(cap);
    all.into_iter().step_by(step).collect()
}

#[test]
fn criterion_1_two_term_fixture_dimensions() {
    let start = Instant::now();
    let (ring, x) = two_term_fixture();
    let analysis = ComplexAnalysis::new(&x).unwrap();
    assert_eq!(analysis.inf(), ExtInt::Finite(0));
    assert_eq!(analysis.foxby_dim(), ExtInt::Finite(0));
    // the maximal ideal (T) anchors
    let max_ideal = MonomialPrime::full(1);
    assert!(analysis.is_anchor_prime(&max_ideal).unwrap());
    // support is all of the spectrum: H_1 is free, its Fitting ideal is (0)
    let h1 = analysis.table().get(1).unwrap();
    assert!(h1.fitting.is_zero_ideal());
    assert_eq!(analysis.inf_at_prime(&MonomialPrime::zero()).unwrap(), ExtInt::Finite(1));
    let _ = ring;
    finish("criterion 1 (two-term fixture: inf, dim, anchor, support)", start, Duration::from_secs(1));
}

#[test]
fn criterion_2_two_term_fixture_ldim() {
    let start = Instant::now();
    let (ring, x) = two_term_fixture();
    let pool = vec![parse_polynomial(&ring, "T").unwrap()];
    let report = ldim(&x, &pool, 1, "two-term").unwrap();
    assert_eq!(report.verdict, LdimVerdict::Exact);
    assert_eq!(report.ldim_upper, ExtInt::Finite(1));
    assert_eq!(report.witness, Some(vec!["T".to_string()]));
    // strictly greater than the Krull dimension
    assert_eq!(report.foxby_dim, ExtInt::Finite(0));
    assert!(report.ldim_upper > report.foxby_dim);
    // and the empty sequence indeed fails
    assert!(!dgdim_core::dimension::is_length_sequence(&x, &[]).unwrap());
    finish("criterion 2 (two-term fixture: ldim = 1, exact)", start, Duration::from_secs(1));
}

#[test]
fn criterion_3_theorem_on_koszul_corpora() {
    let start = Instant::now();
    let mut instances = 0usize;
    let mut conclusive = 0usize;
    for algebra in theorem_corpus() {
        let ring = algebra.ring().clone();
        let mut pool: Vec<Polynomial> =
            (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
        pool.extend(seeded_linear_forms(&ring, 10, SEED));
        let h0_dim = algebra.h0_presentation().dim().finite().unwrap();
        let ctx = TheoremContext::new(&algebra, &pool, h0_dim.max(0) as usize).unwrap();
        let dims = ctx.dimensions();
        assert_eq!(dims.ldim_verdict, LdimVerdict::Exact, "{}", ctx.describe());
        assert_eq!(
            dims.all_equal,
            Some(true),
            "dimension chain failed for {}: {dims:?}",
            ctx.describe()
        );
        let candidates =
            candidate_sequences(&pool, (h0_dim.max(0) as usize) + 1, 15);
        for seq in &candidates {
            let cert = ctx.check_candidate(seq).unwrap();
            instances += 1;
            match cert.agree {
                Some(true) => conclusive += 1,
                Some(false) => panic!(
                    "predicates disagree on {} for {:?}: {cert:?}",
                    ctx.describe(),
                    cert.sequence
                ),
                None => {}
            }
        }
    }
    assert!(instances >= 50, "only {instances} instances");
    assert!(conclusive >= 50, "only {conclusive} conclusive instances of {instances}");
    finish(
        "criterion 3 (predicate triple + dimension chain on Koszul corpora)",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_4_corollary_dgdim_and_spectrum() {
    let start = Instant::now();
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["x", "y"], "x"),
        (vec!["x", "y"], "x, y"),
        (vec!["x", "y"], "x*y"),
        (vec!["x", "y", "z"], "x"),
        (vec!["x", "y", "z"], "x*y"),
        (vec!["x", "y", "z"], "x, y, z"),
        (vec!["x", "y", "z", "w"], "x*y, z*w"),
        (vec!["x", "y", "z", "w"], "x*y*z"),
    ];
    for (vars, gens) in cases {
        let a = koszul(&vars, gens);
        let alg = DgAlgebra::Koszul(a.clone());
        // dgdim equals dim R/(x)
        assert_eq!(alg.dgdim(), ideal_dimension(&a.sequence_ideal()), "{vars:?}/{gens}");
        // enumerated monomial DG primes are in bijection with the monomial
        // primes of R/(x), counted by 2^n brute force
        let n = vars.len();
        let supports: Vec<Vec<usize>> = a
            .elements()
            .iter()
            .map(|g| g.terms()[0].mono.support())
            .collect();
        let brute = (0u32..(1 << n))
            .filter(|mask| {
                supports
                    .iter()
                    .all(|s| s.iter().any(|&v| mask & (1 << v) != 0))
            })
            .count();
        assert_eq!(alg.dg_spec().unwrap().len(), brute, "{vars:?}/{gens}");
        // chain-length oracle: the longest chain of enumerated DG primes
        // equals dgdim
        let primes = monomial_primes_containing(&a).unwrap();
        assert_eq!(longest_chain(&primes), alg.dgdim(), "{vars:?}/{gens}");
    }
    finish("criterion 4 (corollary: dgdim = dim R/(x), spectrum bijection)", start, Duration::from_secs(10));
}

fn longest_chain(primes: &[MonomialPrime]) -> i64 {
    fn ascend(primes: &[MonomialPrime], at: usize) -> i64 {
        primes
            .iter()
            .enumerate()
            .filter(|(j, q)| {
                *j != at && q.contains(&primes[at]) && q.height() > primes[at].height()
            })
            .map(|(j, _)| 1 + ascend(primes, j))
            .max()
            .unwrap_or(0)
    }
    (0..primes.len()).map(|i| ascend(primes, i)).max().unwrap_or(0)
}

#[test]
fn criterion_5_trivial_differential_counterexample() {
    let start = Instant::now();
    let algebra = TrivialDiffAlgebra::new(FieldKind::Q, "X", 2).unwrap();
    let alg = DgAlgebra::TrivialDiff(algebra);
    assert_eq!(alg.dgdim(), 1);
    assert_eq!(alg.h0_dim(), 0);
    assert!(alg.dgdim() > alg.h0_dim());
    assert_eq!(alg.dg_spec().unwrap().len(), 2);
    finish("criterion 5 (trivial-differential algebra: dgdim 1 > dim H0 = 0)", start, Duration::from_secs(1));
}

#[test]
fn criterion_6_localization_property_suite() {
    let start = Instant::now();
    let a = koszul(&["x", "y"], "x, y");
    let one_plus_x = KoszulElement::scalar(
        &a,
        parse_polynomial(a.ring(), "1 + x").unwrap(),
    );
    let u = MultiplicativeSet::new(&a, vec![one_plus_x], 4).unwrap();
    let config = SuiteConfig {
        reflexivity_samples: 200,
        equivalence_triples: 100,
        dd_zero_samples: 1000,
        well_defined_pairs: 200,
        leibniz_pairs: 500,
        positivity_samples: 500,
        collapse_samples: 100,
    };
    let report = run_localization_suite(&u, &config, SEED).unwrap();
    assert!(report.passed, "failures: {:?}", report.failures);
    assert!(report.dd_zero_samples >= 1000);
    assert!(report.well_defined_pairs >= 200);
    assert!(report.leibniz_pairs >= 500);
    let positivity = report.positivity.expect("degree-zero set");
    assert!(positivity.passed && positivity.samples >= 500);

    // odd-denominator collapse for U containing e_1
    let e1 = KoszulElement::generator(&a, 0);
    let u_odd = MultiplicativeSet::new(&a, vec![e1.clone()], 3).unwrap();
    assert!(odd_denominator_collapse(&u_odd));
    let f = Fraction::new(KoszulElement::one(&a), e1).unwrap();
    assert!(loc_equiv(&f, &Fraction::zero(&a), &u_odd).unwrap().is_yes());
    let odd_report = run_localization_suite(&u_odd, &SuiteConfig::default(), SEED).unwrap();
    assert!(odd_report.passed, "failures: {:?}", odd_report.failures);
    assert!(odd_report.collapse.detected);
    finish("criterion 6 (localization property suite, zero failures)", start, Duration::from_secs(30));
}

#[test]
fn criterion_7_sop_consequences() {
    let start = Instant::now();
    let mut h0_sops = 0usize;
    let mut christensen_sops = 0usize;
    for algebra in theorem_corpus() {
        let ring = algebra.ring().clone();
        let complex = algebra.to_free_complex();
        let h0 = algebra.h0_presentation();
        let mut pool: Vec<Polynomial> =
            (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
        pool.extend(seeded_linear_forms(&ring, 10, SEED));
        let h0_dim = h0.dim().finite().unwrap().max(0) as usize;
        for seq in candidate_sequences(&pool, h0_dim + 1, 12) {
            // the degree-zero homology comparison holds for every sequence
            assert!(h0_iso_check(&algebra, &seq).unwrap());
            let module_check = is_sop_module(&h0, &seq).unwrap();
            if module_check.is_sop {
                h0_sops += 1;
                // every homology of the Koszul tensor has finite length
                let tensor = tensor_with_koszul(&complex, &seq).unwrap();
                let table = HomologyTable::compute(&tensor).unwrap();
                assert!(
                    table.all_finite_length(),
                    "infinite length homology for a sop {:?}",
                    seq.iter().map(|p| p.to_string()).collect::<Vec<_>>()
                );
            }
            match is_sop_christensen(&complex, &seq) {
                Ok(christensen) => {
                    if christensen.is_sop {
                        christensen_sops += 1;
                        // the cut-down H_0 is artinian
                        assert!(module_check.quotient_dim <= ExtInt::Finite(0));
                    }
                }
                // an undecidable anchor can only occur for a candidate that
                // is not a module sop (a sop forces finite lengths, which
                // decide the anchor), so there is nothing to verify
                Err(dgdim_core::error::Error::Unsupported(_)) => {
                    assert!(!module_check.is_sop);
                }
                Err(e) => panic!("unexpected error: {e}"),
            }
        }
    }
    assert!(h0_sops >= 6, "corpus produced only {h0_sops} module sops");
    assert!(christensen_sops >= 6);
    finish("criterion 7 (sop consequences: finite lengths, artinian quotients)", start, Duration::from_secs(30));
}

#[test]
fn criterion_8_dimension_formula_oracle() {
    let start = Instant::now();
    let mut checked = 0usize;
    for x in oracle_corpus() {
        let analysis = ComplexAnalysis::new(&x).unwrap();
        let n = x.ring().nvars();
        assert!(n <= 4);
        // brute-force prime supremum over all monomial primes
        let mut sup = ExtInt::NegInf;
        for mask in 0u32..(1 << n) {
            let p = MonomialPrime::new((0..n).filter(|&i| mask & (1 << i) != 0));
            let inf_p = analysis.inf_at_prime(&p).unwrap();
            let ExtInt::Finite(i) = inf_p else { continue };
            sup = sup.max(ExtInt::Finite(p.quotient_dim(n) - i));
        }
        assert_eq!(sup, analysis.foxby_dim(), "prime supremum mismatch");
        checked += 1;
    }
    assert!(checked >= 8);
    finish("criterion 8 (per-degree formula = prime supremum)", start, Duration::from_secs(30));
}

fn oracle_corpus() -> Vec<FreeComplex> {
    let mut out = Vec::new();
    let (_, fixture) = two_term_fixture();
    out.push(fixture.clone());
    out.push(fixture.shifted(2));
    out.push(fixture.shifted(-1));
    for (vars, gens) in [
        (vec!["x", "y"], "x"),
        (vec!["x", "y"], "x, y"),
        (vec!["x", "y"], "x*y"),
        (vec!["x", "y", "z"], "x, y, z"),
        (vec!["x", "y", "z"], "x*y, z"),
        (vec!["x", "y", "z", "w"], "x*y, z*w"),
    ] {
        out.push(koszul(&vars, gens).to_free_complex());
    }
    // zero differentials: free homology everywhere
    let r = PolyRing::rational(&["x", "y"]);
    out.push(FreeComplex::new(&r, 0, vec![2, 1], vec![PolyMatrix::zero(&r, 2, 1)]).unwrap());
    // a Koszul tensor of the fixture
    let (ring, fixture) = two_term_fixture();
    out.push(
        tensor_with_koszul(&fixture, &[parse_polynomial(&ring, "T").unwrap()]).unwrap(),
    );
    out
}

#[test]
fn criterion_9_engine_validity() {
    let start = Instant::now();
    // Buchberger criterion on every returned basis of a mixed corpus
    let corpora: Vec<(Arc<PolyRing>, Vec<&str>)> = {
        let q = PolyRing::rational(&["x", "y", "z"]);
        let lex = q.with_order(MonomialOrder::Lex).unwrap();
        let f5 = PolyRing::new(
            vec!["x".into(), "y".into(), "z".into()],
            FieldKind::Fp(5),
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let gens: Vec<Vec<&str>> = vec![
            vec!["x"],
            vec!["x", "y"],
            vec!["x*y"],
            vec!["x^2 - y", "x^3 - z"],
            vec!["x*y - z^2", "x^2 - y*z"],
            vec!["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"],
            vec!["x^2 + y^2 + z^2", "x*y*z"],
            vec!["x^3 - y^2", "y^3 - z^2"],
        ];
        let mut out = Vec::new();
        for ring in [q, lex, f5] {
            for g in &gens {
                out.push((ring.clone(), g.clone()));
            }
        }
        out
    };
    for (ring, gens) in corpora {
        let ideal = IdealPresentation::new(
            &ring,
            gens.iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect(),
        );
        let gb = groebner_basis(&ideal);
        assert!(buchberger_criterion_holds(&gb), "S-pair failure for {gens:?} over {ring}");
        for g in ideal.gens() {
            assert!(gb.contains(g));
        }
    }

    // syzygy soundness: M * S = 0 exactly
    let r = PolyRing::rational(&["x", "y", "z"]);
    let matrices: Vec<PolyMatrix> = vec![
        row_matrix(&r, &["x", "y"]),
        row_matrix(&r, &["x", "y", "z"]),
        row_matrix(&r, &["x*y", "y*z", "z*x"]),
        {
            let mut m = PolyMatrix::zero(&r, 2, 3);
            for (j, s) in ["x", "y", "z"].iter().enumerate() {
                m.set(0, j, parse_polynomial(&r, s).unwrap());
            }
            for (j, s) in ["y", "z", "x"].iter().enumerate() {
                m.set(1, j, parse_polynomial(&r, s).unwrap());
            }
            m
        },
        koszul(&["x", "y", "z"], "x, y, z").to_free_complex().diff(2),
    ];
    for m in &matrices {
        let s = syzygies(m);
        assert!(m.mul(&s).unwrap().is_zero(), "syzygy unsoundness");
    }

    // DG axioms exhaustively on basis elements for sequences up to length 5
    for s in 0..=5usize {
        let names: Vec<String> = (0..s).map(|i| format!("t{i}")).collect();
        let name_refs: Vec<&str> = names.iter().map(|x| x.as_str()).collect();
        let ring = PolyRing::rational(&name_refs);
        let gens: Vec<Polynomial> = (0..s).map(|i| Polynomial::var(&ring, i)).collect();
        let a = KoszulAlgebra::new(&ring, gens).unwrap();
        let basis: Vec<KoszulElement> =
            (0..(1u32 << s)).map(|m| KoszulElement::basis(&a, m)).collect();
        let wedge = |x: &KoszulElement, y: &KoszulElement| x.wedge(y).unwrap();
        for ea in &basis {
            assert!(ea.differential().differential().is_zero());
            let da = ea.degree().unwrap();
            if da % 2 == 1 {
                assert!(wedge(ea, ea).is_zero());
            }
            for eb in &basis {
                let db = eb.degree().unwrap();
                // graded commutativity
                let mut ab = wedge(ea, eb);
                if (da * db) % 2 == 1 {
                    ab = ab.negate();
                }
                assert_eq!(wedge(eb, ea), ab);
                // Leibniz rule
                let lhs = wedge(ea, eb).differential();
                let mut rhs = wedge(&ea.differential(), eb);
                let mut second = wedge(ea, &eb.differential());
                if da % 2 == 1 {
                    second = second.negate();
                }
                rhs = rhs.add(&second);
                assert_eq!(lhs, rhs);
                // associativity over all basis triples
                for ec in &basis {
                    assert_eq!(wedge(&wedge(ea, eb), ec), wedge(ea, &wedge(eb, ec)));
                }
            }
        }
        let report = dg_axiom_check(&a, 100, SEED);
        assert!(report.passed, "randomized axiom check failed for s={s}");
    }
    finish("criterion 9 (engine validity: S-pairs, syzygies, DG axioms)", start, Duration::from_secs(60));
}

fn row_matrix(ring: &Arc<PolyRing>, entries: &[&str]) -> PolyMatrix {
    let mut m = PolyMatrix::zero(ring, 1, entries.len());
    for (j, s) in entries.iter().enumerate() {
        m.set(0, j, parse_polynomial(ring, s).unwrap());
    }
    m
}
