//! Cross-module invariants: ring axioms on bulk random samples, order
//! properties, and the dimension-theory lemmas as properties of a complex
//! corpus.

use dgdim_core::complex::{tensor_with_koszul, FreeComplex, HomologyTable};
use dgdim_core::dimension::{is_length_sequence, ldim, ComplexAnalysis, LdimVerdict};
use dgdim_core::extint::ExtInt;
use dgdim_core::field::FieldKind;
use dgdim_core::groebner::MonomialPrime;
use dgdim_core::matrix::PolyMatrix;
use dgdim_core::monomial::{Monomial, MonomialOrder};
use dgdim_core::parse::{parse_polynomial, parse_polynomial_list};
use dgdim_core::poly::{PolyRing, Polynomial, Term};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

fn random_poly(ring: &Arc<PolyRing>, rng: &mut StdRng) -> Polynomial {
    let nterms = rng.gen_range(0..=3);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let c = rng.gen_range(-9i64..=9);
        let mono = Monomial(
            (0..ring.nvars())
                .map(|_| rng.gen_range(0..=3u32))
                .collect(),
        );
        terms.push(Term { coeff: ring.field().from_integer(c), mono });
    }
    Polynomial::from_terms(ring, terms)
}

#[test]
fn ring_axioms_on_a_thousand_random_triples_per_field() {
    let rings = [
        PolyRing::rational(&["x", "y", "z"]),
        PolyRing::new(
            vec!["x".into(), "y".into(), "z".into()],
            FieldKind::Fp(5),
            MonomialOrder::GrevLex,
        )
        .unwrap(),
    ];
    for ring in rings {
        let mut rng = StdRng::seed_from_u64(0xa11ce);
        for _ in 0..1000 {
            let f = random_poly(&ring, &mut rng);
            let g = random_poly(&ring, &mut rng);
            let h = random_poly(&ring, &mut rng);
            assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            assert_eq!(&f + &g, &g + &f);
            assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            assert_eq!(&f * &g, &g * &f);
            assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        }
    }
}

proptest! {
    #[test]
    fn monomial_order_is_total_and_multiplicative(
        a in proptest::collection::vec(0u32..5, 3),
        b in proptest::collection::vec(0u32..5, 3),
        c in proptest::collection::vec(0u32..5, 3),
    ) {
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Weight(vec![2, 1, 3])] {
            let (ma, mb, mc) = (Monomial(a.clone()), Monomial(b.clone()), Monomial(c.clone()));
            // antisymmetry
            prop_assert_eq!(order.cmp_mono(&ma, &mb), order.cmp_mono(&mb, &ma).reverse());
            // equality only on equal exponent vectors (totality)
            if order.cmp_mono(&ma, &mb) == std::cmp::Ordering::Equal {
                prop_assert_eq!(&ma, &mb);
            }
            // compatibility with multiplication
            prop_assert_eq!(
                order.cmp_mono(&ma, &mb),
                order.cmp_mono(&ma.mul(&mc), &mb.mul(&mc))
            );
        }
    }

    #[test]
    fn normalization_is_idempotent_on_arithmetic_outputs(
        coeffs in proptest::collection::vec(-5i64..=5, 1..4),
        exps in proptest::collection::vec(proptest::collection::vec(0u32..3, 2), 1..4),
    ) {
        let ring = PolyRing::rational(&["x", "y"]);
        let terms: Vec<Term> = coeffs
            .iter()
            .zip(&exps)
            .map(|(&c, e)| Term { coeff: ring.field().from_integer(c), mono: Monomial(e.clone()) })
            .collect();
        let f = Polynomial::from_terms(&ring, terms);
        let g = &f * &f;
        let renorm = Polynomial::from_terms(&ring, g.terms().to_vec());
        prop_assert_eq!(&g, &renorm);
        // terms strictly decreasing, no zero coefficients
        for w in g.terms().windows(2) {
            prop_assert_eq!(
                ring.order().cmp_mono(&w[0].mono, &w[1].mono),
                std::cmp::Ordering::Greater
            );
        }
        prop_assert!(g.terms().iter().all(|t| !t.coeff.is_zero()));
    }
}

/// The two-term fixture: H_0 = k, H_1 = R over Q[T].
fn two_term_fixture() -> (Arc<PolyRing>, FreeComplex) {
    let ring = PolyRing::rational(&["T"]);
    let mut d = PolyMatrix::zero(&ring, 1, 2);
    d.set(0, 0, parse_polynomial(&ring, "T").unwrap());
    let x = FreeComplex::new(&ring, 0, vec![1, 2], vec![d]).unwrap();
    (ring, x)
}

fn corpus() -> Vec<FreeComplex> {
    let mut out = Vec::new();
    let (_, fixture) = two_term_fixture();
    out.push(fixture);
    for (vars, gens) in [
        (vec!["x", "y"], "x"),
        (vec!["x", "y"], "x, y"),
        (vec!["x", "y"], "x*y"),
        (vec!["x", "y", "z"], "x*y, z"),
    ] {
        let r = PolyRing::rational(&vars);
        let a = dgdim_core::koszul::KoszulAlgebra::new(
            &r,
            parse_polynomial_list(&r, gens).unwrap(),
        )
        .unwrap();
        out.push(a.to_free_complex());
    }
    out
}

#[test]
fn dimension_is_order_independent_across_all_three_orders() {
    let base = PolyRing::rational(&["x", "y", "z"]);
    let orders = [
        MonomialOrder::Lex,
        MonomialOrder::Weight(vec![3, 1, 2]),
    ];
    for gens in [
        vec!["x*y"],
        vec!["x^2 - y", "x^3 - z"],
        vec!["x*y - z^2", "x^2 - y*z"],
        vec!["x + y + z"],
    ] {
        let reference = dgdim_core::groebner::ideal_dimension(
            &dgdim_core::groebner::IdealPresentation::new(
                &base,
                gens.iter().map(|g| parse_polynomial(&base, g).unwrap()).collect(),
            ),
        );
        for order in &orders {
            let ring = base.with_order(order.clone()).unwrap();
            let d = dgdim_core::groebner::ideal_dimension(
                &dgdim_core::groebner::IdealPresentation::new(
                    &ring,
                    gens.iter().map(|g| parse_polynomial(&ring, g).unwrap()).collect(),
                ),
            );
            assert_eq!(d, reference, "{gens:?} under {order:?}");
        }
    }
}

#[test]
fn finite_length_homology_forces_the_maximal_anchor() {
    // complexes with every homology of finite length anchor at the
    // maximal ideal; the converse fails on the two-term fixture
    for x in corpus() {
        let analysis = ComplexAnalysis::new(&x).unwrap();
        if analysis.table().all_finite_length() && !analysis.table().is_exact() {
            let full = MonomialPrime::full(x.ring().nvars());
            assert!(analysis.is_anchor_prime(&full).unwrap());
        }
    }
    let (_, fixture) = two_term_fixture();
    let analysis = ComplexAnalysis::new(&fixture).unwrap();
    assert!(!analysis.table().all_finite_length());
    assert!(analysis.is_anchor_prime(&MonomialPrime::full(1)).unwrap());
}

#[test]
fn length_witnesses_anchor_the_tensor_at_the_maximal_ideal() {
    for x in corpus() {
        let ring = x.ring().clone();
        let pool: Vec<Polynomial> =
            (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
        let report = ldim(&x, &pool, ring.nvars(), "corpus").unwrap();
        let analysis = ComplexAnalysis::new(&x).unwrap();
        // ldim upper bound dominates the Krull dimension
        assert!(report.ldim_upper >= analysis.foxby_dim());
        if let Some(witness) = &report.witness {
            let seq = parse_polynomial_list(&ring, &witness.join(",")).unwrap();
            assert!(is_length_sequence(&x, &seq).unwrap());
            let tensor = tensor_with_koszul(&x, &seq).unwrap();
            let t_analysis = ComplexAnalysis::new(&tensor).unwrap();
            let full = MonomialPrime::full(ring.nvars());
            assert!(t_analysis.is_anchor_prime(&full).unwrap());
        }
    }
}

#[test]
fn ambient_dimension_bounds_ldim_plus_inf() {
    for x in corpus() {
        let ring = x.ring().clone();
        let pool: Vec<Polynomial> =
            (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
        let report = ldim(&x, &pool, ring.nvars(), "corpus").unwrap();
        if let (ExtInt::Finite(upper), ExtInt::Finite(inf)) = (report.ldim_upper, report.inf) {
            assert!(ring.nvars() as i64 >= upper + inf);
        }
    }
}

#[test]
fn finite_length_homology_characterizes_minimal_ldim() {
    // ldim equals -inf exactly when every homology has finite length
    for x in corpus() {
        let ring = x.ring().clone();
        let mut pool: Vec<Polynomial> =
            (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
        pool.extend(dgdim_core::jobs::seeded_linear_forms(&ring, 6, 99));
        let report = ldim(&x, &pool, ring.nvars(), "corpus").unwrap();
        let analysis = ComplexAnalysis::new(&x).unwrap();
        if report.verdict == LdimVerdict::Exact {
            let minimal = report.ldim_upper == analysis.inf().neg();
            assert_eq!(minimal, analysis.table().all_finite_length());
        }
    }
}

#[test]
fn syzygies_of_koszul_columns_match_the_next_differential() {
    // for a regular sequence the complex is exact in positive degrees, so
    // the syzygy module of the columns of one differential is exactly the
    // column span of the next; reduced module bases are unique, so the
    // comparison is equality on the nose
    let r = PolyRing::rational(&["x", "y", "z"]);
    let a = dgdim_core::koszul::KoszulAlgebra::new(
        &r,
        parse_polynomial_list(&r, "x, y, z").unwrap(),
    )
    .unwrap();
    let c = a.to_free_complex();
    for degree in [2i64, 3] {
        let d = c.diff(degree);
        let next = c.diff(degree + 1);
        let computed = dgdim_core::groebner::syzygies(&d);
        assert!(d.mul(&computed).unwrap().is_zero());
        let cols = |m: &PolyMatrix| -> Vec<dgdim_core::groebner::VectorPoly> {
            (0..m.cols())
                .map(|j| dgdim_core::groebner::VectorPoly::new(m.col(j)))
                .collect()
        };
        let gb_computed = dgdim_core::groebner::module_groebner(&r, d.cols(), &cols(&computed));
        let gb_expected = dgdim_core::groebner::module_groebner(&r, d.cols(), &cols(&next));
        assert_eq!(gb_computed, gb_expected, "degree {degree}");
    }
}

#[test]
fn theorem_holds_over_a_prime_field() {
    let r = PolyRing::new(
        vec!["x".into(), "y".into()],
        FieldKind::Fp(5),
        MonomialOrder::GrevLex,
    )
    .unwrap();
    let a = dgdim_core::koszul::KoszulAlgebra::new(
        &r,
        parse_polynomial_list(&r, "x").unwrap(),
    )
    .unwrap();
    let pool = parse_polynomial_list(&r, "x, y, x + y, x + 2*y").unwrap();
    let y = parse_polynomial(&r, "y").unwrap();
    let report = dgdim_core::dimension::verify_theorem(&a, &[y], &pool, 1).unwrap();
    assert_eq!(
        report.verdict,
        dgdim_core::dimension::TheoremVerdict::Verified,
        "{report:?}"
    );
    assert_eq!(report.dimensions.dgdim, 1);
    assert_eq!(report.dimensions.h0_dim, ExtInt::Finite(1));
}

#[test]
fn tensor_homology_of_empty_sequence_matches_original() {
    for x in corpus() {
        let t = tensor_with_koszul(&x, &[]).unwrap();
        let a = HomologyTable::compute(&x).unwrap();
        let b = HomologyTable::compute(&t).unwrap();
        for (ea, eb) in a.entries().iter().zip(b.entries()) {
            assert_eq!(ea.fitting, eb.fitting);
            assert_eq!(ea.dim, eb.dim);
        }
    }
}
