use std::sync::Arc;

use moduli_core::polyring::hilbert::{brute_force_standard_counts, expand_series, hilbert_numerator, standard_counts};
use moduli_core::polyring::text::{ideal_from_json, ideal_from_text, ideal_to_json, ideal_to_text, parse_polynomial};
use moduli_core::polyring::{
    buchberger, normal_form, s_polynomial, IdealPresentation, Monomial, MonomialOrder, OrderKind, PolyError, PolyRing, Polynomial,
    RingMap, VarSpec,
};
use moduli_core::{Field, Fp, Rational};
use proptest::prelude::*;

fn ring_q(names: &[&str]) -> Arc<PolyRing<Rational>> {
    PolyRing::with_default_order((), names.iter().map(|n| VarSpec::new(*n, 1)).collect())
}

fn p<F: Field>(r: &Arc<PolyRing<F>>, s: &str) -> Polynomial<F> {
    parse_polynomial(r, s).unwrap()
}

fn add<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    a.checked_add(b).unwrap()
}
fn mul<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    a.checked_mul(b).unwrap()
}

#[test]
fn twisted_cubic_basis() {
    // The twisted cubic: three quadrics, already a Groebner basis in grevlex.
    let r = ring_q(&["x", "y", "z", "w"]);
    let gens = vec![p(&r, "x*z - y^2"), p(&r, "y*w - z^2"), p(&r, "x*w - y*z")];
    let gb = buchberger(&gens, None);
    assert!(gb.complete);
    assert!(gb.s_pairs_reduce_to_zero());
    for g in &gens {
        assert!(gb.reduce(g).is_zero());
    }
    let mut ideal = IdealPresentation::new(&r, "twisted cubic");
    for (k, g) in gens.iter().enumerate() {
        ideal.push(format!("q{k}"), g.clone());
    }
    // Hilbert function of the twisted cubic is 3m + 1.
    assert_eq!(ideal.standard_monomial_counts(6).unwrap(), (0..=6).map(|m| 3 * m + 1).collect::<Vec<u64>>());
    assert!(ideal.homogeneity_check());
    assert_eq!(ideal.minimal_generator_degrees(4).unwrap(), vec![2, 2, 2]);
    assert_eq!(ideal.tangent_dimension().unwrap(), 4);
}

#[test]
fn membership_certificate() {
    let r = ring_q(&["x", "y"]);
    let mut ideal = IdealPresentation::new(&r, "t");
    ideal.push("f", p(&r, "x^2 - y"));
    ideal.push("g", p(&r, "x*y - 1"));
    let target = add(&mul(&p(&r, "x + 3"), &p(&r, "x^2 - y")), &mul(&p(&r, "y^2"), &p(&r, "x*y - 1")));
    match ideal.member(&target, None) {
        moduli_core::polyring::Membership::Member { quotients, basis } => {
            let mut sum = Polynomial::zero(&r);
            for (qk, bk) in quotients.iter().zip(&basis) {
                sum = add(&sum, &mul(qk, bk));
            }
            assert_eq!(sum, target);
        }
        other => panic!("not a member: {other:?}"),
    }
    assert!(!ideal.member(&p(&r, "x"), None).is_member());
    // x^3 = 1 in the quotient, so y = x^2 and x^3 - 1 is in the ideal
    assert!(ideal.member(&p(&r, "x^3 - 1"), None).is_member());
}

#[test]
fn degree_cap_gives_unknown() {
    let r = ring_q(&["x", "y", "z"]);
    let mut ideal = IdealPresentation::new(&r, "t");
    ideal.push("f", p(&r, "x*y - z^2"));
    ideal.push("g", p(&r, "y^3 - x*z^2"));
    let gb = ideal.groebner(Some(2));
    assert!(!gb.complete);
    assert!(ideal.member(&p(&r, "x^5*y^7 - z"), Some(2)).is_unknown());
}

#[test]
fn s_polynomial_cancels_leading_terms() {
    let r = ring_q(&["x", "y"]);
    let (f, g) = (p(&r, "x^2*y - 1"), p(&r, "x*y^2 - x"));
    let s = s_polynomial(&f, &g);
    assert_eq!(s, p(&r, "x^2 - y"));
    assert!(normal_form(&s, &[f.clone(), g.clone()]) != Polynomial::zero(&r));
}

#[test]
fn weighted_orders() {
    let r = PolyRing::<Rational>::new(
        (),
        vec![VarSpec::new("a", 2), VarSpec::new("b", 3)],
        MonomialOrder::natural(OrderKind::WDegRevLex, 2),
    )
    .unwrap();
    let f = p(&r, "a^3 + b^2");
    assert!(f.is_homogeneous());
    assert_eq!(f.degree(), Some(6));
    assert!(!p(&r, "a + b").is_homogeneous());
    assert!(PolyRing::<Rational>::new((), vec![VarSpec::new("a", 0)], MonomialOrder::natural(OrderKind::WDegLex, 1)).is_err());
    assert!(matches!(parse_polynomial(&r, "c + 1"), Err(PolyError::UnknownVariable(_))));
}

#[test]
fn ideal_text_and_json_round_trip() {
    let r = PolyRing::<Fp>::with_default_order(101, vec![VarSpec::new("u", 1), VarSpec::new("v", 2)]);
    let mut ideal = IdealPresentation::new(&r, "sample");
    ideal.push("f", p(&r, "3*u^2 - v + 50"));
    ideal.push("g", p(&r, "u*v^3 - 1/2*u"));
    let text = ideal_to_text(&ideal);
    let back = ideal_from_text::<Fp>(&text).unwrap();
    assert_eq!(ideal_to_text(&back), text);
    assert_eq!(back.provenance, "sample");
    let json = ideal_to_json(&ideal);
    let back = ideal_from_json::<Fp>(&json).unwrap();
    assert_eq!(back.polys(), ideal.polys());
    assert!(ideal_from_text::<Fp>("ring Q vars x:1\n").is_err());
}

#[test]
fn ring_maps_compose() {
    let src = ring_q(&["s", "t"]);
    let dst = ring_q(&["x", "y", "z"]);
    let f = RingMap::new(&src, &dst, vec![p(&dst, "x + y"), p(&dst, "y*z")]).unwrap();
    assert_eq!(f.apply(&p(&src, "s*t - t^2")).unwrap(), p(&dst, "x*y*z + y^2*z - y^2*z^2"));
    let g = RingMap::new(&dst, &src, vec![p(&src, "s"), p(&src, "0"), p(&src, "t")]).unwrap();
    let gf = g.compose(&f).unwrap();
    assert_eq!(gf.apply(&p(&src, "s*t")).unwrap(), Polynomial::zero(&src));
    assert!(RingMap::new(&src, &dst, vec![p(&dst, "x")]).is_err());
    let id = RingMap::identity(&src);
    assert_eq!(id.apply(&p(&src, "s^2 + 3")).unwrap(), p(&src, "s^2 + 3"));
}

fn small_poly(r: &Arc<PolyRing<Fp>>, terms: &[(u8, u8, u8, i64)]) -> Polynomial<Fp> {
    Polynomial::from_terms(r, terms.iter().map(|&(a, b, c, k)| (r.monomial(&[a, b, c]), Fp::new(k, 101))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // The staircase count from the Hilbert numerator equals direct
    // enumeration of standard monomials.
    #[test]
    fn hilbert_counts_match_enumeration(gens in proptest::collection::vec(proptest::collection::vec(0u8..4, 3), 0..5),
                                        weights in proptest::collection::vec(1u32..4, 3)) {
        let mons: Vec<Monomial> = gens
            .iter()
            .filter(|e| e.iter().any(|&x| x > 0))
            .map(|e| Monomial { deg: e.iter().zip(&weights).map(|(&x, &w)| x as u32 * w).sum(), e: e.iter().copied().collect() })
            .collect();
        let counts = standard_counts(&mons, &weights, 10);
        prop_assert_eq!(&counts, &brute_force_standard_counts(&mons, &weights, 10));
        let series = expand_series(&hilbert_numerator(&mons, &weights), &weights, 10);
        prop_assert_eq!(series.iter().map(|&x| x as u64).collect::<Vec<_>>(), counts);
    }

    // Buchberger output generates the input and is closed under S-pairs.
    #[test]
    fn buchberger_is_a_groebner_basis(
        f in proptest::collection::vec((0u8..3, 0u8..3, 0u8..2, -5i64..5), 1..4),
        g in proptest::collection::vec((0u8..3, 0u8..3, 0u8..2, -5i64..5), 1..4),
    ) {
        let r = PolyRing::<Fp>::with_default_order(101, vec![VarSpec::new("x", 1), VarSpec::new("y", 1), VarSpec::new("z", 1)]);
        let (f, g) = (small_poly(&r, &f), small_poly(&r, &g));
        let gens: Vec<Polynomial<Fp>> = [f.clone(), g.clone()].into_iter().filter(|x| !x.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = buchberger(&gens, None);
        prop_assert!(gb.complete);
        prop_assert!(gb.s_pairs_reduce_to_zero());
        for x in &gens {
            prop_assert!(gb.reduce(x).is_zero());
        }
        prop_assert!(gb.reduce(&mul(&f, &g)).is_zero());
        // reduced: no leading monomial divides another
        let lms = gb.leading_monomials();
        for (i, a) in lms.iter().enumerate() {
            for (j, b) in lms.iter().enumerate() {
                prop_assert!(i == j || !a.divides(b));
            }
        }
    }

    #[test]
    fn polynomial_text_round_trip(f in proptest::collection::vec((0u8..4, 0u8..4, 0u8..3, -9i64..9), 0..6)) {
        let r = PolyRing::<Fp>::with_default_order(101, vec![VarSpec::new("x", 1), VarSpec::new("y", 1), VarSpec::new("z", 1)]);
        let f = small_poly(&r, &f);
        prop_assert_eq!(parse_polynomial(&r, &f.to_string()).unwrap(), f);
    }
}
