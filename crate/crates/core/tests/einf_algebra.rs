use std::collections::BTreeMap;

use moduli_core::einf_algebra::{
    ainf_check, ainf_to_text, build_e, cochain_space, conjugate_by_grading, delta_squared_is_zero, differential, expected_hh2,
    hochschild, parse_ainf, random_cocycle_mu3, random_mu3, rescale, stabilization_bound, AInfStructure, EAlgebra, EError, Elem,
};
use moduli_core::{Field, Fp, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Oracle for the multiplication table: basis elements as letter strings with
// endpoints, products by concatenation and the defining relations by hand.
#[derive(Clone, Debug)]
struct Letters {
    src: usize,
    tgt: usize,
    // written order, ('A' | 'B', i)
    word: Vec<(char, usize)>,
}

fn oracle_basis(n: usize) -> Vec<(String, Letters)> {
    let mut out = Vec::new();
    for v in 0..=n {
        out.push((format!("e{v}"), Letters { src: v, tgt: v, word: vec![] }));
    }
    for i in 1..=n {
        out.push((format!("A{i}"), Letters { src: 0, tgt: i, word: vec![('A', i)] }));
    }
    for i in 1..=n {
        out.push((format!("B{i}"), Letters { src: i, tgt: 0, word: vec![('B', i)] }));
    }
    out.push(("w".into(), Letters { src: 0, tgt: 0, word: vec![('B', 1), ('A', 1)] }));
    for i in 1..=n {
        out.push((format!("l{i}"), Letters { src: i, tgt: i, word: vec![('A', i), ('B', i)] }));
    }
    out
}

fn oracle_product(x: &Letters, y: &Letters) -> Option<String> {
    if x.src != y.tgt {
        return None;
    }
    let mut word = x.word.clone();
    word.extend(&y.word);
    match word.as_slice() {
        [] => Some(format!("e{}", x.src)),
        [(c, i)] => Some(format!("{c}{i}")),
        [('B', _), ('A', _)] => Some("w".into()),
        [('A', i), ('B', j)] if i == j => Some(format!("l{i}")),
        // A_i*B_j with i != j, and every word of length three or more
        _ => None,
    }
}

fn check_table<F: Field>(alg: &EAlgebra<F>) {
    let n = alg.n;
    let basis = oracle_basis(n);
    assert_eq!(alg.dim(), basis.len());
    assert_eq!(alg.dim(), 4 * n + 2);
    for (na, la) in &basis {
        for (nb, lb) in &basis {
            let (ia, ib) = (alg.index(na).unwrap(), alg.index(nb).unwrap());
            let got = alg.mul(ia, ib);
            match oracle_product(la, lb) {
                None => assert!(got.is_empty(), "{na}*{nb} = {}", alg.display(got)),
                Some(name) => {
                    let want: Elem<F> = vec![(alg.index(&name).unwrap(), F::one(&alg.ctx))];
                    assert_eq!(got, &want, "{na}*{nb}");
                }
            }
        }
    }
}

#[test]
fn multiplication_table_matches_oracle() {
    for n in 2..=6 {
        check_table(&build_e::<Rational>(n, &()).unwrap());
        check_table(&build_e::<Fp>(n, &101).unwrap());
    }
    check_table(&build_e::<Fp>(2, &2).unwrap());
}

#[test]
fn named_products() {
    let alg = build_e::<Rational>(4, &()).unwrap();
    let i = |s: &str| alg.index(s).unwrap();
    assert_eq!(alg.mul(i("B3"), i("A3")), &vec![(i("w"), Rational::int(1))]);
    assert!(alg.mul(i("w"), i("w")).is_empty());
    assert!(alg.mul(i("l2"), i("l2")).is_empty());
    assert!(alg.mul(i("A2"), i("B3")).is_empty());
    assert_eq!(alg.degrees[i("w")], 1);
    assert_eq!(alg.degrees[i("A1")], 0);
    assert!(alg.associativity_failure().is_none());
    let u = alg.unit();
    assert_eq!(alg.mul_elems(&u, &vec![(i("B2"), Rational::int(3))]), vec![(i("B2"), Rational::int(3))]);
}

#[test]
fn bad_n_is_rejected() {
    assert!(matches!(build_e::<Rational>(1, &()), Err(EError::BadN(1))));
    assert!(matches!(hochschild(&build_e::<Rational>(2, &()).unwrap(), 2, 7), Err(EError::BadWeight(7))));
    assert!(matches!(hochschild(&build_e::<Rational>(2, &()).unwrap(), 3, 1), Err(EError::BadDegree(3))));
}

#[test]
fn delta_squared_vanishes() {
    for n in 2..=3 {
        let alg = build_e::<Rational>(n, &()).unwrap();
        for arity in 1..=4 {
            for s in -3..=0 {
                assert!(delta_squared_is_zero(&alg, arity, s), "n={n} arity={arity} s={s}");
            }
        }
    }
}

fn hh_table<F: Field>(n: usize, ctx: &F::Ctx, j: u32) -> BTreeMap<u32, usize> {
    let alg = build_e::<F>(n, ctx).unwrap();
    (1..=6).map(|r| (r, hochschild(&alg, j, r).unwrap())).filter(|(_, d)| *d > 0).collect()
}

#[test]
fn hochschild_small_n() {
    assert_eq!(hh_table::<Rational>(2, &(), 2), BTreeMap::from([(2, 1), (3, 1), (4, 1)]));
    assert_eq!(hh_table::<Rational>(3, &(), 2), BTreeMap::from([(1, 1), (2, 2), (3, 1)]));
    assert_eq!(hh_table::<Fp>(3, &101, 2), expected_hh2(3, 101));
    assert!(hh_table::<Rational>(2, &(), 1).is_empty());
    assert!(hh_table::<Rational>(3, &(), 1).is_empty());
    assert_eq!(hh_table::<Fp>(2, &2, 2), BTreeMap::from([(1, 1), (2, 1), (3, 1), (4, 1)]));
    assert_eq!(expected_hh2(2, 2), BTreeMap::from([(1, 1), (2, 1), (3, 1), (4, 1)]));
    assert_eq!(expected_hh2(6, 0), BTreeMap::from([(1, 10)]));
}

// A mu^3 satisfies the arity-4 equation exactly when it is a Hochschild
// cocycle, i.e. lies in the kernel of the differential C^3 -> C^4.
#[test]
fn mu3_passes_iff_cocycle() {
    let alg = build_e::<Fp>(2, &101).unwrap();
    let c3 = cochain_space(&alg, 3, -1);
    let c4 = cochain_space(&alg, 4, -1);
    let d = differential(&alg, &c3, &c4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = [false; 2];
    for k in 0..12 {
        let s = if k % 2 == 0 { random_mu3(&alg, &mut rng) } else { random_cocycle_mu3(&alg, &mut rng) };
        let mut v = vec![Fp::new(0, 101); c3.dim()];
        for (t, out) in &s.mus[&3].values {
            for (b, c) in out {
                v[c3.position(t, *b).unwrap()] = *c;
            }
        }
        let cocycle = d.mul_vec(&v).unwrap().iter().all(|x| x.is_zero());
        assert_eq!(ainf_check(&alg, &s).passed(), cocycle, "sample {k}");
        seen[cocycle as usize] = true;
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn trivial_structure_passes() {
    for n in 2..=3 {
        let alg = build_e::<Rational>(n, &()).unwrap();
        let v = ainf_check(&alg, &AInfStructure::trivial(n, 5));
        assert!(v.passed(), "{v:?}");
    }
}

#[test]
fn ainf_text_round_trip() {
    let alg = build_e::<Rational>(2, &()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = random_cocycle_mu3(&alg, &mut rng);
    let text = ainf_to_text(&alg, &s);
    assert_eq!(parse_ainf(&alg, 3, &text).unwrap(), s);
    let s2 = parse_ainf(&alg, 3, "mu 3 | B1,A1,B1 -> 2*B1\nmu 3 | A1,B1,A1 -> -1/2*A1 # note\n").unwrap();
    assert_eq!(s2.mus[&3].values.len(), 2);
    assert!(parse_ainf(&alg, 3, "mu 3 | A1,A1,A1 -> A1\n").is_err());
    assert!(parse_ainf(&alg, 3, "mu 3 | B1,A1,B1 -> A1\n").is_err());
    assert!(parse_ainf(&alg, 3, "garbage\n").is_err());
}

#[test]
fn stabilization_bounds() {
    let got: Vec<usize> = (1..=6).map(|n| stabilization_bound(n).unwrap()).collect();
    assert_eq!(got, vec![8, 6, 5, 4, 4, 4]);
    assert!(stabilization_bound(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rescale_is_a_group_action(seed in 0u64..1000, l in 1i64..100, m in 1i64..100) {
        let alg = build_e::<Fp>(2, &101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_cocycle_mu3(&alg, &mut rng);
        let (l, m) = (Fp::new(l, 101), Fp::new(m, 101));
        let one = Fp::new(1, 101);
        prop_assert_eq!(rescale(&s, &one).unwrap(), s.clone());
        let twice = rescale(&rescale(&s, &l).unwrap(), &m).unwrap();
        prop_assert_eq!(&twice, &rescale(&s, &l.times(&m)).unwrap());
        prop_assert_eq!(conjugate_by_grading(&alg, &s, &l).unwrap(), rescale(&s, &l).unwrap());
        prop_assert!(ainf_check(&alg, &twice).passed());
        prop_assert_eq!(rescale(&s, &Fp::new(0, 101)), Err(EError::ZeroScalar));
    }
}
