use std::collections::{BTreeMap, BTreeSet};

use moduli_core::moduli::{
    charp_vector_fields, sn_involution, special_moduli, special_point_pin, u_n_full, u_n_reduced, wheel_data, wheel_point, CharPCase,
    Laurent, Transposition,
};
use moduli_core::polyring::Polynomial;
use moduli_core::verify::{
    blowup_solutions, check_blowup_points, check_charp_fields, check_charp_fields_with, check_component_ideals, check_fiber_hilbert,
    check_full_reduced_consistency, check_hilbert_series, check_sn_action, check_substitution_iso, check_tangent_and_weights,
    check_wheel, expected_generator_weights, fiber_sample_points, minimal_generator_weights, series_oracle,
};
use moduli_core::{Fp, Rational};

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// Coefficients of prod_{k=3}^{n-3} (1 + k t + t^2) / (1 - t)^{n+1}: the
// numerator by repeated convolution, the denominator by the binomial series.
fn series_by_binomials(n: usize, up_to: usize) -> Vec<i128> {
    let mut num = vec![1i128];
    for k in 3..=n.saturating_sub(3) {
        let f = [1, k as i128, 1];
        let mut next = vec![0; num.len() + 2];
        for (i, a) in num.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        num = next;
    }
    (0..=up_to)
        .map(|d| num.iter().enumerate().filter(|(j, _)| *j <= d).map(|(j, c)| c * binom((d - j + n) as i128, n as i128)).sum())
        .collect()
}

#[test]
fn series_oracles_agree() {
    assert_eq!(&series_by_binomials(6, 2), &[1, 10, 50]);
    for n in 5..=10 {
        assert_eq!(series_oracle(n, 8), series_by_binomials(n, 8), "n={n}");
    }
}

#[test]
fn reduced_presentation_hilbert_counts() {
    for n in 5..=7 {
        let spec = u_n_reduced::<Fp>(n, &101).unwrap();
        let counts = spec.ideal.standard_monomial_counts(5).unwrap();
        let want: Vec<u64> = series_by_binomials(n, 5).into_iter().map(|x| x as u64).collect();
        assert_eq!(counts, want, "n={n}");
    }
    assert!(check_hilbert_series::<Rational>(6, 4, &()).passed());
}

#[test]
fn generator_weight_table() {
    // frozen: (n-1)(n-2)/2 in weight 1 from n = 5 on
    let want: BTreeMap<usize, BTreeMap<u32, usize>> = BTreeMap::from([
        (1, BTreeMap::from([(4, 1), (6, 1)])),
        (2, BTreeMap::from([(2, 1), (3, 1), (4, 1)])),
        (3, BTreeMap::from([(1, 1), (2, 2), (3, 1)])),
        (4, BTreeMap::from([(1, 3), (2, 2)])),
        (5, BTreeMap::from([(1, 6)])),
        (6, BTreeMap::from([(1, 10)])),
        (7, BTreeMap::from([(1, 15)])),
    ]);
    for (&n, w) in &want {
        assert_eq!(&expected_generator_weights(n), w);
        assert!(check_tangent_and_weights::<Rational>(n, &()).passed(), "n={n}");
    }
    for n in 1..=5 {
        let spec = special_moduli::<Rational>(n, &()).unwrap();
        assert!(spec.ideal.is_empty());
        assert_eq!(minimal_generator_weights(&spec).unwrap(), want[&n]);
    }
    assert!(special_moduli::<Rational>(6, &()).is_err());
}

#[test]
fn full_and_reduced_presentations() {
    for n in 5..=6 {
        assert!(check_full_reduced_consistency::<Fp>(n, &101).passed(), "n={n}");
        let full = u_n_full::<Fp>(n, &101).unwrap();
        let red = u_n_reduced::<Fp>(n, &101).unwrap();
        assert!(full.ring.nvars() > red.ring.nvars());
        assert!(full.ideal.homogeneity_check() && red.ideal.homogeneity_check());
    }
}

#[test]
fn transpositions() {
    assert!(Transposition::new(2, 2).is_err());
    assert_eq!(Transposition::new(4, 2).unwrap(), Transposition(2, 4));
    assert_eq!("(13)".parse::<Transposition>().unwrap(), Transposition(1, 3));
    assert_eq!("(3,11)".parse::<Transposition>().unwrap().to_string(), "(3,11)");
    let spec = u_n_reduced::<Rational>(5, &()).unwrap();
    assert!(sn_involution(&spec, Transposition(1, 6)).is_err());
    assert!(sn_involution(&special_moduli::<Rational>(5, &()).unwrap(), Transposition(1, 3)).is_err());
}

#[test]
fn involutions_square_to_identity() {
    let spec = u_n_reduced::<Rational>(6, &()).unwrap();
    for (i, j) in [(1, 3), (2, 3), (2, 4), (1, 2), (3, 5), (4, 6)] {
        let s = sn_involution(&spec, Transposition(i, j)).unwrap();
        for k in 0..spec.ring.nvars() {
            let x = Polynomial::var(&spec.ring, k);
            assert_eq!(s.apply(&s.apply(&x).unwrap()).unwrap(), x, "({i}{j}) on {}", spec.ring.vars[k].name);
        }
    }
    for (i, j) in [(1, 3), (2, 3), (2, 4), (1, 2), (3, 5)] {
        assert!(check_sn_action::<Fp>(5, Transposition(i, j), &101).passed());
    }
}

#[test]
fn special_points_lie_on_un() {
    for n in 6..=7 {
        let spec = u_n_reduced::<Rational>(n, &()).unwrap();
        for i in 1..n {
            let pt = special_point_pin(&spec, i).unwrap();
            assert!(spec.ideal.vanishes_at(&pt), "P_{i}{n}");
        }
        assert!(special_point_pin(&spec, n).is_err());
        assert!(spec.ideal.vanishes_at(&wheel_point(&spec).unwrap()));
    }
}

// Projective solutions of y_i y_j = y_2 y_3 (2 <= i < j < n, (i, j) != (2, 3))
// by enumerating every normalized vector over F_p.
fn brute_force_blowup(n: usize, p: u64) -> BTreeSet<Vec<u64>> {
    let m = n - 2;
    let mut out = BTreeSet::new();
    for lead in 0..m {
        let free = m - lead - 1;
        for code in 0..p.pow(free as u32) {
            let mut y = vec![0u64; m];
            y[lead] = 1;
            let mut c = code;
            for slot in y.iter_mut().skip(lead + 1) {
                *slot = c % p;
                c /= p;
            }
            let rhs = y[0] * y[1] % p;
            let ok = (0..m).all(|a| (a + 1..m).all(|b| (a, b) == (0, 1) || y[a] * y[b] % p == rhs));
            if ok {
                out.insert(y);
            }
        }
    }
    out
}

#[test]
fn blowup_points_by_enumeration() {
    for (n, p) in [(6, 101), (7, 13)] {
        let found = brute_force_blowup(n, p);
        assert_eq!(found.len(), n - 1, "n={n}");
        let listed: BTreeSet<Vec<u64>> =
            blowup_solutions::<Fp>(n, &p).iter().map(|y| y.iter().map(|c| c.residue()).collect()).collect();
        assert_eq!(found, listed);
    }
    assert!(check_blowup_points::<Rational>(6, &()).passed());
    for i in [1, 2, 4] {
        assert!(check_component_ideals::<Rational>(6, i, &()).passed(), "i={i}");
    }
}

#[test]
fn fibers_have_degree_n() {
    let samples = fiber_sample_points::<Fp>(6, 2, 9, &101).unwrap();
    assert_eq!(samples.len(), 2 + 5 + 2);
    for s in &samples {
        let v = check_fiber_hilbert(s, 3);
        assert!(v.passed(), "{}: {:?}", s.label, v.witness);
    }
}

#[test]
fn substitution_and_wheel() {
    for n in 4..=5 {
        assert!(check_substitution_iso::<Rational>(n, &()).passed(), "n={n}");
    }
    for n in 3..=6 {
        assert!(check_wheel::<Rational>(n, &()).passed(), "n={n}");
    }
    let w = wheel_data::<Rational>(4, &()).unwrap();
    assert_eq!(w.images.len(), 4);
    assert!(w.images.iter().all(|c| c.len() == 3));
    assert!(wheel_data::<Rational>(2, &()).is_err());
}

#[test]
fn laurent_arithmetic() {
    let p = 3u64;
    let x = Laurent::<Fp>::from_ints(&p, &[(2, 1)]);
    // d/dt t^3 = 3 t^2 = 0 in characteristic 3
    assert!(x.mul(&Laurent::from_ints(&p, &[(1, 1)])).derivative(&p).is_zero());
    assert_eq!(x.pow(2, &p), Laurent::from_ints(&p, &[(4, 1)]));
    assert_eq!(Laurent::<Fp>::from_ints(&p, &[(-1, 1)]).derivative(&p), Laurent::from_ints(&p, &[(-2, 2)]));
    assert!(Laurent::<Fp>::from_ints(&p, &[(0, 3)]).is_zero());
}

#[test]
fn charp_fields() {
    assert!(check_charp_fields(CharPCase::Cusp2).passed());
    assert!(check_charp_fields(CharPCase::Tacnode2).passed());
    for case in CharPCase::ALL {
        assert!(!charp_vector_fields(case).is_empty());
        assert!(check_charp_fields_with(case, 5).failed(), "{case} at p = 5");
        assert_eq!(case.to_string().parse::<CharPCase>().unwrap(), case);
    }
    // The listed char-3 cusp lifts do not satisfy the push-forward identity:
    // x^2 d_x pulls back to t^4 while its listed lift t^2 d_t gives 2 t^3.
    let v = check_charp_fields(CharPCase::Cusp3);
    assert!(v.failed());
    assert_eq!(v.witness.as_ref().unwrap()["field"], "x^2*d_x");
}

#[test]
fn field_generic_results_agree() {
    let q = u_n_reduced::<Rational>(6, &()).unwrap().ideal.standard_monomial_counts(4).unwrap();
    let f = u_n_reduced::<Fp>(6, &211).unwrap().ideal.standard_monomial_counts(4).unwrap();
    assert_eq!(q, f);
}
