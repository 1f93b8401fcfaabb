use moduli_core::grassmannian::{
    check_l_intersection, check_l_intersection_with, check_random_sections, check_section_curve, drop_form_section, form_rank, l_data,
    p5, plucker_ideal, plucker_ring, random_section, PluckerPoint,
};
use moduli_core::{Field, Fp, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Hilbert function of Gr(2,5) in its Pluecker embedding.
fn gr25_hilbert(m: u64) -> u64 {
    (m + 1) * (m + 2) * (m + 2) * (m + 3) * (m + 3) * (m + 4) / 144
}

#[test]
fn plucker_quadrics_cut_out_gr25() {
    let ring = plucker_ring::<Rational>(&());
    let id = plucker_ideal(&ring);
    assert_eq!(id.len(), 5);
    let want: Vec<u64> = (0..=5).map(gr25_hilbert).collect();
    assert_eq!(&want[..3], &[1, 10, 50]);
    assert_eq!(id.standard_monomial_counts(5).unwrap(), want);
}

#[test]
fn fifth_point() {
    let ring = plucker_ring::<Rational>(&());
    let data = l_data(&ring);
    let q = p5::<Rational>(&());
    assert!(q.on_grassmannian());
    assert!(data.forms.iter().all(|(_, f)| f.eval(&q.coords).is_zero()));
    assert!(data.points.iter().all(|p| p.on_grassmannian() && !p.same_point(&q)));
    let forms: Vec<_> = data.forms.iter().map(|f| f.1.clone()).collect();
    assert_eq!(form_rank(&forms).unwrap(), 6);
    assert!(check_l_intersection::<Rational>(&()).passed());
    assert!(check_l_intersection::<Fp>(&211).passed());
    let off = PluckerPoint::from_ints(&(), [1, -1, -1, 1, 1, 1, 0, 0, -1, 1]);
    assert!(check_l_intersection_with(&ring, &off, "perturbed").failed());
}

#[test]
fn sections_through_l() {
    let ring = plucker_ring::<Fp>(&211);
    for k in 0..6 {
        assert!(check_section_curve(&ring, &drop_form_section(&ring, k), 4, "drop").passed(), "drop {k}");
    }
    assert!(check_section_curve(&ring, &l_data(&ring).forms, 4, "six forms").failed());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = random_section(&ring, &mut rng);
    assert_eq!(form_rank(&s.iter().map(|f| f.1.clone()).collect::<Vec<_>>()).unwrap(), 5);
    assert!(check_random_sections::<Rational>(&(), 2, 1, 4).passed());
    assert_eq!(check_random_sections::<Fp>(&211, 2, 1, 3).untimed(), check_random_sections::<Fp>(&211, 2, 1, 3).untimed());
}

proptest! {
    #[test]
    fn wedges_lie_on_gr25(r in proptest::collection::vec(-9i64..9, 10)) {
        let rows = [r[..5].iter().map(|&x| Fp::new(x, 101)).collect(), r[5..].iter().map(|&x| Fp::new(x, 101)).collect()];
        let w = PluckerPoint::wedge(&rows);
        prop_assert!(w.is_zero() || w.on_grassmannian());
    }
}
