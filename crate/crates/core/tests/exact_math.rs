use std::str::FromStr;

use moduli_core::exact_math::{bareiss_rank, is_prime, next_prime, scalar_arith, MathError, ScalarOp};
use moduli_core::{ExactScalar, Field, FieldKind, Fp, FpMatrix, QMatrix, Rational};
use proptest::prelude::*;

fn naive_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[test]
fn primes_match_trial_division() {
    for n in 0..5000 {
        assert_eq!(is_prime(n), naive_prime(n), "{n}");
    }
    assert_eq!(next_prime(100), 101);
    assert_eq!(next_prime(101), 101);
    assert_eq!(next_prime(200), 211);
    assert!(is_prime((1 << 61) - 1));
}

#[test]
fn field_kind_text() {
    for k in [FieldKind::Rational, FieldKind::Prime(2), FieldKind::Prime(101), FieldKind::Prime(211)] {
        assert_eq!(FieldKind::from_str(&k.to_string()).unwrap(), k);
    }
    assert_eq!("Q".parse::<FieldKind>().unwrap().characteristic(), 0);
    assert!(matches!("Fp:100".parse::<FieldKind>(), Err(MathError::BadModulus(100))));
    assert!("R".parse::<FieldKind>().is_err());
}

#[test]
fn tagged_scalars() {
    let a = ExactScalar::rational(1, 2);
    let b = ExactScalar::rational(1, 3);
    assert_eq!(scalar_arith(ScalarOp::Add, &a, &b).unwrap(), ExactScalar::rational(5, 6));
    let p = ExactScalar::prime(3, 7).unwrap();
    assert!(matches!(scalar_arith(ScalarOp::Mul, &a, &p), Err(MathError::MixedFields(..))));
    let z = ExactScalar::prime(0, 7).unwrap();
    assert!(scalar_arith(ScalarOp::Div, &p, &z).is_err());
    assert_eq!(scalar_arith(ScalarOp::Div, &ExactScalar::prime(1, 7).unwrap(), &p).unwrap(), ExactScalar::prime(5, 7).unwrap());
    assert!(ExactScalar::prime(1, 8).is_err());
    for s in ["3/4", "-2", "5 mod 7"] {
        let x: ExactScalar = s.parse().unwrap();
        assert_eq!(x.to_string(), s);
    }
}

#[test]
fn coefficient_parsing() {
    assert_eq!(Rational::parse_coeff(&(), "-6/4").unwrap(), Rational::new(-3, 2));
    assert_eq!(Fp::parse_coeff(&7, "1/2").unwrap(), Fp::new(4, 7));
    assert!(Fp::parse_coeff(&7, "1/7").is_err());
    assert!(Rational::parse_coeff(&(), "x").is_err());
}

fn q(v: i64) -> Rational {
    Rational::int(v)
}

#[test]
fn kernel_of_small_matrix() {
    let m = QMatrix::from_dense(&(), &[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]]);
    let (rank, ker) = m.rank_and_kernel();
    assert_eq!(rank, 2);
    assert_eq!(ker.len(), 1);
    assert!(m.mul_vec(&ker[0]).unwrap().iter().all(|x| x.is_zero()));
    assert_eq!(bareiss_rank(&m), 2);
    assert_eq!(m.transpose().rank(), 2);
    assert!(m.mul_vec(&[q(1)]).is_err());
}

proptest! {
    #[test]
    fn fp_field_axioms(a in 0i64..101, b in 0i64..101, c in 0i64..101) {
        let (a, b, c) = (Fp::new(a, 101), Fp::new(b, 101), Fp::new(c, 101));
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.minus(&a), Fp::zero(&101));
        prop_assert_eq!(a.pow(101), a);
        match a.inverse() {
            Some(i) => prop_assert!(a.times(&i).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn rational_field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let (x, y) = (Rational::new(a, b), Rational::new(c, d));
        prop_assert_eq!(x.plus(&y).minus(&y), x.clone());
        if !y.is_zero() {
            prop_assert_eq!(x.times(&y).divided(&y).unwrap(), x.clone());
        }
        prop_assert_eq!(Rational::from_exact(&(), &x.to_exact()).unwrap(), x.clone());
    }

    // rank + nullity = columns, kernel vectors are killed, and the
    // fraction-free rank agrees with the field rank.
    #[test]
    fn rank_nullity(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..6)) {
        let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let m = QMatrix::from_dense(&(), &dense);
        let (rank, ker) = m.rank_and_kernel();
        prop_assert_eq!(rank + ker.len(), 5);
        for k in &ker {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(bareiss_rank(&m), rank);
        prop_assert_eq!(m.transpose().rank(), rank);
        let fp: Vec<Vec<Fp>> = rows.iter().map(|r| r.iter().map(|&x| Fp::new(x, 1_000_003)).collect()).collect();
        prop_assert_eq!(FpMatrix::from_dense(&1_000_003, &fp).rank(), rank);
    }
}
