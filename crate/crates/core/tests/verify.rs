use moduli_core::verify::suite::{criterion_jobs, expect_failure, mutation_jobs, CRITERIA};
use moduli_core::verify::{check_diamond_numeric, check_diamond_symbolic, check_wheel, NumericPoint, Status, Verdict};
use moduli_core::{Fp, Rational};

#[test]
fn diamond_small_n() {
    for n in 4..=5 {
        let v = check_diamond_symbolic::<Rational>(n, &());
        assert!(v.passed(), "n={n}: {:?}", v.witness);
    }
    let v = check_diamond_numeric::<Fp>(6, NumericPoint::Wheel, &101);
    assert!(v.passed(), "{:?}", v.witness);
}

#[test]
fn controls_invert_verdicts() {
    let good = check_wheel::<Rational>(4, &());
    assert!(good.passed());
    let c = expect_failure(good);
    assert!(c.failed());
    assert!(c.check.starts_with("control:"));
}

// Every mutated input is rejected by its check.
#[test]
fn mutation_meta_test() {
    let jobs = mutation_jobs(17);
    assert!(jobs.len() >= 15);
    for j in &jobs {
        let v = j.run();
        assert_eq!(v.status, Status::Pass, "{}: {:?}", j.label, v.witness);
        assert!(v.check.starts_with("control:"), "{}", j.label);
    }
}

#[test]
fn criteria_are_numbered() {
    let ids: Vec<u32> = CRITERIA.iter().map(|c| c.0).collect();
    assert_eq!(ids, (1..=13).collect::<Vec<_>>());
    for (id, _) in CRITERIA {
        assert!(!criterion_jobs(id, 1).is_empty(), "criterion {id}");
    }
}

#[test]
fn verdict_json_round_trip() {
    let v = check_wheel::<Rational>(3, &());
    let s = serde_json::to_string(&v).unwrap();
    let back: Verdict = serde_json::from_str(&s).unwrap();
    assert_eq!(back, v);
    assert_eq!(v.untimed().millis, 0);
}
