//! The acceptance battery: thirteen criteria, each a list of independent jobs.

use serde_json::json;

use super::*;
use crate::einf_algebra::{
    ainf_check, build_e, check_e_algebra, check_hochschild, check_hochschild_with, check_rescale_law, check_stabilization,
    check_trivial_ainf, expected_hh2, random_mu3,
};
use crate::exact_math::{Fp, Rational};
use crate::grassmannian::{check_l_intersection, check_l_intersection_with, check_random_sections, check_section_curve, l_data, plucker_ring, PluckerPoint};
use crate::moduli::{curve_over_un, special_point_pin, u_n_full, u_n_reduced, CharPCase, Transposition};

type JobFn = Box<dyn Fn() -> Verdict + Send + Sync>;

pub struct Job {
    pub criterion: u32,
    pub label: String,
    run: JobFn,
}

impl Job {
    fn new(criterion: u32, label: impl Into<String>, f: impl Fn() -> Verdict + Send + Sync + 'static) -> Self {
        Job { criterion, label: label.into(), run: Box::new(f) }
    }
    pub fn run(&self) -> Verdict {
        (self.run)()
    }
}

pub const CRITERIA: [(u32, &str); 13] = [
    (1, "diamond lemma, symbolic"),
    (2, "Hilbert series"),
    (3, "fiber Hilbert function"),
    (4, "substitution isomorphism"),
    (5, "tangent weights"),
    (6, "Hochschild cohomology"),
    (7, "S_n action"),
    (8, "blow-up points"),
    (9, "Grassmannian"),
    (10, "wheel of lines"),
    (11, "char-p vector fields"),
    (12, "E-algebra"),
    (13, "mutation soundness"),
];

/// A control: passes exactly when the wrapped check fails.
pub fn expect_failure(v: Verdict) -> Verdict {
    let run = Run::new(&format!("control:{}", v.check), json!(v.params));
    if v.failed() {
        run.pass(v.witness)
    } else {
        run.fail(json!({"status": v.status, "reason": "mutated input was not rejected"}))
    }
}

const P: u64 = 101;

/// Jobs of one criterion; random choices are drawn from `seed`.
pub fn criterion_jobs(id: u32, seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    match id {
        1 => {
            for n in 4..=8 {
                jobs.push(Job::new(1, format!("diamond n={n}"), move || check_diamond_symbolic::<Rational>(n, &())));
            }
            jobs.push(Job::new(1, "diamond control", mutated_diamond));
        }
        2 => {
            for n in 5..=9 {
                jobs.push(Job::new(2, format!("hilbert n={n}"), move || check_hilbert_series::<Fp>(n, 8, &P)));
            }
        }
        3 => {
            for n in [6, 7] {
                jobs.push(Job::new(3, format!("fiber n={n}"), move || {
                    let run = Run::new("fiber-hilbert-samples", json!({"n": n, "randoms": 5, "seed": seed, "field": format!("F_{P}")}));
                    match fiber_sample_points::<Fp>(n, 5, seed, &P) {
                        Ok(samples) => {
                            for s in &samples {
                                let v = check_fiber_hilbert(s, 5);
                                if !v.passed() {
                                    return run.fail(json!({"point": s.label, "verdict": v.witness}));
                                }
                            }
                            run.pass(Some(json!({"points": samples.len()})))
                        }
                        Err(e) => run.fail(json!({"error": e.to_string()})),
                    }
                }));
            }
        }
        4 => {
            for n in 4..=8 {
                jobs.push(Job::new(4, format!("substitution n={n}"), move || check_substitution_iso::<Fp>(n, &P)));
            }
            jobs.push(Job::new(4, "substitution control", mutated_substitution));
        }
        5 => {
            for n in 1..=7 {
                jobs.push(Job::new(5, format!("tangent n={n}"), move || check_tangent_and_weights::<Rational>(n, &())));
            }
        }
        6 => {
            for n in 2..=5 {
                jobs.push(Job::new(6, format!("hochschild n={n} Q"), move || check_hochschild::<Rational>(n, &())));
                jobs.push(Job::new(6, format!("hochschild n={n} F_{P}"), move || check_hochschild::<Fp>(n, &P)));
            }
            jobs.push(Job::new(6, "hochschild n=2 F_2", || check_hochschild::<Fp>(2, &2)));
        }
        7 => {
            for n in 5..=7 {
                for (i, j) in [(1, 3), (2, 3), (2, 4), (1, 2), (3, 5)] {
                    jobs.push(Job::new(7, format!("sn n={n} ({i}{j})"), move || check_sn_action::<Rational>(n, Transposition(i, j), &())));
                }
            }
        }
        8 => {
            for n in [6, 7] {
                jobs.push(Job::new(8, format!("blowup n={n}"), move || check_blowup_points::<Rational>(n, &())));
                for i in [1, 2, 4] {
                    jobs.push(Job::new(8, format!("components n={n} i={i}"), move || check_component_ideals::<Rational>(n, i, &())));
                }
            }
        }
        9 => {
            jobs.push(Job::new(9, "L intersection Q", || check_l_intersection::<Rational>(&())));
            jobs.push(Job::new(9, "random sections Q", move || check_random_sections::<Rational>(&(), 10, seed, 5)));
            jobs.push(Job::new(9, "random sections F_211", move || check_random_sections::<Fp>(&211, 10, seed, 5)));
        }
        10 => {
            for n in 3..=8 {
                jobs.push(Job::new(10, format!("wheel n={n}"), move || check_wheel::<Rational>(n, &())));
            }
        }
        11 => {
            for case in CharPCase::ALL {
                jobs.push(Job::new(11, format!("charp {case}"), move || check_charp_fields(case)));
                jobs.push(Job::new(11, format!("charp {case} at p=5"), move || expect_failure(check_charp_fields_with(case, 5))));
            }
        }
        12 => {
            for n in 2..=8 {
                jobs.push(Job::new(12, format!("e-algebra n={n}"), move || check_e_algebra::<Rational>(n, &())));
            }
            for n in 2..=6 {
                jobs.push(Job::new(12, format!("trivial ainf n={n}"), move || check_trivial_ainf::<Rational>(n, 6, &())));
            }
            for n in 2..=4 {
                jobs.push(Job::new(12, format!("rescale n={n}"), move || check_rescale_law::<Rational>(n, seed, &())));
            }
            jobs.push(Job::new(12, "stabilization", || check_stabilization(8)));
        }
        13 => jobs = mutation_jobs(seed),
        _ => {}
    }
    jobs
}

fn mutated_diamond() -> Verdict {
    let mut spec = u_n_full::<Rational>(6, &()).expect("n = 6");
    spec.ideal.gens.retain(|(n, _)| !n.starts_with("triple"));
    expect_failure(check_diamond_symbolic_with(&spec, "triples dropped"))
}

fn mutated_substitution() -> Verdict {
    let (c, t, m) = mutated_substitution_map::<Fp>(5, &P).expect("n = 5");
    expect_failure(check_substitution_iso_with(&c, &t, &m, "x_3 shifted"))
}

/// Every check run on a deliberately broken input.
pub fn mutation_jobs(seed: u64) -> Vec<Job> {
    let mut jobs = vec![
        Job::new(13, "diamond", mutated_diamond),
        Job::new(13, "hilbert series", || {
            let mut spec = u_n_reduced::<Fp>(6, &P).expect("n = 6");
            spec.ideal.gens.retain(|(n, _)| !n.starts_with("triple"));
            expect_failure(check_hilbert_series_with(&spec, 6, "triples dropped"))
        }),
        Job::new(13, "fiber hilbert", || {
            let spec = u_n_reduced::<Fp>(6, &P).expect("n = 6");
            let pt = vec![crate::exact_math::Field::zero(&P); spec.ring.nvars()];
            let mut curve = curve_over_un(&spec, Some(&pt)).expect("fiber");
            curve.affine.gens.remove(0);
            expect_failure(check_fiber_hilbert_with(&curve, 5, "origin, one relation dropped"))
        }),
        Job::new(13, "substitution", mutated_substitution),
        Job::new(13, "tangent weights", || {
            let mut spec = u_n_reduced::<Rational>(6, &()).expect("n = 6");
            spec.ideal.gens.retain(|(n, _)| !n.starts_with("pair_c"));
            expect_failure(check_tangent_and_weights_with(&spec, "pair relations dropped"))
        }),
        Job::new(13, "hochschild", || {
            let alg = build_e::<Fp>(2, &2).expect("n = 2");
            expect_failure(check_hochschild_with(&alg, &expected_hh2(2, 0), true, "characteristic-0 table in characteristic 2"))
        }),
        Job::new(13, "sn action", || {
            let spec = u_n_reduced::<Rational>(6, &()).expect("n = 6");
            let sigma = mutated_sn_involution(&spec).expect("n = 6");
            expect_failure(check_sn_action_with(&spec, &sigma, "a shifted"))
        }),
        Job::new(13, "blowup points", || {
            let spec = u_n_reduced::<Rational>(6, &()).expect("n = 6");
            let pins = mutated_blowup_points(&spec).expect("n = 6");
            expect_failure(check_blowup_points_with(&spec, &pins, &[101], "sign flipped"))
        }),
        Job::new(13, "component ideals", || {
            let spec = u_n_reduced::<Rational>(6, &()).expect("n = 6");
            let pt = special_point_pin(&spec, 1).expect("P_16");
            let curve = curve_over_un(&spec, Some(&pt)).expect("fiber");
            expect_failure(check_component_ideals_with(&curve, &mutated_component_ideals(&curve, 1), 1, "conic replaced"))
        }),
        Job::new(13, "grassmannian points", || {
            let ring = plucker_ring::<Rational>(&());
            let bad = PluckerPoint::from_ints(&(), [1, -1, -1, 1, 1, 1, 0, 0, 1, -1]);
            expect_failure(check_l_intersection_with(&ring, &bad, "p5 sign flipped"))
        }),
        Job::new(13, "grassmannian section", || {
            let ring = plucker_ring::<Rational>(&());
            expect_failure(check_section_curve(&ring, &l_data(&ring).forms, 5, "all six L forms"))
        }),
        Job::new(13, "wheel", || expect_failure(check_wheel_with(&mutated_wheel_data::<Rational>(5, &()).expect("n = 5"), "component swapped"))),
        Job::new(13, "ainf", move || {
            let alg = build_e::<Rational>(3, &()).expect("n = 3");
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            expect_failure(ainf_check(&alg, &random_mu3(&alg, &mut rng)))
        }),
    ];
    for case in CharPCase::ALL {
        jobs.push(Job::new(13, format!("charp {case}"), move || expect_failure(check_charp_fields_with(case, 5))));
    }
    jobs
}

/// All jobs of the battery, criterion by criterion.
pub fn suite_jobs(seed: u64) -> Vec<Job> {
    CRITERIA.iter().flat_map(|(id, _)| criterion_jobs(*id, seed)).collect()
}
