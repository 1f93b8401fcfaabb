//! Named checks and how each expands into jobs for a given n.

use moduli_core::einf_algebra::{check_e_algebra, check_hochschild, check_rescale_law, check_stabilization, check_trivial_ainf};
use moduli_core::exact_math::{Field, FieldKind, Fp, Rational};
use moduli_core::grassmannian::{check_l_intersection, check_random_sections};
use moduli_core::moduli::{CharPCase, Transposition};
use moduli_core::verify::*;

pub const CHECKS: [&str; 17] = [
    "diamond-symbolic",
    "diamond-numeric",
    "hilbert-series",
    "fiber-hilbert",
    "substitution-iso",
    "full-reduced",
    "tangent-weights",
    "sn-action",
    "blowup-points",
    "component-ideals",
    "grassmannian",
    "wheel",
    "charp",
    "e-algebra",
    "hochschild",
    "ainf",
    "stabilization",
];

#[derive(Clone, Debug)]
pub struct Opts {
    pub field: FieldKind,
    pub seed: Option<u64>,
    pub degree: u32,
    pub m_max: u32,
    pub i: Option<usize>,
}

pub struct Job {
    pub label: String,
    pub run: Box<dyn Fn() -> Vec<Verdict> + Send + Sync>,
}

fn job(label: String, f: impl Fn() -> Vec<Verdict> + Send + Sync + 'static) -> Job {
    Job { label, run: Box::new(f) }
}

/// Range of n a check accepts; `None` for checks that do not take n.
pub fn n_range(name: &str) -> Option<(usize, usize)> {
    let r = match name {
        "diamond-symbolic" | "diamond-numeric" | "full-reduced" => (4, usize::MAX),
        "hilbert-series" | "sn-action" => (5, usize::MAX),
        "fiber-hilbert" | "substitution-iso" | "wheel" => (3, usize::MAX),
        "tangent-weights" => (1, usize::MAX),
        "blowup-points" | "component-ideals" => (6, usize::MAX),
        "e-algebra" | "hochschild" | "ainf" => (2, usize::MAX),
        _ => return None,
    };
    Some(r)
}

/// Whether the check draws random choices (and so needs a seed).
pub fn randomized(name: &str, field: FieldKind) -> bool {
    match name {
        "grassmannian" | "ainf" => true,
        "fiber-hilbert" | "diamond-numeric" => field != FieldKind::Rational,
        _ => false,
    }
}

pub fn jobs(name: &str, n: Option<usize>, opts: &Opts) -> Vec<Job> {
    match opts.field {
        FieldKind::Rational => jobs_for::<Rational>((), name, n, opts),
        FieldKind::Prime(p) => jobs_for::<Fp>(p, name, n, opts),
    }
}

fn jobs_for<F: Field>(ctx: F::Ctx, name: &str, n: Option<usize>, opts: &Opts) -> Vec<Job> {
    let seed = opts.seed.unwrap_or(0);
    let (d, m_max) = (opts.degree, opts.m_max);
    let prime = ctx_is_prime::<F>(&ctx);
    let nn = n.unwrap_or(0);
    let label = |s: &str| match n {
        Some(n) => format!("{s} n={n}"),
        None => s.to_string(),
    };
    let c = ctx.clone();
    match name {
        "diamond-symbolic" => vec![job(label(name), move || vec![check_diamond_symbolic::<F>(nn, &c)])],
        "diamond-numeric" => vec![job(label(name), move || {
            let mut pts = vec![NumericPoint::Origin, NumericPoint::Wheel];
            if prime {
                pts.extend([NumericPoint::RandomOn(seed), NumericPoint::RandomOff(seed)]);
            }
            pts.into_iter().map(|p| check_diamond_numeric::<F>(nn, p, &c)).collect()
        })],
        "hilbert-series" => vec![job(label(name), move || vec![check_hilbert_series::<F>(nn, d, &c)])],
        "fiber-hilbert" => vec![job(label(name), move || match fiber_sample_points::<F>(nn, if prime { 5 } else { 0 }, seed, &c) {
            Ok(samples) => samples.iter().map(|s| check_fiber_hilbert(s, m_max)).collect(),
            Err(e) => vec![error_verdict("fiber-hilbert", nn, e.to_string())],
        })],
        "substitution-iso" => vec![job(label(name), move || vec![check_substitution_iso::<F>(nn, &c)])],
        "full-reduced" => vec![job(label(name), move || vec![check_full_reduced_consistency::<F>(nn, &c)])],
        "tangent-weights" => vec![job(label(name), move || vec![check_tangent_and_weights::<F>(nn, &c)])],
        "sn-action" => vec![job(label(name), move || {
            let mut ts = vec![(1, 3), (2, 3), (2, 4), (1, 2), (3, 5), (1, nn), (2, nn)];
            ts.dedup();
            ts.into_iter().map(|(i, j)| check_sn_action::<F>(nn, Transposition(i, j), &c)).collect()
        })],
        "blowup-points" => vec![job(label(name), move || vec![check_blowup_points::<F>(nn, &c)])],
        "component-ideals" => {
            let is: Vec<usize> = match opts.i {
                Some(i) => vec![i],
                None => (1..nn).collect(),
            };
            vec![job(label(name), move || is.iter().map(|&i| check_component_ideals::<F>(nn, i, &c)).collect())]
        }
        "grassmannian" => vec![job(label(name), move || vec![check_l_intersection::<F>(&c), check_random_sections::<F>(&c, 10, seed, m_max)])],
        "wheel" => vec![job(label(name), move || vec![check_wheel::<F>(nn, &c)])],
        "charp" => vec![job(label(name), || CharPCase::ALL.into_iter().map(check_charp_fields).collect())],
        "e-algebra" => vec![job(label(name), move || vec![check_e_algebra::<F>(nn, &c)])],
        "hochschild" => vec![job(label(name), move || vec![check_hochschild::<F>(nn, &c)])],
        "ainf" => vec![job(label(name), move || vec![check_trivial_ainf::<F>(nn, 6, &c), check_rescale_law::<F>(nn, seed, &c)])],
        "stabilization" => vec![job(label(name), || vec![check_stabilization(8)])],
        _ => Vec::new(),
    }
}

fn ctx_is_prime<F: Field>(ctx: &F::Ctx) -> bool {
    F::kind(ctx).characteristic() != 0
}

fn error_verdict(check: &str, n: usize, e: String) -> Verdict {
    let v = serde_json::json!({"check": check, "params": {"n": n}, "status": "fail", "witness": {"error": e}, "millis": 0});
    serde_json::from_value(v).expect("verdict shape")
}
