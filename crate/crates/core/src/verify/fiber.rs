use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::exact_math::Field;
use crate::moduli::{curve_over_un, random_point, special_moduli, special_point_pin, u_n_reduced, wheel_point, CurveSpec, ModuliError, ModuliSpec};
use crate::polyring::PolyError;

use super::{Run, Verdict};

/// A labelled point of U_n together with the presentation it lives in.
#[derive(Clone, Debug)]
pub struct SamplePoint<F: Field> {
    pub label: String,
    pub spec: ModuliSpec<F>,
    pub point: Vec<F>,
}

fn base_spec<F: Field>(n: usize, ctx: &F::Ctx) -> Result<ModuliSpec<F>, ModuliError> {
    if n == 3 {
        special_moduli(3, ctx)
    } else {
        u_n_reduced(n, ctx)
    }
}

/// Origin, wheel point, every P_in (n >= 6) and `randoms` random points
/// (prime fields only) seeded from `seed`.
pub fn fiber_sample_points<F: Field>(n: usize, randoms: usize, seed: u64, ctx: &F::Ctx) -> Result<Vec<SamplePoint<F>>, ModuliError> {
    let spec = base_spec::<F>(n, ctx)?;
    let mut out = vec![
        SamplePoint { label: "origin".into(), spec: spec.clone(), point: vec![F::zero(ctx); spec.ring.nvars()] },
        SamplePoint { label: "wheel".into(), spec: spec.clone(), point: wheel_point(&spec)? },
    ];
    if n >= 6 {
        for i in 1..n {
            out.push(SamplePoint { label: format!("P_{i}_{n}"), spec: spec.clone(), point: special_point_pin(&spec, i)? });
        }
    }
    if F::kind(ctx).characteristic() != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut k = 0;
        let mut attempts = 0;
        while k < randoms {
            attempts += 1;
            match random_point::<F, _>(n, ctx, &mut rng) {
                Ok((s, p)) => {
                    out.push(SamplePoint { label: format!("random[{k}](seed={seed})"), spec: s, point: p });
                    k += 1;
                }
                // an empty fiber over some intermediate point: resample
                Err(ModuliError::BadArg(_)) if attempts < 20 * randoms.max(1) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Cumulative standard-monomial counts of the fiber relations in degrees
/// `0..=m_max`, one complete basis under a degree order.
fn filtration_dims<F: Field>(curve: &CurveSpec<F>, m_max: u32) -> Result<Vec<u64>, PolyError> {
    let graded = curve.affine.standard_monomial_counts(m_max)?;
    Ok(graded
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect())
}

/// The filtered pieces F_m of the fiber coordinate ring have dimension mn.
pub fn check_fiber_hilbert_with<F: Field>(curve: &CurveSpec<F>, m_max: u32, label: &str) -> Verdict {
    let n = curve.n;
    let run = Run::new("fiber-hilbert", json!({"n": n, "point": label, "m_max": m_max}));
    match filtration_dims(curve, m_max) {
        Ok(dims) => {
            if dims[0] != 1 {
                return run.fail(json!({"m": 0, "dim": dims[0], "expected": 1}));
            }
            for m in 1..=m_max as usize {
                if dims[m] != (m * n) as u64 {
                    return run.fail(json!({"m": m, "dim": dims[m], "expected": m * n, "dims": dims}));
                }
            }
            run.pass(Some(json!({"dims": dims})))
        }
        Err(PolyError::Truncated(cap)) => run.truncated(json!({"cap": cap})),
        Err(e) => run.fail(json!({"error": e.to_string()})),
    }
}

pub fn check_fiber_hilbert<F: Field>(sample: &SamplePoint<F>, m_max: u32) -> Verdict {
    match curve_over_un(&sample.spec, Some(&sample.point)) {
        Ok(curve) => check_fiber_hilbert_with(&curve, m_max, &sample.label),
        Err(e) => Run::new("fiber-hilbert", json!({"n": sample.spec.n, "point": sample.label}))
            .fail(json!({"error": e.to_string()})),
    }
}
