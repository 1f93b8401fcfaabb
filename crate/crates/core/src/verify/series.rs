use serde_json::json;

use crate::exact_math::Field;
use crate::moduli::{u_n_reduced, ModuliSpec};
use crate::polyring::PolyError;

use super::{Run, Verdict};

/// Coefficients of prod_{k=3}^{n-3} (1 + k t + t^2) / (1 - t)^{n+1} in
/// degrees `0..=up_to`, by direct polynomial arithmetic.
pub fn series_oracle(n: usize, up_to: u32) -> Vec<i128> {
    let len = up_to as usize + 1;
    let mut s = vec![0i128; len];
    s[0] = 1;
    for k in 3..=n.saturating_sub(3) {
        let mut next = vec![0i128; len];
        for (i, &c) in s.iter().enumerate() {
            for (j, f) in [1, k as i128, 1].into_iter().enumerate() {
                if i + j < len {
                    next[i + j] += c * f;
                }
            }
        }
        s = next;
    }
    for _ in 0..=n {
        for i in 1..len {
            s[i] += s[i - 1];
        }
    }
    s
}

/// Graded standard-monomial counts of `spec` against the product formula.
pub fn check_hilbert_series_with<F: Field>(spec: &ModuliSpec<F>, up_to: u32, label: &str) -> Verdict {
    let run = Run::new("hilbert-series", json!({"n": spec.n, "D": up_to, "ideal": label}));
    let expected = series_oracle(spec.n, up_to);
    match spec.ideal.standard_monomial_counts(up_to) {
        Ok(counts) => {
            for (d, (&got, &want)) in counts.iter().zip(&expected).enumerate() {
                if got as i128 != want {
                    return run.fail(json!({"degree": d, "count": got, "expected": want as i64, "counts": counts}));
                }
            }
            run.pass(Some(json!({"counts": counts})))
        }
        Err(PolyError::Truncated(cap)) => run.truncated(json!({"cap": cap})),
        Err(e) => run.fail(json!({"error": e.to_string()})),
    }
}

pub fn check_hilbert_series<F: Field>(n: usize, up_to: u32, ctx: &F::Ctx) -> Verdict {
    if n < 5 {
        return Run::new("hilbert-series", json!({"n": n, "D": up_to})).fail(json!({"error": "n >= 5 required"}));
    }
    match u_n_reduced::<F>(n, ctx) {
        Ok(spec) => check_hilbert_series_with(&spec, up_to, "reduced"),
        Err(e) => Run::new("hilbert-series", json!({"n": n, "D": up_to})).fail(json!({"error": e.to_string()})),
    }
}
