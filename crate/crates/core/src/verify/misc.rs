use std::collections::BTreeMap;

use serde_json::json;

use crate::exact_math::{Field, Fp, SparseMatrix};
use crate::moduli::{
    charp_vector_fields, curve_over_un, special_moduli, u_n_reduced, wheel_data, wheel_point, wheel_relations, CharPCase,
    CharPVectorField, ModuliSpec, WheelData,
};
use crate::polyring::RingMap;

use super::{containment_verdict, contains_all, Contain, Run, Verdict};

/// Pull-back of x and y to each branch of the normalization.
fn branch_coords(case: CharPCase, p: u64) -> Vec<(Laurent, Laurent)> {
    let l = |terms: &[(i32, i64)]| Laurent::from_ints(&p, terms);
    if case.is_cusp() {
        vec![(l(&[(2, 1)]), l(&[(3, 1)]))]
    } else {
        vec![(l(&[(1, 1)]), l(&[(2, 1)])), (l(&[(1, 1)]), l(&[]))]
    }
}

type Laurent = crate::moduli::Laurent<Fp>;

fn pull_back(terms: &[(i64, u32, u32)], x: &Laurent, y: &Laurent, p: u64) -> Laurent {
    terms.iter().fold(Laurent::zero(), |acc, &(c, i, j)| {
        acc.add(&Laurent::monomial(0, Fp::new(c, p)).mul(&x.pow(i, &p)).mul(&y.pow(j, &p)))
    })
}

/// First branch and coordinate where the lift disagrees with the field.
fn field_mismatch(f: &CharPVectorField, p: u64) -> Option<serde_json::Value> {
    for (b, (x, y)) in branch_coords(f.case, p).iter().enumerate() {
        let g = Laurent::from_ints(&p, &f.up[b]);
        for (k, (coord, name)) in [(x, "x"), (y, "y")].into_iter().enumerate() {
            let lhs = g.mul(&coord.derivative(&p));
            let rhs = pull_back(&f.down[k], x, y, p);
            if lhs != rhs {
                return Some(json!({
                    "field": f.down_label,
                    "lift": f.up_label,
                    "branch": b,
                    "coordinate": name,
                    "lift_applied": lhs.to_string(),
                    "pulled_back": rhs.to_string(),
                }));
            }
        }
    }
    None
}

/// Each listed field and its lift agree on the branch coordinates, over F_p.
pub fn check_charp_fields_with(case: CharPCase, p: u64) -> Verdict {
    let run = Run::new("charp-fields", json!({"case": case.to_string(), "p": p}));
    let fields = charp_vector_fields(case);
    match fields.iter().find_map(|f| field_mismatch(f, p)) {
        Some(w) => run.fail(w),
        None => run.pass(Some(json!({"fields": fields.len()}))),
    }
}

pub fn check_charp_fields(case: CharPCase) -> Verdict {
    check_charp_fields_with(case, case.prime())
}

fn wheel_residual<F: Field>(data: &WheelData<F>) -> Option<serde_json::Value> {
    let n = data.n;
    let ring = crate::moduli::curve_ring::<F>(&data.ring.ctx, n, &[]);
    let rels = wheel_relations(&ring, n);
    for (k, imgs) in data.images.iter().enumerate() {
        let map = RingMap::new(&ring, &data.ring, imgs.clone()).expect("arity");
        for (name, g) in &rels.gens {
            let r = map.apply(g).expect("ring");
            if !r.is_zero() {
                return Some(json!({"component": k + 1, "relation": name, "residual": r.to_string()}));
            }
        }
    }
    None
}

/// Values of x_2..x_n at 1 on C_k and at 0 on C_{k+1} (cyclically) differ.
fn gluing_mismatch<F: Field>(data: &WheelData<F>) -> Option<serde_json::Value> {
    let n = data.n;
    let ctx = &data.ring.ctx;
    let at = |k: usize, v: i64| {
        let mut pt = vec![F::zero(ctx); n];
        pt[k] = F::from_i64(ctx, v);
        data.images[k].iter().map(|f| f.eval(&pt)).collect::<Vec<F>>()
    };
    for k in 0..n {
        let next = (k + 1) % n;
        let (a, b) = (at(k, 1), at(next, 0));
        if let Some(j) = (0..n - 1).find(|&j| a[j] != b[j]) {
            return Some(json!({
                "gluing": format!("1 on C_{} ~ 0 on C_{}", k + 1, next + 1),
                "function": format!("x_{}", j + 2),
                "values": [a[j].to_string(), b[j].to_string()],
            }));
        }
    }
    None
}

/// The wheel relations vanish on every component, the component images
/// agree at the nodes, and the relations generate the same
/// ideal as the universal curve relations at the wheel point.
pub fn check_wheel_with<F: Field>(data: &WheelData<F>, label: &str) -> Verdict {
    let n = data.n;
    let run = Run::new("wheel", json!({"n": n, "images": label}));
    if let Some(w) = wheel_residual(data).or_else(|| gluing_mismatch(data)) {
        return run.fail(w);
    }
    let ctx = &data.ring.ctx;
    let base = if n == 3 { special_moduli::<F>(3, ctx) } else { u_n_reduced::<F>(n, ctx) };
    let fiber = match base.and_then(|b| {
        let pt = wheel_point(&b)?;
        curve_over_un(&b, Some(&pt))
    }) {
        Ok(c) => c,
        Err(e) => return run.fail(json!({"error": e.to_string()})),
    };
    let rels = wheel_relations(&fiber.ring, n);
    match contains_all(&fiber.affine, &rels.gens) {
        Contain::All => {}
        other => return containment_verdict(run, "wheel in fiber", other, None),
    }
    let info = json!({"components": n, "relations": rels.len()});
    containment_verdict(run, "fiber in wheel", contains_all(&rels, &fiber.affine.gens), Some(info))
}

pub fn check_wheel<F: Field>(n: usize, ctx: &F::Ctx) -> Verdict {
    match wheel_data::<F>(n, ctx) {
        Ok(d) => check_wheel_with(&d, "standard"),
        Err(e) => Run::new("wheel", json!({"n": n})).fail(json!({"error": e.to_string()})),
    }
}

/// Wheel data with x_2 on C_2 replaced by u_2.
pub fn mutated_wheel_data<F: Field>(n: usize, ctx: &F::Ctx) -> Option<WheelData<F>> {
    let mut d = wheel_data::<F>(n, ctx).ok()?;
    d.images[1][0] = crate::polyring::Polynomial::var(&d.ring, 1);
    Some(d)
}

/// Weight multiset of a minimal generating set of the coordinate ring:
/// per weight, the variables minus the rank of the linear parts of the
/// relations of that weight.
pub fn minimal_generator_weights<F: Field>(spec: &ModuliSpec<F>) -> Result<BTreeMap<u32, usize>, crate::polyring::PolyError> {
    let w = spec.ring.weights();
    let lin = spec.ideal.linear_part()?;
    let mut out = BTreeMap::new();
    for &wt in w.iter().collect::<std::collections::BTreeSet<_>>() {
        let cols: Vec<usize> = (0..w.len()).filter(|&i| w[i] == wt).collect();
        let mut m = SparseMatrix::zeros(&spec.ring.ctx, 0, cols.len());
        for (r, (_, g)) in spec.ideal.gens.iter().enumerate() {
            if g.degree() == Some(wt) {
                let row: Vec<(usize, F)> =
                    cols.iter().enumerate().map(|(k, &i)| (k, lin.get(r, i))).filter(|(_, c)| !c.is_zero()).collect();
                m.push_row(row);
            }
        }
        let k = cols.len() - m.rank();
        if k > 0 {
            out.insert(wt, k);
        }
    }
    Ok(out)
}

/// The weight table of HH^2, which the coordinate-ring generators must match.
pub fn expected_generator_weights(n: usize) -> BTreeMap<u32, usize> {
    match n {
        1 => BTreeMap::from([(4, 1), (6, 1)]),
        2 => BTreeMap::from([(2, 1), (3, 1), (4, 1)]),
        3 => BTreeMap::from([(1, 1), (2, 2), (3, 1)]),
        4 => BTreeMap::from([(1, 3), (2, 2)]),
        _ => BTreeMap::from([(1, (n - 1) * (n - 2) / 2)]),
    }
}

fn weights_json(m: &BTreeMap<u32, usize>) -> serde_json::Value {
    json!(m.iter().map(|(w, k)| (w.to_string(), k)).collect::<BTreeMap<_, _>>())
}

/// Tangent dimension at the origin and generator weights of `spec`.
pub fn check_tangent_and_weights_with<F: Field>(spec: &ModuliSpec<F>, label: &str) -> Verdict {
    let n = spec.n;
    let run = Run::new("tangent-weights", json!({"n": n, "presentation": label}));
    let expected = expected_generator_weights(n);
    let got = match minimal_generator_weights(spec) {
        Ok(g) => g,
        Err(e) => return run.fail(json!({"error": e.to_string()})),
    };
    let tangent = match spec.ideal.tangent_dimension() {
        Ok(t) => t,
        Err(e) => return run.fail(json!({"error": e.to_string()})),
    };
    let want_tangent: usize = expected.values().sum();
    if got != expected || tangent != want_tangent {
        return run.fail(json!({
            "weights": weights_json(&got),
            "expected": weights_json(&expected),
            "tangent_dimension": tangent,
            "expected_tangent_dimension": want_tangent,
        }));
    }
    run.pass(Some(json!({"weights": weights_json(&got), "tangent_dimension": tangent})))
}

/// Special (free) coordinates for n <= 4, the reduced presentation above;
/// n = 5 additionally checks that the free presentation agrees.
pub fn check_tangent_and_weights<F: Field>(n: usize, ctx: &F::Ctx) -> Verdict {
    let spec = if n <= 4 { special_moduli::<F>(n, ctx) } else { u_n_reduced::<F>(n, ctx) };
    let spec = match spec {
        Ok(s) => s,
        Err(e) => return Run::new("tangent-weights", json!({"n": n})).fail(json!({"error": e.to_string()})),
    };
    let label = if n <= 4 { "special" } else { "reduced" };
    let v = check_tangent_and_weights_with(&spec, label);
    if n == 5 && v.passed() {
        let free = special_moduli::<F>(5, ctx).expect("n = 5");
        let w = check_tangent_and_weights_with(&free, "special");
        if !w.passed() {
            return w;
        }
    }
    v
}

