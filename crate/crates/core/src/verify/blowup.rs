use std::collections::BTreeSet;

use serde_json::json;

use crate::exact_math::{ExactScalar, Field, Fp};
use crate::moduli::{curve_over_un, full_point_from_reduced, names, special_point_pin, u_n_reduced, CurveSpec, FullCoords, ModuliSpec};
use crate::polyring::{IdealPresentation, MonomialOrder, OrderKind, PolyRing, Polynomial, VarSpec};

use super::{containment_verdict, contains_all, Contain, Run, Verdict};

/// Index pairs (i, j), 2 <= i < j < n, of the equations y_i y_j = y_2 y_3.
fn y_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 2..n {
        for j in i + 1..n {
            if (i, j) != (2, 3) {
                out.push((i, j));
            }
        }
    }
    out
}

/// The coordinates y_2 = c_n, y_3 = c_n + cb_n, y_i = c_{in} of a point of
/// U_n in reduced coordinates.
fn y_coords<F: Field>(spec: &ModuliSpec<F>, pt: &[F]) -> Vec<F> {
    let n = spec.n;
    let val = |name: &str| pt[spec.ring.var_index(name).expect("variable")].clone();
    let cn = val(&names::ci(n));
    let mut y = vec![cn.clone(), cn.plus(&val(&names::cbi(n)))];
    for i in 4..n {
        y.push(val(&names::c2(i, n)));
    }
    y
}

/// The listed points of P(K_n) in the y coordinates: all ones for P_{1n} and
/// the coordinate vectors e_i for P_{in}, i >= 2.
pub fn blowup_solutions<F: Field>(n: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    (1..n)
        .map(|i| (2..n).map(|k| if i == 1 || i == k { F::one(ctx) } else { F::zero(ctx) }).collect())
        .collect()
}

/// Image in F_p of a rational, or of a prime-field residue via its
/// symmetric integer lift.
fn reduce_mod(s: &ExactScalar, p: u64) -> Option<Fp> {
    match s {
        ExactScalar::Rational(r) => Fp::from_ratio(&p, r.numer(), r.denom()),
        ExactScalar::Prime { residue, modulus } => {
            let lift = if *residue <= modulus / 2 { *residue as i64 } else { *residue as i64 - *modulus as i64 };
            Some(Fp::new(lift, p))
        }
    }
}

fn normalize<F: Field>(y: &[F]) -> Option<Vec<F>> {
    let lead = y.iter().find(|c| !c.is_zero())?.inverse()?;
    Some(y.iter().map(|c| c.times(&lead)).collect())
}

/// All points of P^{n-3}(F_p) on y_i y_j = y_2 y_3, first nonzero coordinate 1.
fn brute_force(n: usize, p: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, p: u64, pairs: &[(usize, usize)], y: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let m = y.len() + 2;
        if m == n {
            if y.iter().any(|&v| v != 0) {
                out.push(y.clone());
            }
            return;
        }
        let started = y.iter().any(|&v| v != 0);
        let range: Box<dyn Iterator<Item = u64>> = if started { Box::new(0..p) } else { Box::new(0..2) };
        for v in range {
            y.push(v);
            let ok = m < 3
                || pairs.iter().filter(|&&(_, j)| j == m).all(|&(i, j)| {
                    let lhs = (y[i - 2] as u128 * y[j - 2] as u128) % p as u128;
                    let rhs = (y[0] as u128 * y[1] as u128) % p as u128;
                    lhs == rhs
                });
            if ok {
                rec(n, p, pairs, y, out);
            }
            y.pop();
        }
    }
    let pairs = y_pairs(n);
    let mut out = Vec::new();
    rec(n, p, &pairs, &mut Vec::new(), &mut out);
    out
}

fn y_ring<F: Field>(n: usize, ctx: &F::Ctx) -> (std::sync::Arc<PolyRing<F>>, IdealPresentation<F>) {
    let vars: Vec<VarSpec> = (2..n).map(|i| VarSpec::new(format!("y_{i}"), 1)).collect();
    let nv = vars.len();
    let ring = PolyRing::new(ctx.clone(), vars, MonomialOrder::natural(OrderKind::WDegRevLex, nv)).expect("valid ring");
    let y = |i: usize| Polynomial::var(&ring, i - 2);
    let mut id = IdealPresentation::new(&ring, "intersection with P(K_n)");
    for (i, j) in y_pairs(n) {
        id.push(format!("y[{i},{j}]"), y(i) * y(j) - y(2) * y(3));
    }
    (ring, id)
}

/// Rank of the Jacobian in the affine chart of the first nonzero coordinate.
fn chart_rank<F: Field>(id: &IdealPresentation<F>, y: &[F]) -> usize {
    let k = y.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let jac = id.jacobian_at(y);
    let mut m = crate::exact_math::SparseMatrix::zeros(&id.ring.ctx, 0, y.len() - 1);
    for r in 0..jac.nrows {
        let row = (0..y.len())
            .filter(|&c| c != k)
            .enumerate()
            .map(|(pos, c)| (pos, jac.get(r, c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        m.push_row(row);
    }
    m.rank()
}

/// The (i') equations at P_{1n} (i_0 = n) on the full-coordinate point.
fn p1n_equations<F: Field>(n: usize, reduced_pt: &[F], ctx: &F::Ctx) -> Result<Option<serde_json::Value>, String> {
    let (full, fpt) = full_point_from_reduced(n, reduced_pt, ctx).map_err(|e| e.to_string())?;
    let fc = FullCoords { ring: &full.ring };
    let c = |i: usize, j: usize| fc.c(i, j).eval(&fpt);
    for i in 2..n {
        for j in 2..n {
            for k in 2..n {
                if i == j || j == k || i == k {
                    continue;
                }
                if c(i, j) != c(i, k) {
                    return Ok(Some(json!({"equation": format!("c_{i}{j} = c_{i}{k}")})));
                }
                if c(i, n).minus(&c(i, k)) != c(j, n).minus(&c(j, k)) {
                    return Ok(Some(json!({"equation": format!("c_{i}{n} - c_{i}{k} = c_{j}{n} - c_{j}{k}")})));
                }
            }
        }
    }
    Ok(None)
}

/// `pins[i-1]` is the claimed P_{in}. Checks membership in U_n, that the
/// y-coordinates are exactly the solutions of the intersection (listed and,
/// over each prime in `primes`, found by exhaustive search), transversality,
/// and the (i') equations at P_{1n}.
pub fn check_blowup_points_with<F: Field>(spec: &ModuliSpec<F>, pins: &[Vec<F>], primes: &[u64], label: &str) -> Verdict {
    let n = spec.n;
    let ctx = &spec.ring.ctx;
    let run = Run::new("blowup-points", json!({"n": n, "points": label, "primes": primes}));
    for (k, pt) in pins.iter().enumerate() {
        if let Some((g, _)) = spec.ideal.gens.iter().find(|(_, g)| !g.eval(pt).is_zero()) {
            return run.fail(json!({"point": format!("P_{}_{n}", k + 1), "violated": g}));
        }
    }
    let listed: Vec<Vec<F>> = blowup_solutions::<F>(n, ctx);
    let ys: Vec<Vec<F>> = pins.iter().map(|pt| y_coords(spec, pt)).collect();
    for (k, (y, want)) in ys.iter().zip(&listed).enumerate() {
        if normalize(y).as_ref() != Some(want) {
            return run.fail(json!({"point": format!("P_{}_{n}", k + 1), "y": y.iter().map(|c| c.to_string()).collect::<Vec<_>>()}));
        }
    }
    let (_, yid) = y_ring::<F>(n, ctx);
    for (k, y) in ys.iter().enumerate() {
        if !yid.vanishes_at(y) {
            return run.fail(json!({"point": format!("P_{}_{n}", k + 1), "reason": "not on the intersection"}));
        }
        let r = chart_rank(&yid, y);
        if r != n - 3 {
            return run.fail(json!({"point": format!("P_{}_{n}", k + 1), "jacobian_rank": r, "expected": n - 3}));
        }
    }
    let mut found = Vec::new();
    for &p in primes {
        let sols: BTreeSet<Vec<u64>> = brute_force(n, p).into_iter().collect();
        let want: Option<BTreeSet<Vec<u64>>> = ys
            .iter()
            .map(|y| {
                let yp: Option<Vec<Fp>> = y.iter().map(|c| reduce_mod(&c.to_exact(), p)).collect();
                normalize(&yp?).map(|v| v.iter().map(|c| c.residue()).collect())
            })
            .collect();
        if want.as_ref() != Some(&sols) {
            return run.fail(json!({"p": p, "solutions_found": sols.len(), "expected": n - 1, "found": sols.into_iter().collect::<Vec<_>>()}));
        }
        found.push(json!({"p": p, "solutions": sols.len()}));
    }
    match p1n_equations(n, &pins[0], ctx) {
        Ok(None) => {}
        Ok(Some(w)) => return run.fail(json!({"point": format!("P_1_{n}"), "full_coordinates": w})),
        Err(e) => return run.fail(json!({"error": e})),
    }
    run.pass(Some(json!({"points": pins.len(), "jacobian_rank": n - 3, "brute_force": found})))
}

pub fn check_blowup_points<F: Field>(n: usize, ctx: &F::Ctx) -> Verdict {
    let fail = |e: String| Run::new("blowup-points", json!({"n": n})).fail(json!({"error": e}));
    let spec = match u_n_reduced::<F>(n, ctx) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let pins: Result<Vec<_>, _> = (1..n).map(|i| special_point_pin(&spec, i)).collect();
    match pins {
        Ok(p) => check_blowup_points_with(&spec, &p, &[101, 211], "standard"),
        Err(e) => fail(e.to_string()),
    }
}

/// The listed P_{in} with P_{2n} replaced by c_n = 1, cb_n = +1.
pub fn mutated_blowup_points<F: Field>(spec: &ModuliSpec<F>) -> Option<Vec<Vec<F>>> {
    let mut pins: Vec<Vec<F>> = (1..spec.n).map(|i| special_point_pin(spec, i)).collect::<Result<_, _>>().ok()?;
    let k = spec.ring.var_index(&names::cbi(spec.n))?;
    pins[1][k] = F::one(&spec.ring.ctx);
    Some(pins)
}

/// One irreducible component of the fiber over P_{in}.
#[derive(Clone, Debug)]
pub struct ComponentIdeal<F: Field> {
    pub name: String,
    pub ideal: IdealPresentation<F>,
}

/// Lines and the conic C_{in} of the fiber curve over P_{in} at scale 1,
/// in the fiber ring `curve` (x_2..x_n, no parameters).
pub fn component_ideals<F: Field>(curve: &CurveSpec<F>, i: usize) -> Vec<ComponentIdeal<F>> {
    let n = curve.n;
    let ring = &curve.ring;
    let x = |k: usize| Polynomial::var(ring, k - 2);
    let int = |v: i64| Polynomial::int(ring, v);
    let mk = |name: String, gens: Vec<Polynomial<F>>| {
        let mut id = IdealPresentation::new(ring, name.clone());
        for (k, g) in gens.into_iter().enumerate() {
            id.push(format!("{name}[{k}]"), g);
        }
        ComponentIdeal { name, ideal: id }
    };
    let zero_except = |keep: &[usize]| -> Vec<Polynomial<F>> { (2..n).filter(|k| !keep.contains(k)).map(x).collect() };
    // values at the point: c_n, cb_n, c_in
    let (cn, cbn, cin) = match i {
        1 | 2 => (1, if i == 2 { -1 } else { 0 }, 0),
        3 => (0, 1, 0),
        _ => (0, 0, 1),
    };
    let mut out = Vec::new();
    let conic = match i {
        1 => {
            let mut g: Vec<Polynomial<F>> = (3..n).map(|k| x(k) - x(2)).collect();
            g.push(x(2) * x(n) - x(2).pow(2) - int(cn) * x(n));
            g
        }
        2 => {
            let mut g = zero_except(&[2]);
            g.push(x(2) * x(n) - int(cn) * (x(n) - x(2)));
            g
        }
        3 => {
            let mut g = zero_except(&[3]);
            g.push(x(3) * x(n) - int(cbn) * (x(n) - int(cbn)));
            g
        }
        _ => {
            let mut g = zero_except(&[i]);
            g.push(x(i) * x(n) - int(cin) * (x(n) - x(i)));
            g
        }
    };
    out.push(mk(format!("C_{i}_{n}"), conic));
    let s = if i == 3 { cbn } else { 0 };
    if i == 1 {
        for k in 2..n {
            let mut g = zero_except(&[k]);
            g.push(x(n));
            out.push(mk(format!("L_{k}"), g));
        }
    } else {
        let mut g: Vec<Polynomial<F>> = (3..n).map(|k| x(k) - x(2)).collect();
        g.push(x(n) - x(2) - int(s));
        out.push(mk("L_1".into(), g));
        for k in (2..n).filter(|&k| k != i) {
            let mut g = zero_except(&[k]);
            g.push(x(n) - int(s));
            out.push(mk(format!("L_{k}"), g));
        }
    }
    out
}

/// The fiber relations over P_{in} lie in every component ideal.
pub fn check_component_ideals_with<F: Field>(curve: &CurveSpec<F>, comps: &[ComponentIdeal<F>], i: usize, label: &str) -> Verdict {
    let run = Run::new("component-ideals", json!({"n": curve.n, "i": i, "components": label}));
    for c in comps {
        match contains_all(&c.ideal, &curve.affine.gens) {
            Contain::All => {}
            other => {
                return containment_verdict(Run::new("component-ideals", json!({"n": curve.n, "i": i, "component": c.name})), "curve in component", other, None)
            }
        }
    }
    run.pass(Some(json!({"components": comps.iter().map(|c| c.name.clone()).collect::<Vec<_>>()})))
}

pub fn check_component_ideals<F: Field>(n: usize, i: usize, ctx: &F::Ctx) -> Verdict {
    let fail = |e: String| Run::new("component-ideals", json!({"n": n, "i": i})).fail(json!({"error": e}));
    let curve = match u_n_reduced::<F>(n, ctx).and_then(|s| {
        let pt = special_point_pin(&s, i)?;
        curve_over_un(&s, Some(&pt))
    }) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let comps = component_ideals(&curve, i);
    check_component_ideals_with(&curve, &comps, i, "standard")
}

/// Component list with the conic coefficient of C_{in} negated.
pub fn mutated_component_ideals<F: Field>(curve: &CurveSpec<F>, i: usize) -> Vec<ComponentIdeal<F>> {
    let mut comps = component_ideals(curve, i);
    let conic = &mut comps[0].ideal.gens;
    let last = conic.len() - 1;
    let x = |k: usize| Polynomial::var(&curve.ring, k - 2);
    let n = curve.n;
    let k = if i == 1 || i == 2 { 2 } else { i };
    conic[last].1 = x(k) * x(n) + x(n) - x(k);
    comps
}
