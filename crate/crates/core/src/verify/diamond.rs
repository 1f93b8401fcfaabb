use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::exact_math::Field;
use crate::moduli::{full_point_from_reduced, random_point, u_n_full, wheel_point, Coords, FullCoords, ModuliSpec};
use crate::polyring::{member_in, GroebnerBasis, PolyRing, Polynomial};

use super::{Run, Verdict};

type XMono = Vec<u8>;

/// Deg-lex with x_2 < x_3 < .. < x_n.
fn xcmp(a: &[u8], b: &[u8]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

fn xdivides(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn xmono_string(e: &[u8]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x_{}", i + 2) } else { format!("x_{}^{}", i + 2, k) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A polynomial in x_2..x_n with coefficients in a parameter ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelPoly<F: Field> {
    pub terms: BTreeMap<XMono, Polynomial<F>>,
}

impl<F: Field> RelPoly<F> {
    pub fn zero() -> Self {
        RelPoly { terms: BTreeMap::new() }
    }
    pub fn add_term(&mut self, m: XMono, c: &Polynomial<F>) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }
    pub fn from_terms(terms: Vec<(XMono, Polynomial<F>)>) -> Self {
        let mut r = Self::zero();
        for (m, c) in terms {
            r.add_term(m, &c);
        }
        r
    }
    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &-c);
        }
        r
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn to_string_with(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&XMono> = self.terms.keys().collect();
        keys.sort_by(|a, b| xcmp(b, a));
        keys.iter().map(|m| format!("({})*{}", self.terms[*m], xmono_string(m))).collect::<Vec<_>>().join(" + ")
    }
}

/// The normal-form rewriting system x_i x_j -> .., x_2 x_3^2 -> .. with
/// coefficients in the full-coordinate parameter ring.
#[derive(Clone, Debug)]
pub struct Rewriter<F: Field> {
    pub n: usize,
    pub params: Arc<PolyRing<F>>,
    pub rules: Vec<(XMono, RelPoly<F>)>,
}

impl<F: Field> Rewriter<F> {
    pub fn unit(&self, i: usize) -> XMono {
        let mut e = vec![0u8; self.n - 1];
        e[i - 2] += 1;
        e
    }
    pub fn mono(&self, idx: &[usize]) -> XMono {
        let mut e = vec![0u8; self.n - 1];
        for &i in idx {
            e[i - 2] += 1;
        }
        e
    }

    pub fn new(spec: &ModuliSpec<F>) -> Self {
        assert_eq!(spec.coords, Coords::Full, "full coordinates required");
        let n = spec.n;
        let fc = FullCoords { ring: &spec.ring };
        let one = Polynomial::one(&spec.ring);
        let mut rw = Rewriter { n, params: spec.ring.clone(), rules: Vec::new() };
        for i in 2..=n {
            for j in i + 1..=n {
                if (i, j) == (2, 3) {
                    continue;
                }
                let rhs = RelPoly::from_terms(vec![
                    (rw.mono(&[2, 3]), one.clone()),
                    (rw.unit(j), fc.c(i, j)),
                    (rw.unit(i), fc.c(j, i)),
                    (rw.mono(&[]), fc.d(i, j)),
                ]);
                let lhs = rw.mono(&[i, j]);
                rw.rules.push((lhs, rhs));
            }
        }
        let rhs = RelPoly::from_terms(vec![
            (rw.mono(&[2, 2, 3]), one),
            (rw.mono(&[2, 3]), fc.v("a")),
            (rw.unit(2), fc.v("b")),
            (rw.unit(3), fc.v("c")),
            (rw.mono(&[]), fc.v("d")),
        ]);
        let lhs = rw.mono(&[2, 3, 3]);
        rw.rules.push((lhs, rhs));
        rw
    }

    fn rule_index(&self, lhs: &[u8]) -> usize {
        self.rules.iter().position(|(l, _)| l == lhs).expect("no such rule")
    }

    fn apply(&self, p: &mut RelPoly<F>, m: &XMono, rule: usize) {
        let co = p.terms.remove(m).expect("monomial present");
        let (lhs, rhs) = &self.rules[rule];
        let q: XMono = m.iter().zip(lhs).map(|(a, b)| a - b).collect();
        for (rm, rc) in &rhs.terms {
            let t: XMono = q.iter().zip(rm).map(|(a, b)| a + b).collect();
            p.add_term(t, &(&co * rc));
        }
    }

    /// Rewrite to normal form, always treating the largest reducible
    /// monomial with the largest applicable rule.
    pub fn reduce(&self, mut p: RelPoly<F>) -> RelPoly<F> {
        loop {
            let mut best: Option<(XMono, usize)> = None;
            for m in p.terms.keys() {
                if best.as_ref().is_some_and(|(b, _)| xcmp(m, b) != Ordering::Greater) {
                    continue;
                }
                let rule = (0..self.rules.len())
                    .filter(|&r| xdivides(&self.rules[r].0, m))
                    .max_by(|&a, &b| xcmp(&self.rules[a].0, &self.rules[b].0));
                if let Some(r) = rule {
                    best = Some((m.clone(), r));
                }
            }
            match best {
                Some((m, r)) => self.apply(&mut p, &m, r),
                None => return p,
            }
        }
    }

    /// Reduce the monomial `m` starting with the rule whose left side is `first`.
    pub fn reduce_via(&self, m: &XMono, first: &XMono) -> RelPoly<F> {
        let mut p = RelPoly::from_terms(vec![(m.clone(), Polynomial::one(&self.params))]);
        self.apply(&mut p, m, self.rule_index(first));
        self.reduce(p)
    }

    /// Overlap monomials with the rule left sides that divide them.
    pub fn ambiguities(&self) -> Vec<(XMono, Vec<XMono>)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 2..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    out.push(self.mono(&[i, j, k]));
                }
            }
        }
        for m in 4..=n {
            out.push(self.mono(&[2, 3, 3, m]));
        }
        out.into_iter()
            .map(|m| {
                let firsts: Vec<XMono> = self.rules.iter().filter(|(l, _)| xdivides(l, &m)).map(|(l, _)| l.clone()).collect();
                (m, firsts)
            })
            .filter(|(_, f)| f.len() > 1)
            .collect()
    }
}

/// One unresolved ambiguity.
#[derive(Clone, Debug)]
pub struct Residual<F: Field> {
    pub monomial: String,
    pub first: String,
    pub second: String,
    pub difference: RelPoly<F>,
}

/// Differences between alternative reductions of every overlap, with
/// coefficients reduced modulo `gb` when given.
pub fn ambiguity_residuals<F: Field>(rw: &Rewriter<F>, gb: Option<&GroebnerBasis<F>>) -> Vec<Residual<F>> {
    let mut out = Vec::new();
    for (m, firsts) in rw.ambiguities() {
        let base = rw.reduce_via(&m, &firsts[0]);
        for f in &firsts[1..] {
            let diff = rw.reduce_via(&m, f).sub(&base);
            let diff = match gb {
                Some(gb) => RelPoly::from_terms(diff.terms.into_iter().map(|(k, c)| (k, gb.reduce(&c))).collect()),
                None => diff,
            };
            out.push(Residual { monomial: xmono_string(&m), first: xmono_string(&firsts[0]), second: xmono_string(f), difference: diff });
        }
    }
    out
}

/// The two reference expansions of each of x_2x_3x_i, x_2x_ix_j, x_3x_ix_j and
/// x_ix_jx_k, compared term by term with the rewriting system. Returns the
/// labels of mismatches.
pub fn expansion_replay<F: Field>(rw: &Rewriter<F>) -> (usize, Vec<String>) {
    let n = rw.n;
    let fc = FullCoords { ring: &rw.params };
    let c = |i: usize, j: usize| fc.c(i, j);
    let d = |i: usize, j: usize| fc.d(i, j);
    let v = |s: &str| fc.v(s);
    let one = Polynomial::one(&rw.params);
    let m = |idx: &[usize]| rw.mono(idx);
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut cmp = |label: String, mono: XMono, first: XMono, expect: Vec<(XMono, Polynomial<F>)>| {
        checked += 1;
        if rw.reduce_via(&mono, &first) != RelPoly::from_terms(expect) {
            bad.push(label);
        }
    };
    for i in 4..=n {
        cmp(
            format!("x2x3x{i}/x3x{i}"),
            m(&[2, 3, i]),
            m(&[3, i]),
            vec![
                (m(&[2, 2, 3]), one.clone()),
                (m(&[2, 3]), c(3, i)),
                (m(&[i]), c(2, i) * c(3, i)),
                (m(&[2]), c(3, i) * c(i, 2) + d(3, i)),
                (m(&[]), c(3, i) * d(2, i)),
            ],
        );
        cmp(
            format!("x2x3x{i}/x2x{i}"),
            m(&[2, 3, i]),
            m(&[2, i]),
            vec![
                (m(&[2, 2, 3]), one.clone()),
                (m(&[2, 3]), v("a") + c(i, 2) + c(2, i)),
                (m(&[i]), c(2, i) * c(3, i)),
                (m(&[3]), v("c") + d(2, i)),
                (m(&[2]), v("b")),
                (m(&[]), v("d") + c(2, i) * d(3, i)),
            ],
        );
    }
    for i in 4..=n {
        for j in 4..=n {
            if i == j {
                continue;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            cmp(
                format!("x2x{i}x{j}/x2x{j}"),
                m(&[2, i, j]),
                m(&[2, j]),
                vec![
                    (m(&[2, 2, 3]), one.clone()),
                    (m(&[2, 3]), c(3, i) + c(2, j) + c(j, 2)),
                    (m(&[i]), c(3, i) * c(2, i) + c(j, 2) * c(2, i) + c(j, i) * c(2, j) + d(2, j)),
                    (m(&[j]), c(2, j) * c(i, j)),
                    (m(&[2]), c(i, 2) * c(j, 2) + c(3, i) * c(i, 2) + d(3, i)),
                    (m(&[]), c(3, i) * d(2, i) + c(2, j) * d(j, i) + c(j, 2) * d(2, i)),
                ],
            );
            cmp(
                format!("x2x{i}x{j}/x{i}x{j}"),
                m(&[2, i, j]),
                m(&[lo, hi]),
                vec![
                    (m(&[2, 2, 3]), one.clone()),
                    (m(&[2, 3]), c(i, j) + c(j, i)),
                    (m(&[i]), c(j, i) * c(2, i)),
                    (m(&[j]), c(i, j) * c(2, j)),
                    (m(&[2]), c(i, j) * c(j, 2) + c(j, i) * c(i, 2) + d(i, j)),
                    (m(&[]), c(i, j) * d(2, j) + c(j, i) * d(2, i)),
                ],
            );
            cmp(
                format!("x3x{i}x{j}/x3x{j}"),
                m(&[3, i, j]),
                m(&[3, j]),
                vec![
                    (m(&[2, 2, 3]), one.clone()),
                    (m(&[2, 3]), c(3, i) + c(3, j)),
                    (m(&[i]), c(2, i) * c(3, i) + c(3, j) * c(j, i) + d(3, j)),
                    (m(&[j]), c(3, j) * c(i, j)),
                    (m(&[2]), c(3, i) * c(i, 2) + d(3, i)),
                    (m(&[]), c(3, i) * d(2, i) + c(3, j) * d(i, j)),
                ],
            );
            cmp(
                format!("x3x{i}x{j}/x{i}x{j}"),
                m(&[3, i, j]),
                m(&[lo, hi]),
                vec![
                    (m(&[2, 2, 3]), one.clone()),
                    (m(&[2, 3]), v("a") + c(i, j) + c(j, i)),
                    (m(&[i]), c(j, i) * c(3, i)),
                    (m(&[j]), c(3, j) * c(i, j)),
                    (m(&[3]), v("c") + d(i, j)),
                    (m(&[2]), v("b")),
                    (m(&[]), v("d") + c(i, j) * d(3, j) + c(j, i) * d(3, i)),
                ],
            );
        }
    }
    for i in 4..=n {
        for j in 4..=n {
            for k in 4..=n {
                if i == j || j == k || i == k {
                    continue;
                }
                let lhs = |a: usize, b: usize| m(&[a.min(b), a.max(b)]);
                cmp(
                    format!("x{i}x{j}x{k}/x{i}x{j}"),
                    m(&[i, j, k]),
                    lhs(i, j),
                    vec![
                        (m(&[2, 2, 3]), one.clone()),
                        (m(&[2, 3]), c(3, k) + c(i, j) + c(j, i)),
                        (m(&[k]), c(3, k) * c(2, k) + d(i, j) + c(i, j) * c(j, k) + c(j, i) * c(i, k)),
                        (m(&[j]), c(i, j) * c(k, j)),
                        (m(&[i]), c(j, i) * c(k, i)),
                        (m(&[2]), c(3, k) * c(k, 2) + d(3, k)),
                        (m(&[]), c(3, k) * d(2, k) + c(i, j) * d(j, k) + c(j, i) * d(i, k)),
                    ],
                );
                cmp(
                    format!("x{i}x{j}x{k}/x{j}x{k}"),
                    m(&[i, j, k]),
                    lhs(j, k),
                    vec![
                        (m(&[2, 2, 3]), one.clone()),
                        (m(&[2, 3]), c(3, i) + c(j, k) + c(k, j)),
                        (m(&[k]), c(j, k) * c(i, k)),
                        (m(&[j]), c(k, j) * c(i, j)),
                        (m(&[i]), c(3, i) * c(2, i) + c(k, j) * c(j, i) + c(j, k) * c(k, i) + d(j, k)),
                        (m(&[2]), c(3, i) * c(i, 2) + d(3, i)),
                        (m(&[]), c(3, i) * d(2, i) + c(j, k) * d(i, k) + c(k, j) * d(i, j)),
                    ],
                );
            }
        }
    }
    (checked, bad)
}

/// The coefficient identities obtained by equating the reference expansions,
/// as polynomials that must lie in the ideal.
pub fn expansion_relations<F: Field>(spec: &ModuliSpec<F>) -> Vec<(String, Polynomial<F>)> {
    let n = spec.n;
    let fc = FullCoords { ring: &spec.ring };
    let c = |i: usize, j: usize| fc.c(i, j);
    let d = |i: usize, j: usize| fc.d(i, j);
    let v = |s: &str| fc.v(s);
    let mut out = Vec::new();
    for i in 4..=n {
        out.push((format!("eqn1a[{i}]"), c(3, i) - v("a") - c(2, i) - c(i, 2)));
        out.push((format!("eqn1b[{i}]"), v("c") + d(2, i)));
        out.push((format!("eqn1c[{i}]"), c(3, i) * c(i, 2) + d(3, i) - v("b")));
        out.push((format!("eqn1d[{i}]"), c(3, i) * d(2, i) - v("d") - c(2, i) * d(3, i)));
    }
    for i in 4..=n {
        for j in 4..=n {
            if i == j {
                continue;
            }
            out.push((format!("eqn2a[{i},{j}]"), c(3, i) + c(2, j) + c(j, 2) - c(i, j) - c(j, i)));
            out.push((
                format!("eqn2b[{i},{j}]"),
                c(3, i) * c(2, i) + c(j, 2) * c(2, i) + c(j, i) * c(2, j) + d(2, j) - c(j, i) * c(2, i),
            ));
            out.push((
                format!("eqn2c[{i},{j}]"),
                c(i, 2) * c(j, 2) + c(3, i) * c(i, 2) + d(3, i) - c(i, j) * c(j, 2) - c(j, i) * c(i, 2) - d(i, j),
            ));
            out.push((
                format!("eqn2d[{i},{j}]"),
                c(3, i) * d(2, i) + c(2, j) * d(j, i) + c(j, 2) * d(2, i) - c(i, j) * d(2, j) - c(j, i) * d(2, i),
            ));
            out.push((format!("eqn3a[{i},{j}]"), c(2, i) * c(3, i) + c(3, j) * c(j, i) + d(3, j) - c(j, i) * c(3, i)));
            // constant terms of the two x_3x_ix_j expansions, including d
            out.push((
                format!("eqn3b[{i},{j}]"),
                c(3, i) * d(2, i) + c(3, j) * d(i, j) - v("d") - c(i, j) * d(3, j) - c(j, i) * d(3, i),
            ));
            out.push((format!("eqn3c[{i},{j}]"), v("c") + d(i, j)));
            for k in 4..=n {
                if k != i && k != j {
                    out.push((
                        format!("eqn4[{i},{j},{k}]"),
                        c(i, k) * c(j, k) - c(i, j) * c(j, k) - c(j, i) * c(i, k) - c(3, k) * c(2, k) - d(i, j),
                    ));
                }
            }
        }
    }
    out
}

/// Both reduction orders of every overlap agree modulo the ideal of `spec`,
/// the reference expansions are reproduced and the reference coefficient
/// identities lie in the ideal.
pub fn check_diamond_symbolic_with<F: Field>(spec: &ModuliSpec<F>, label: &str) -> Verdict {
    let run = Run::new("diamond-symbolic", json!({"n": spec.n, "ideal": label}));
    let rw = Rewriter::new(spec);
    let raw = ambiguity_residuals(&rw, None);
    let relations = expansion_relations(spec);
    let cap = raw
        .iter()
        .flat_map(|r| r.difference.terms.values())
        .chain(relations.iter().map(|(_, p)| p))
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(1);
    let gb = spec.ideal.groebner(Some(cap));
    let homog = spec.ideal.homogeneity_check();
    let (replayed, bad) = expansion_replay(&rw);
    if let Some(b) = bad.first() {
        return run.fail(json!({"expansion_mismatch": b}));
    }
    for (name, p) in relations {
        match member_in(&gb, homog, &p) {
            crate::polyring::Membership::Member { .. } => {}
            crate::polyring::Membership::NotMember { remainder } => {
                return run.fail(json!({"relation": name, "remainder": remainder.to_string()}))
            }
            crate::polyring::Membership::Unknown { cap } => return run.truncated(json!({"relation": name, "cap": cap})),
        }
    }
    let residuals: Vec<Residual<F>> = raw
        .into_iter()
        .map(|r| Residual {
            difference: RelPoly::from_terms(r.difference.terms.into_iter().map(|(k, c)| (k, gb.reduce(&c))).collect()),
            ..r
        })
        .collect();
    let total = residuals.len();
    if let Some(r) = residuals.iter().find(|r| !r.difference.is_zero()) {
        return run.fail(json!({
            "monomial": r.monomial,
            "first": r.first,
            "second": r.second,
            "residual": r.difference.to_string_with(),
        }));
    }
    if !gb.complete && !homog {
        return run.truncated(json!({"cap": cap}));
    }
    run.pass(Some(json!({"ambiguities": total, "expansions": replayed})))
}

pub fn check_diamond_symbolic<F: Field>(n: usize, ctx: &F::Ctx) -> Verdict {
    match u_n_full::<F>(n, ctx) {
        Ok(spec) => check_diamond_symbolic_with(&spec, "full"),
        Err(e) => Run::new("diamond-symbolic", json!({"n": n})).fail(json!({"error": e.to_string()})),
    }
}

/// `ideal` decides which points count as on the scheme; the residuals
/// always come from the rewriting system of `spec`.
pub fn check_diamond_numeric_with<F: Field>(spec: &ModuliSpec<F>, ideal_gens: &[(String, Polynomial<F>)], point: &[F], label: &str) -> Verdict {
    let run = Run::new("diamond-numeric", json!({"n": spec.n, "point": label}));
    let on = ideal_gens.iter().find(|(_, g)| !g.eval(point).is_zero()).map(|(n, _)| n.clone());
    let rw = Rewriter::new(spec);
    let mut nonzero = None;
    for r in ambiguity_residuals(&rw, None) {
        if let Some((m, c)) = r.difference.terms.iter().find(|(_, c)| !c.eval(point).is_zero()) {
            nonzero = Some(json!({
                "monomial": r.monomial,
                "coefficient_of": xmono_string(m),
                "value": c.eval(point).to_string(),
            }));
            break;
        }
    }
    match (on, nonzero) {
        (None, None) => run.pass(Some(json!({"on_scheme": true}))),
        (Some(g), Some(w)) => run.pass(Some(json!({"on_scheme": false, "violated": g, "residual": w}))),
        (None, Some(w)) => run.fail(json!({"on_scheme": true, "residual": w})),
        (Some(g), None) => run.fail(json!({"on_scheme": false, "violated": g, "residual": "all zero"})),
    }
}

/// Named sample points for the numeric check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericPoint {
    Origin,
    Wheel,
    /// Random point of U_n over the prime field.
    RandomOn(u64),
    /// Random parameters, resampled until some relation fails.
    RandomOff(u64),
}

pub fn check_diamond_numeric<F: Field>(n: usize, which: NumericPoint, ctx: &F::Ctx) -> Verdict {
    let fail = |e: String| Run::new("diamond-numeric", json!({"n": n})).fail(json!({"error": e}));
    let spec = match u_n_full::<F>(n, ctx) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let nv = spec.ring.nvars();
    let (pt, label) = match which {
        NumericPoint::Origin => (vec![F::zero(ctx); nv], "origin".to_string()),
        NumericPoint::Wheel => match wheel_point(&spec) {
            Ok(p) => (p, "wheel".into()),
            Err(e) => return fail(e.to_string()),
        },
        NumericPoint::RandomOn(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let got = if n == 3 {
                random_point::<F, _>(3, ctx, &mut rng).map(|(_, p)| p)
            } else {
                random_point::<F, _>(n, ctx, &mut rng).and_then(|(_, p)| full_point_from_reduced(n, &p, ctx).map(|(_, q)| q))
            };
            match got {
                Ok(p) => (p, format!("random-on(seed={seed})")),
                Err(e) => return fail(e.to_string()),
            }
        }
        NumericPoint::RandomOff(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut tries = 0;
            loop {
                let p: Vec<F> = (0..nv).map(|_| F::random(ctx, &mut rng, 100)).collect();
                tries += 1;
                if spec.ideal.gens.iter().any(|(_, g)| !g.eval(&p).is_zero()) || tries > 50 {
                    break (p, format!("random-off(seed={seed})"));
                }
            }
        }
    };
    check_diamond_numeric_with(&spec, &spec.ideal.gens, &pt, &label)
}
