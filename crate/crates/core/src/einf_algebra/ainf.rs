//! Truncated A-infinity structures on E with mu^1 = 0 and mu^2 the product.
//!
//! Text format, one entry per line, omitted tuples zero:
//!
//! ```text
//! mu 3 | B1,A1,B1 -> 2*B1
//! mu 3 | A1,B1,A1 -> -1/2*A1
//! ```
//!
//! The inputs are listed as in mu^d(b_1, .., b_d), so the last one is
//! applied first.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde_json::json;

use super::hochschild::{cochain_space, composable_tuples, differential, mu2};
use super::{normalize, EAlgebra, EError, Elem};
use crate::exact_math::Field;
use crate::verify::{Run, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<F: Field> {
    pub arity: usize,
    pub s: i32,
    pub values: BTreeMap<Vec<usize>, Elem<F>>,
}

impl<F: Field> Cochain<F> {
    pub fn zero(arity: usize, s: i32) -> Self {
        Cochain { arity, s, values: BTreeMap::new() }
    }
    pub fn scaled(&self, c: &F) -> Self {
        let values = self
            .values
            .iter()
            .map(|(t, v)| (t.clone(), v.iter().map(|(b, x)| (*b, x.times(c))).filter(|(_, x)| !x.is_zero()).collect::<Elem<F>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        Cochain { arity: self.arity, s: self.s, values }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfStructure<F: Field> {
    pub n: usize,
    pub d_max: usize,
    /// mu^d for 3 <= d <= d_max; missing entries are zero.
    pub mus: BTreeMap<usize, Cochain<F>>,
}

impl<F: Field> AInfStructure<F> {
    /// All higher products zero.
    pub fn trivial(n: usize, d_max: usize) -> Self {
        let mus = (3..=d_max).map(|d| (d, Cochain::zero(d, 2 - d as i32))).collect();
        AInfStructure { n, d_max, mus }
    }

    pub fn validate(&self, alg: &EAlgebra<F>) -> Result<(), EError> {
        let bad = |m: String| Err(EError::Malformed(m));
        if self.n != alg.n {
            return bad(format!("structure for n = {}, algebra for n = {}", self.n, alg.n));
        }
        for (&d, mu) in &self.mus {
            if d < 3 || d > self.d_max || mu.arity != d || mu.s != 2 - d as i32 {
                return bad(format!("mu^{d} has arity {} and degree {}", mu.arity, mu.s));
            }
            for (t, v) in &mu.values {
                if t.len() != d || t.iter().any(|&x| x >= alg.dim() || alg.is_idempotent(x)) {
                    return bad(format!("mu^{d}: bad input tuple {t:?}"));
                }
                if t.windows(2).any(|p| alg.source(p[0]) != alg.target(p[1])) {
                    return bad(format!("mu^{d}: tuple {} is not composable", names(alg, t)));
                }
                let deg: i32 = t.iter().map(|&x| alg.degrees[x]).sum::<i32>() + mu.s;
                let (src, tgt) = (alg.source(t[d - 1]), alg.target(t[0]));
                for (b, _) in v {
                    if *b >= alg.dim() || alg.source(*b) != src || alg.target(*b) != tgt || alg.degrees[*b] != deg {
                        return bad(format!("mu^{d}({}): output {} is not compatible", names(alg, t), alg.names.get(*b).map_or("?", |s| s)));
                    }
                }
            }
        }
        Ok(())
    }

    fn eval(&self, alg: &EAlgebra<F>, args: &[usize]) -> Elem<F> {
        match args.len() {
            2 => mu2(alg, args[0], args[1]),
            d => {
                if args.iter().any(|&x| alg.is_idempotent(x)) {
                    return Vec::new();
                }
                self.mus.get(&d).and_then(|m| m.values.get(args)).cloned().unwrap_or_default()
            }
        }
    }

    fn has(&self, d: usize) -> bool {
        d == 2 || self.mus.get(&d).is_some_and(|m| !m.values.is_empty())
    }
}

fn names<F: Field>(alg: &EAlgebra<F>, t: &[usize]) -> String {
    t.iter().map(|&x| alg.names[x].as_str()).collect::<Vec<_>>().join(",")
}

/// Left side of the arity-`dd` A-infinity equation on `t` (written order).
fn relation<F: Field>(alg: &EAlgebra<F>, s: &AInfStructure<F>, t: &[usize]) -> Elem<F> {
    let dd = t.len();
    let mut acc: HashMap<usize, F> = HashMap::new();
    for m in 2..dd {
        let outer = dd - m + 1;
        if !s.has(m) || !s.has(outer) {
            continue;
        }
        let mut dagger = 0i32;
        for nn in 0..=dd - m {
            if nn > 0 {
                dagger += alg.degrees[t[dd - nn]] - 1;
            }
            // a_{nn+m} .. a_{nn+1} sit at t[dd-nn-m .. dd-nn]
            let lo = dd - nn - m;
            let inner = s.eval(alg, &t[lo..lo + m]);
            let sg = if dagger.rem_euclid(2) == 1 { F::one(&alg.ctx).negated() } else { F::one(&alg.ctx) };
            for (x, c) in inner {
                let mut args = t[..lo].to_vec();
                args.push(x);
                args.extend_from_slice(&t[lo + m..]);
                for (y, e) in s.eval(alg, &args) {
                    let v = c.times(&e).times(&sg);
                    let slot = acc.entry(y).or_insert_with(|| F::zero(&alg.ctx));
                    *slot = slot.plus(&v);
                }
            }
        }
    }
    normalize(acc)
}

/// Check the A-infinity equations of arity 3..=d_max + 1, the ones whose
/// terms only involve mu^{<= d_max}.
pub fn ainf_check<F: Field>(alg: &EAlgebra<F>, s: &AInfStructure<F>) -> Verdict {
    let run = Run::new("ainf", json!({"n": s.n, "d_max": s.d_max, "field": F::kind(&alg.ctx).to_string()}));
    if let Err(e) = s.validate(alg) {
        return run.fail(json!({"error": e.to_string()}));
    }
    let (dmin, dmax) = (*alg.degrees.iter().min().unwrap(), *alg.degrees.iter().max().unwrap());
    let mut checked = 0usize;
    for dd in 3..=s.d_max + 1 {
        // the relation has degree sum + 3 - dd
        let (lo, hi) = (dmin + dd as i32 - 3, dmax + dd as i32 - 3);
        for t in composable_tuples(alg, dd, lo, hi) {
            checked += 1;
            let r = relation(alg, s, &t);
            if !r.is_empty() {
                return run.fail(json!({"arity": dd, "inputs": names(alg, &t), "residual": alg.display(&r)}));
            }
        }
    }
    run.pass(Some(json!({"tuples": checked})))
}

/// mu^d -> lambda^{d-2} mu^d.
pub fn rescale<F: Field>(s: &AInfStructure<F>, lambda: &F) -> Result<AInfStructure<F>, EError> {
    if lambda.is_zero() {
        return Err(EError::ZeroScalar);
    }
    let mus = s.mus.iter().map(|(&d, m)| (d, m.scaled(&lambda.pow(d as u64 - 2)))).collect();
    Ok(AInfStructure { mus, ..s.clone() })
}

/// Transport along the automorphism g(x) = lambda^{|x|} x of E:
/// mu'^d(a_d, .., a_1) = g^{-1} mu^d(g a_d, .., g a_1).
pub fn conjugate_by_grading<F: Field>(alg: &EAlgebra<F>, s: &AInfStructure<F>, lambda: &F) -> Result<AInfStructure<F>, EError> {
    let inv = lambda.inverse().ok_or(EError::ZeroScalar)?;
    let g = |x: usize, l: &F| l.pow(alg.degrees[x] as u64);
    let mus = s
        .mus
        .iter()
        .map(|(&d, m)| {
            let values = m
                .values
                .iter()
                .map(|(t, v)| {
                    let c_in = t.iter().fold(F::one(&alg.ctx), |acc, &x| acc.times(&g(x, lambda)));
                    (t.clone(), v.iter().map(|(b, c)| (*b, c.times(&c_in).times(&g(*b, &inv)))).collect())
                })
                .collect();
            (d, Cochain { arity: m.arity, s: m.s, values })
        })
        .collect();
    Ok(AInfStructure { mus, ..s.clone() })
}

fn cochain_from_vector<F: Field>(alg: &EAlgebra<F>, arity: usize, s: i32, v: &[F]) -> Cochain<F> {
    let space = cochain_space(alg, arity, s);
    let mut values: BTreeMap<Vec<usize>, Elem<F>> = BTreeMap::new();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let (t, b) = space.basis[i];
            values.entry(space.tuples[t].clone()).or_default().push((b, c.clone()));
        }
    }
    Cochain { arity, s, values }
}

/// A random mu^3 (any cochain of the right degree), entries in -3..=3.
pub fn random_mu3<F: Field, R: Rng + ?Sized>(alg: &EAlgebra<F>, rng: &mut R) -> AInfStructure<F> {
    let space = cochain_space(alg, 3, -1);
    let v: Vec<F> = (0..space.dim()).map(|_| F::from_i64(&alg.ctx, rng.gen_range(-3..=3))).collect();
    let mut s = AInfStructure::trivial(alg.n, 3);
    s.mus.insert(3, cochain_from_vector(alg, 3, -1, &v));
    s
}

/// A random Hochschild cocycle as mu^3: these are exactly the mu^3 that
/// satisfy the arity-4 equation.
pub fn random_cocycle_mu3<F: Field, R: Rng + ?Sized>(alg: &EAlgebra<F>, rng: &mut R) -> AInfStructure<F> {
    let c3 = cochain_space(alg, 3, -1);
    let c4 = cochain_space(alg, 4, -1);
    let (_, kernel) = differential(alg, &c3, &c4).rank_and_kernel();
    let mut v = vec![F::zero(&alg.ctx); c3.dim()];
    for k in &kernel {
        let c = F::from_i64(&alg.ctx, rng.gen_range(-3..=3));
        for (x, y) in v.iter_mut().zip(k) {
            *x = x.plus(&y.times(&c));
        }
    }
    let mut s = AInfStructure::trivial(alg.n, 3);
    s.mus.insert(3, cochain_from_vector(alg, 3, -1, &v));
    s
}

pub fn parse_ainf<F: Field>(alg: &EAlgebra<F>, d_max: usize, text: &str) -> Result<AInfStructure<F>, EError> {
    let mut s = AInfStructure::trivial(alg.n, d_max);
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| EError::Parse(ln, format!("{m}: `{line}`"));
        let rest = line.strip_prefix("mu").ok_or_else(|| err("expected `mu`"))?;
        let (d, rest) = rest.split_once('|').ok_or_else(|| err("missing `|`"))?;
        let d: usize = d.trim().parse().map_err(|_| err("bad arity"))?;
        let (ins, out) = rest.split_once("->").ok_or_else(|| err("missing `->`"))?;
        let t: Vec<usize> = ins.split(',').map(|x| alg.index(x.trim()).ok_or_else(|| err("unknown basis element"))).collect::<Result<_, _>>()?;
        if t.len() != d {
            return Err(err("arity does not match the inputs"));
        }
        let mu = s.mus.get_mut(&d).ok_or_else(|| err("arity outside 3..=d_max"))?;
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (k, c) in mu.values.remove(&t).unwrap_or_default() {
            acc.insert(k, c);
        }
        for (b, c) in parse_elem(alg, out).map_err(|m| err(&m))? {
            let e = acc.entry(b).or_insert_with(|| F::zero(&alg.ctx));
            *e = e.plus(&c);
        }
        let v = normalize(acc);
        if !v.is_empty() {
            mu.values.insert(t, v);
        }
    }
    s.validate(alg)?;
    Ok(s)
}

fn parse_elem<F: Field>(alg: &EAlgebra<F>, s: &str) -> Result<Elem<F>, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut acc: HashMap<usize, F> = HashMap::new();
    for term in terms {
        let term = term.trim();
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, term.strip_prefix('+').unwrap_or(term).trim()),
        };
        let (c, name) = match body.split_once('*') {
            Some((c, n)) => (F::parse_coeff(&alg.ctx, c).map_err(|e| e.to_string())?, n.trim()),
            None => (F::one(&alg.ctx), body),
        };
        let b = alg.index(name).ok_or_else(|| format!("unknown basis element `{name}`"))?;
        let c = if neg { c.negated() } else { c };
        let e = acc.entry(b).or_insert_with(|| F::zero(&alg.ctx));
        *e = e.plus(&c);
    }
    Ok(normalize(acc))
}

pub fn ainf_to_text<F: Field>(alg: &EAlgebra<F>, s: &AInfStructure<F>) -> String {
    let mut out = String::new();
    for (d, m) in &s.mus {
        for (t, v) in &m.values {
            let terms: Vec<String> = v.iter().map(|(b, c)| format!("{}*{}", c.coeff_string(), alg.names[*b])).collect();
            out.push_str(&format!("mu {d} | {} -> {}\n", names(alg, t), terms.join(" + ").replace("+ -", "- ")));
        }
    }
    out
}
