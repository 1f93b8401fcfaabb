//! Line format:
//!
//! ```text
//! vertex v0..v2
//! arrow A_1: v0->v1 deg 0
//! order A_1 < B_1 < A_2
//! rel A_1*B_2 = 0
//! rel B_2*A_2 = B_1*A_1
//! ```
//!
//! `order` is optional and defaults to declaration order (smallest first).
//! `#` starts a comment.

use std::collections::HashMap;

use thiserror::Error;

use super::{Arrow, LinComb, PathWord, Quiver, RewriteError, RewriteSystem};
use crate::exact_math::Field;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error("line {0}: {1}")]
    Rule(usize, RewriteError),
}

fn parse_vertices(spec: &str) -> Option<Vec<String>> {
    match spec.split_once("..") {
        None => Some(vec![spec.to_string()]),
        Some((a, b)) => {
            let prefix: String = a.chars().take_while(|c| !c.is_ascii_digit()).collect();
            let lo: usize = a[prefix.len()..].parse().ok()?;
            let hi: usize = b.strip_prefix(prefix.as_str())?.parse().ok()?;
            Some((lo..=hi).map(|k| format!("{prefix}{k}")).collect())
        }
    }
}

fn parse_arrow(q: &Quiver, body: &str) -> Option<Arrow> {
    let (name, rest) = body.split_once(':')?;
    let mut it = rest.split_whitespace();
    let (s, t) = it.next()?.split_once("->")?;
    if it.next()? != "deg" {
        return None;
    }
    let degree = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some(Arrow { name: name.trim().to_string(), source: q.vertex_index(s)?, target: q.vertex_index(t)?, degree })
}

/// Parse `c*X*Y - Z + 2/3*e_v0`, a coefficient followed by arrows or an idempotent.
fn parse_lincomb<F: Field>(q: &Quiver, ctx: &F::Ctx, s: &str) -> Result<LinComb<F>, String> {
    let mut out: LinComb<F> = HashMap::new();
    let s = s.trim();
    if s == "0" {
        return Ok(out);
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
    for term in terms {
        let term = term.trim();
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, term.strip_prefix('+').unwrap_or(term).trim()),
        };
        let mut coeff = F::one(ctx);
        let mut arrows = Vec::new();
        let mut idem = None;
        for (k, f) in body.split('*').map(str::trim).enumerate() {
            if k == 0 && f.starts_with(|c: char| c.is_ascii_digit()) {
                coeff = F::parse_coeff(ctx, f).map_err(|e| e.to_string())?;
            } else if let Some(v) = f.strip_prefix("e_") {
                idem = Some(q.vertex_index(v).ok_or_else(|| format!("unknown vertex `{v}`"))?);
            } else {
                arrows.push(q.arrow_index(f).ok_or_else(|| format!("unknown arrow `{f}`"))?);
            }
        }
        let word = match (idem, arrows.is_empty()) {
            (Some(v), true) => PathWord::idempotent(v),
            (None, false) => PathWord::from_arrows(q, arrows).ok_or_else(|| format!("`{body}` is not a path"))?,
            _ => return Err(format!("bad term `{term}`")),
        };
        if neg {
            coeff = coeff.negated();
        }
        super::add_to(&mut out, word, coeff);
    }
    Ok(out)
}

/// Parse a quiver with relations into an uncompleted system.
pub fn parse_system<F: Field>(text: &str, ctx: &F::Ctx) -> Result<RewriteSystem<F>, TextError> {
    let mut q = Quiver { vertices: Vec::new(), arrows: Vec::new() };
    let mut order: Option<Vec<usize>> = None;
    let mut rels: Vec<(usize, String, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, body) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let body = body.trim();
        let bad = |m: &str| TextError::Syntax(ln, format!("{m}: `{line}`"));
        match kw {
            "vertex" => {
                for v in parse_vertices(body).ok_or_else(|| bad("bad vertex list"))? {
                    if q.vertex_index(&v).is_some() {
                        return Err(bad("duplicate vertex"));
                    }
                    q.vertices.push(v);
                }
            }
            "arrow" => {
                let a = parse_arrow(&q, body).ok_or_else(|| bad("bad arrow"))?;
                if q.arrow_index(&a.name).is_some() {
                    return Err(bad("duplicate arrow"));
                }
                q.arrows.push(a);
            }
            "order" => {
                let ids: Option<Vec<usize>> = body.split('<').map(|s| q.arrow_index(s.trim())).collect();
                let ids = ids.ok_or_else(|| bad("unknown arrow in order"))?;
                let mut sorted = ids.clone();
                sorted.sort_unstable();
                if sorted != (0..q.arrows.len()).collect::<Vec<_>>() {
                    return Err(bad("order must list every arrow once"));
                }
                order = Some(ids);
            }
            "rel" => {
                let (l, r) = body.split_once('=').ok_or_else(|| bad("missing `=`"))?;
                rels.push((ln, l.to_string(), r.to_string()));
            }
            _ => return Err(bad("unknown keyword")),
        }
    }
    let order = order.unwrap_or_else(|| (0..q.arrows.len()).collect());
    let mut sys = RewriteSystem::new(q, ctx, &order);
    for (ln, l, r) in rels {
        let mut lc = parse_lincomb::<F>(&sys.quiver, ctx, &l).map_err(|m| TextError::Syntax(ln, m))?;
        for (w, c) in parse_lincomb::<F>(&sys.quiver, ctx, &r).map_err(|m| TextError::Syntax(ln, m))? {
            super::add_to(&mut lc, w, c.negated());
        }
        sys.add_relation(lc).map_err(|e| TextError::Rule(ln, e))?;
    }
    Ok(sys)
}

/// Serialize a system; `parse_system` reads it back to the same rules.
pub fn system_to_text<F: Field>(sys: &RewriteSystem<F>) -> String {
    let q = &sys.quiver;
    let mut out = String::new();
    for v in &q.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in &q.arrows {
        out.push_str(&format!("arrow {}: {}->{} deg {}\n", a.name, q.vertices[a.source], q.vertices[a.target], a.degree));
    }
    let mut prec: Vec<usize> = (0..q.arrows.len()).collect();
    prec.sort_by_key(|&a| sys.rank[a]);
    let names: Vec<&str> = prec.iter().map(|&a| q.arrows[a].name.as_str()).collect();
    out.push_str(&format!("order {}\n", names.join(" < ")));
    for r in &sys.rules {
        let rhs = terms_to_text(q, &r.rhs);
        out.push_str(&format!("rel {} = {}\n", r.lhs.display(q), rhs));
    }
    out
}

/// `c1*w1 + c2*w2 ..` with unit coefficients omitted, or `0`.
pub(crate) fn terms_to_text<F: Field>(q: &Quiver, terms: &[(PathWord, F)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (w, c)) in terms.iter().enumerate() {
        let (neg, mag) = if c.is_negative_display() { (true, c.negated()) } else { (false, c.clone()) };
        out.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if !mag.is_one() {
            out.push_str(&format!("{}*", mag.coeff_string()));
        }
        out.push_str(&w.display(q));
    }
    out
}
