//! Text and JSON formats for polynomials and ideals.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::exact_math::{Field, FieldKind};

use super::{IdealPresentation, MonomialOrder, OrderKind, PolyError, PolyRing, Polynomial, VarSpec};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, PolyError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Arc<PolyRing<F>>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expr(&mut self) -> Result<Polynomial<F>, PolyError> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }
    fn term(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }
    fn factor(&mut self) -> Result<Polynomial<F>, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| PolyError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(PolyError::Parse("expected exponent".into())),
            }
        } else {
            Ok(base)
        }
    }
    fn atom(&mut self) -> Result<Polynomial<F>, PolyError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut d = BigInt::from(1);
                if self.peek() == Some(&Tok::Op('/')) {
                    if let Some(Tok::Num(den)) = self.toks.get(self.pos + 1).cloned() {
                        self.pos += 2;
                        d = den;
                    } else {
                        return Err(PolyError::Parse("division by a non-number".into()));
                    }
                }
                let c = F::from_ratio(&self.ring.ctx, &n, &d).ok_or_else(|| PolyError::Parse("zero denominator".into()))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self.ring.var_index(&name).ok_or(PolyError::UnknownVariable(name))?;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(PolyError::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse polynomial text (`+`, `-`, `*`, `^`, parentheses, `num/den` coefficients).
pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, s: &str) -> Result<Polynomial<F>, PolyError> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0, ring };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

fn header<F: Field>(ring: &PolyRing<F>) -> String {
    let vars: Vec<String> = ring.vars.iter().map(|v| format!("{}:{}", v.name, v.weight)).collect();
    let prec: Vec<String> = ring.order.prec.iter().map(|i| i.to_string()).collect();
    format!("ring {} vars {}  order {} prec {}", ring.field_kind(), vars.join(","), ring.order.kind, prec.join(","))
}

/// Ideal file: header line, optional `# provenance` comment, one `gen` line per generator.
pub fn ideal_to_text<F: Field>(ideal: &IdealPresentation<F>) -> String {
    let mut s = header(&ideal.ring);
    s.push('\n');
    if !ideal.provenance.is_empty() {
        s.push_str(&format!("# provenance: {}\n", ideal.provenance));
    }
    for (name, g) in &ideal.gens {
        s.push_str(&format!("gen {name} = {g}\n"));
    }
    s
}

/// Comma-separated polynomial list for external algebra systems.
pub fn ideal_to_cas_text<F: Field>(ideal: &IdealPresentation<F>) -> String {
    let gens: Vec<String> = ideal.gens.iter().map(|g| g.1.to_string()).collect();
    format!("{}\n", gens.join(",\n"))
}

fn parse_header(line: &str) -> Result<(FieldKind, Vec<VarSpec>, MonomialOrder), PolyError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let bad = || PolyError::Parse(format!("bad ring header `{line}`"));
    if toks.len() != 8 || toks[0] != "ring" || toks[2] != "vars" || toks[4] != "order" || toks[6] != "prec" {
        return Err(bad());
    }
    let field: FieldKind = toks[1].parse().map_err(|_| bad())?;
    let vars = toks[3]
        .split(',')
        .map(|v| {
            let (n, w) = v.split_once(':').ok_or_else(bad)?;
            Ok(VarSpec::new(n, w.parse().map_err(|_| bad())?))
        })
        .collect::<Result<Vec<_>, PolyError>>()?;
    let kind: OrderKind = toks[5].parse()?;
    let prec = toks[7].split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<Vec<usize>, _>>()?;
    Ok((field, vars, MonomialOrder::new(kind, prec)))
}

pub fn ideal_from_text<F: Field>(text: &str) -> Result<IdealPresentation<F>, PolyError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head = lines.next().ok_or_else(|| PolyError::Parse("empty ideal file".into()))?;
    let (field, vars, order) = parse_header(head)?;
    let ctx = F::ctx_of_kind(field).map_err(|e| PolyError::Parse(e.to_string()))?;
    let ring = PolyRing::<F>::new(ctx, vars, order)?;
    let mut ideal = IdealPresentation::new(&ring, "");
    for l in lines {
        let l = l.trim();
        if let Some(p) = l.strip_prefix("# provenance:") {
            ideal.provenance = p.trim().to_string();
            continue;
        }
        if l.starts_with('#') {
            continue;
        }
        let rest = l.strip_prefix("gen ").ok_or_else(|| PolyError::Parse(format!("bad line `{l}`")))?;
        let (name, poly) = rest.split_once('=').ok_or_else(|| PolyError::Parse(format!("bad line `{l}`")))?;
        ideal.push(name.trim(), parse_polynomial(&ring, poly)?);
    }
    Ok(ideal)
}

pub fn ideal_to_json<F: Field>(ideal: &IdealPresentation<F>) -> Value {
    let r = &ideal.ring;
    let vars: Vec<Value> = r.vars.iter().map(|v| json!({"name": v.name, "weight": v.weight})).collect();
    let gens: Vec<Value> = ideal
        .gens
        .iter()
        .map(|(name, g)| {
            let terms: Vec<Value> = g.terms.iter().map(|(m, c)| json!({"coeff": c.coeff_string(), "exps": m.e.to_vec()})).collect();
            json!({"name": name, "terms": terms})
        })
        .collect();
    json!({
        "ring": {
            "field": r.field_kind().to_string(),
            "vars": vars,
            "order": {"kind": r.order.kind.to_string(), "prec": r.order.prec},
        },
        "gens": gens,
        "provenance": ideal.provenance,
    })
}

pub fn ideal_from_json<F: Field>(v: &Value) -> Result<IdealPresentation<F>, PolyError> {
    let bad = |w: &str| PolyError::Parse(format!("bad ideal json: {w}"));
    let ring = &v["ring"];
    let field: FieldKind = ring["field"].as_str().ok_or_else(|| bad("field"))?.parse().map_err(|_| bad("field"))?;
    let vars = ring["vars"]
        .as_array()
        .ok_or_else(|| bad("vars"))?
        .iter()
        .map(|x| {
            Ok(VarSpec::new(
                x["name"].as_str().ok_or_else(|| bad("name"))?,
                x["weight"].as_u64().ok_or_else(|| bad("weight"))? as u32,
            ))
        })
        .collect::<Result<Vec<_>, PolyError>>()?;
    let kind: OrderKind = ring["order"]["kind"].as_str().ok_or_else(|| bad("order"))?.parse()?;
    let prec = ring["order"]["prec"]
        .as_array()
        .ok_or_else(|| bad("prec"))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("prec")))
        .collect::<Result<Vec<_>, _>>()?;
    let ctx = F::ctx_of_kind(field).map_err(|e| PolyError::Parse(e.to_string()))?;
    let r = PolyRing::<F>::new(ctx, vars, MonomialOrder::new(kind, prec))?;
    let mut ideal = IdealPresentation::new(&r, v["provenance"].as_str().unwrap_or(""));
    for g in v["gens"].as_array().ok_or_else(|| bad("gens"))? {
        let mut terms = Vec::new();
        for t in g["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let c = F::parse_coeff(&r.ctx, t["coeff"].as_str().ok_or_else(|| bad("coeff"))?).map_err(|e| PolyError::Parse(e.to_string()))?;
            let e: Vec<u8> = t["exps"]
                .as_array()
                .ok_or_else(|| bad("exps"))?
                .iter()
                .map(|x| x.as_u64().filter(|&u| u <= 255).map(|u| u as u8).ok_or_else(|| bad("exps")))
                .collect::<Result<_, _>>()?;
            if e.len() != r.nvars() {
                return Err(bad("exponent length"));
            }
            terms.push((r.monomial(&e), c));
        }
        ideal.push(g["name"].as_str().ok_or_else(|| bad("gen name"))?, Polynomial::from_terms(&r, terms));
    }
    Ok(ideal)
}
