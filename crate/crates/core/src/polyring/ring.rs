use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::exact_math::{Field, FieldKind};

use super::{Monomial, PolyError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpec {
    pub name: String,
    pub weight: u32,
}

impl VarSpec {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        VarSpec { name: name.into(), weight }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    WDegLex,
    WDegRevLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::WDegLex => "wdeglex",
            OrderKind::WDegRevLex => "wdegrevlex",
        })
    }
}

impl std::str::FromStr for OrderKind {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        match s {
            "wdeglex" | "deglex" => Ok(OrderKind::WDegLex),
            "wdegrevlex" | "degrevlex" | "grevlex" => Ok(OrderKind::WDegRevLex),
            _ => Err(PolyError::Parse(format!("unknown order `{s}`"))),
        }
    }
}

/// A weighted degree order. `prec[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub prec: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, prec: Vec<usize>) -> Self {
        MonomialOrder { kind, prec }
    }
    /// Variables in declaration order, first most significant.
    pub fn natural(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, prec: (0..nvars).collect() }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.deg.cmp(&b.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.kind {
            OrderKind::WDegLex => {
                for &v in &self.prec {
                    match a.e[v].cmp(&b.e[v]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::WDegRevLex => {
                for &v in self.prec.iter().rev() {
                    match a.e[v].cmp(&b.e[v]) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A weighted polynomial ring over an exact field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub vars: Vec<VarSpec>,
    pub ctx: F::Ctx,
    pub order: MonomialOrder,
    index: HashMap<String, usize>,
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, o: &Self) -> bool {
        self.vars == o.vars && self.ctx == o.ctx && self.order == o.order
    }
}
impl<F: Field> Eq for PolyRing<F> {}

impl<F: Field> PolyRing<F> {
    pub fn new(ctx: F::Ctx, vars: Vec<VarSpec>, order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        let mut index = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if v.weight == 0 {
                return Err(PolyError::Ring(format!("variable `{}` has weight 0", v.name)));
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(PolyError::Ring(format!("duplicate variable `{}`", v.name)));
            }
        }
        let mut seen = order.prec.clone();
        seen.sort_unstable();
        if seen != (0..vars.len()).collect::<Vec<_>>() {
            return Err(PolyError::Ring("precedence is not a permutation of the variables".into()));
        }
        Ok(Arc::new(PolyRing { vars, ctx, order, index }))
    }

    /// Weighted deg-revlex with declaration order as precedence.
    pub fn with_default_order(ctx: F::Ctx, vars: Vec<VarSpec>) -> Arc<Self> {
        let n = vars.len();
        Self::new(ctx, vars, MonomialOrder::natural(OrderKind::WDegRevLex, n)).expect("valid ring")
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        Self::new(self.ctx.clone(), self.vars.clone(), order)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
    pub fn weights(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.weight).collect()
    }
    pub fn field_kind(&self) -> FieldKind {
        F::kind(&self.ctx)
    }
    pub fn zero_scalar(&self) -> F {
        F::zero(&self.ctx)
    }
    pub fn one_scalar(&self) -> F {
        F::one(&self.ctx)
    }
    pub fn scalar(&self, v: i64) -> F {
        F::from_i64(&self.ctx, v)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }
    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut m = Monomial::one(self.nvars());
        m.e[i] = 1;
        m.deg = self.vars[i].weight;
        m
    }
    pub fn monomial(&self, exps: &[u8]) -> Monomial {
        assert_eq!(exps.len(), self.nvars());
        let deg = exps.iter().zip(&self.vars).map(|(&e, v)| e as u32 * v.weight).sum();
        Monomial { deg, e: exps.iter().copied().collect() }
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.e.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].name.clone()),
                _ => parts.push(format!("{}^{}", self.vars[i].name, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}
