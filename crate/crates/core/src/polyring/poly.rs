use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::exact_math::Field;

use super::{Monomial, PolyError, PolyRing};

/// A polynomial; terms are sorted by decreasing monomial order with no zero
/// coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub terms: Vec<(Monomial, F)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && (Arc::ptr_eq(&self.ring, &o.ring) || *self.ring == *o.ring)
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }
    pub fn constant(ring: &Arc<PolyRing<F>>, c: F) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((ring.one_monomial(), c));
        }
        p
    }
    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.one_scalar())
    }
    pub fn int(ring: &Arc<PolyRing<F>>, v: i64) -> Self {
        Self::constant(ring, ring.scalar(v))
    }
    pub fn var(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        Polynomial { ring: ring.clone(), terms: vec![(ring.var_monomial(i), ring.one_scalar())] }
    }
    /// Variable by name; panics on unknown names.
    pub fn named(ring: &Arc<PolyRing<F>>, name: &str) -> Self {
        let i = ring.var_index(name).unwrap_or_else(|| panic!("unknown variable `{name}`"));
        Self::var(ring, i)
    }
    pub fn term(ring: &Arc<PolyRing<F>>, m: Monomial, c: F) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }
    /// Build from unsorted terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, mut terms: Vec<(Monomial, F)>) -> Self {
        let ord = &ring.order;
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.plus(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
    pub fn lc(&self) -> &F {
        &self.terms[0].1
    }
    /// Maximum weighted degree (`None` for zero).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg).max()
    }
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg).min()
    }
    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.deg == w[1].0.deg)
    }
    pub fn constant_term(&self) -> F {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.zero_scalar(),
        }
    }
    pub fn coeff(&self, m: &Monomial) -> F {
        let ord = &self.ring.order;
        match self.terms.binary_search_by(|t| ord.cmp(m, &t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.zero_scalar(),
        }
    }
    /// Part of weighted degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().filter(|t| t.0.deg == d).cloned().collect() }
    }

    fn same_ring(&self, o: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &o.ring) || *self.ring == *o.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    /// `self + c * m * o`, merging sorted term lists.
    pub fn add_scaled_shifted(&self, c: &F, m: &Monomial, o: &Self) -> Self {
        let ord = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (a, b) = (&self.terms, &o.terms);
        let (mut i, mut j) = (0, 0);
        let shift = |t: &(Monomial, F)| (if m.is_one() { t.0.clone() } else { t.0.mul(m) }, t.1.times(c));
        let mut pending: Option<(Monomial, F)> = b.first().map(&shift);
        while i < a.len() || pending.is_some() {
            match &pending {
                None => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Some(bt) => {
                    let o = if i < a.len() { ord.cmp(&a[i].0, &bt.0) } else { Ordering::Less };
                    match o {
                        Ordering::Greater => {
                            out.push(a[i].clone());
                            i += 1;
                        }
                        Ordering::Less => {
                            out.push(pending.take().unwrap());
                            j += 1;
                            pending = b.get(j).map(&shift);
                        }
                        Ordering::Equal => {
                            let s = a[i].1.plus(&bt.1);
                            if !s.is_zero() {
                                out.push((a[i].0.clone(), s));
                            }
                            i += 1;
                            j += 1;
                            pending = b.get(j).map(&shift);
                        }
                    }
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, PolyError> {
        self.same_ring(o)?;
        Ok(self.add_scaled_shifted(&self.ring.one_scalar(), &self.ring.one_monomial(), o))
    }
    pub fn checked_mul(&self, o: &Self) -> Result<Self, PolyError> {
        self.same_ring(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled_shifted(c, m, big);
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a.times(c))).collect() }
    }
    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.times(c))).collect() }
    }
    pub fn neg(&self) -> Self {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a.negated())).collect() }
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }
    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().unwrap()),
        }
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.nvars(), "point has wrong length");
        let mut acc = self.ring.zero_scalar();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.e.iter().enumerate() {
                if e > 0 {
                    t = t.times(&point[i].pow(e as u64));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let w = self.ring.vars[i].weight;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.e[i] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.e[i] -= 1;
                m2.deg -= w;
                (m2, c.times(&self.ring.scalar(m.e[i] as i64)))
            })
            .filter(|t| !t.1.is_zero())
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Re-sort into another ring with the same variables (typically a different order).
    pub fn to_ring(&self, ring: &Arc<PolyRing<F>>) -> Self {
        assert_eq!(ring.vars, self.ring.vars, "to_ring needs identical variables");
        Polynomial::from_terms(ring, self.terms.clone())
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.e.iter().enumerate() {
                used[i] |= e > 0;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            let abs = if neg { c.negated() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", abs.coeff_string())?;
            } else if abs.is_one() {
                write!(f, "{}", self.ring.monomial_string(m))?;
            } else {
                write!(f, "{}*{}", abs.coeff_string(), self.ring.monomial_string(m))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<F: Field> std::ops::$tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, o: &Polynomial<F>) -> Polynomial<F> {
                let f: fn(&Polynomial<F>, &Polynomial<F>) -> Polynomial<F> = $body;
                f(self, o)
            }
        }
        impl<F: Field> std::ops::$tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, o: Polynomial<F>) -> Polynomial<F> {
                std::ops::$tr::$m(&self, &o)
            }
        }
        impl<F: Field> std::ops::$tr<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, o: &Polynomial<F>) -> Polynomial<F> {
                std::ops::$tr::$m(&self, o)
            }
        }
        impl<F: Field> std::ops::$tr<Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, o: Polynomial<F>) -> Polynomial<F> {
                std::ops::$tr::$m(self, &o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.checked_add(b).expect("ring mismatch"));
binop!(Sub, sub, |a, b| {
    a.same_ring(b).expect("ring mismatch");
    a.add_scaled_shifted(&a.ring.scalar(-1), &a.ring.one_monomial(), b)
});
binop!(Mul, mul, |a, b| a.checked_mul(b).expect("ring mismatch"));

impl<F: Field> std::ops::Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(&self)
    }
}
impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}
