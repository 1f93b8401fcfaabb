use std::sync::Arc;

use crate::exact_math::Field;

use super::{Monomial, PolyRing, Polynomial};

/// Result of Buchberger's algorithm, possibly truncated at a degree cap.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    /// Reduced, monic, sorted by increasing leading monomial.
    pub polys: Vec<Polynomial<F>>,
    /// False when S-pairs above the cap were left unprocessed.
    pub complete: bool,
    pub cap: Option<u32>,
}

/// Division result: `f = sum q_i g_i + remainder`.
#[derive(Clone, Debug)]
pub struct Reduction<F: Field> {
    pub quotients: Vec<Polynomial<F>>,
    pub remainder: Polynomial<F>,
}

/// Index for repeated divisibility queries against a fixed list of leading monomials.
struct Divisors {
    lms: Vec<Monomial>,
    masks: Vec<u64>,
}

impl Divisors {
    fn new<F: Field>(g: &[Polynomial<F>]) -> Self {
        let lms: Vec<Monomial> = g.iter().map(|p| p.lm().clone()).collect();
        let masks = lms.iter().map(|m| m.support_mask()).collect();
        Divisors { lms, masks }
    }
    fn find(&self, m: &Monomial) -> Option<usize> {
        let mm = m.support_mask();
        (0..self.lms.len()).find(|&k| self.masks[k] & !mm == 0 && self.lms[k].divides(m))
    }
}

fn reduce_impl<F: Field>(f: &Polynomial<F>, g: &[Polynomial<F>], want_quotients: bool) -> Reduction<F> {
    let ring = &f.ring;
    for p in g {
        assert!(!p.is_zero(), "zero divisor in normal form");
    }
    let div = Divisors::new(g);
    let inv_lc: Vec<F> = g.iter().map(|p| p.lc().inverse().unwrap()).collect();
    let mut quotients: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); if want_quotients { g.len() } else { 0 }];
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    while let Some((m, c)) = p.terms.first().cloned() {
        match div.find(&m) {
            Some(k) => {
                let q = g[k].lm().quotient_of(&m);
                let coef = c.times(&inv_lc[k]);
                p = p.add_scaled_shifted(&coef.negated(), &q, &g[k]);
                if want_quotients {
                    quotients[k].push((q, coef));
                }
            }
            None => {
                rem.push((m, c));
                p.terms.remove(0);
            }
        }
    }
    Reduction {
        quotients: quotients.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect(),
        remainder: Polynomial { ring: ring.clone(), terms: rem },
    }
}

/// Fully reduced remainder of `f` modulo `g`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, g: &[Polynomial<F>]) -> Polynomial<F> {
    reduce_impl(f, g, false).remainder
}

/// Remainder together with the quotients of the division.
pub fn normal_form_with_quotients<F: Field>(f: &Polynomial<F>, g: &[Polynomial<F>]) -> Reduction<F> {
    reduce_impl(f, g, true)
}

pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let w = f.ring.weights();
    let l = f.lm().lcm(g.lm(), &w);
    let a = f.lm().quotient_of(&l);
    let b = g.lm().quotient_of(&l);
    let t = f.mul_monomial(&a, &f.lc().inverse().unwrap());
    t.add_scaled_shifted(&g.lc().inverse().unwrap().negated(), &b, g)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Buchberger's algorithm with the Gebauer-Moeller criteria and sugar
/// selection. With a cap, pairs whose lcm has weighted degree above it are
/// left unprocessed and the result is marked incomplete.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], cap: Option<u32>) -> GroebnerBasis<F> {
    let ring = gens.first().map(|g| g.ring.clone()).expect("buchberger needs at least one generator");
    let weights = ring.weights();
    let mut polys: Vec<Polynomial<F>> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let deferred;

    // seed with interreduced generators, smallest leading term first
    let mut input: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| ring.order.cmp(a.lm(), b.lm()));

    let insert = |h: Polynomial<F>,
                  s: u32,
                  polys: &mut Vec<Polynomial<F>>,
                  sugar: &mut Vec<u32>,
                  active: &mut Vec<usize>,
                  pairs: &mut Vec<Pair>| {
        let hi = polys.len();
        let hlm = h.lm().clone();
        polys.push(h);
        sugar.push(s);
        // Gebauer-Moeller update
        let mut cands: Vec<Pair> = active
            .iter()
            .map(|&g| {
                let lcm = hlm.lcm(polys[g].lm(), &weights);
                let sg = (s + lcm.deg - hlm.deg).max(sugar[g] + lcm.deg - polys[g].lm().deg);
                Pair { i: g, j: hi, lcm, sugar: sg }
            })
            .collect();
        let coprime: Vec<bool> = cands.iter().map(|p| polys[p.i].lm().coprime(&hlm)).collect();
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if coprime[a] {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].lcm.divides(&cands[a].lcm) && (cands[b].lcm != cands[a].lcm || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // among equal lcms keep one, and drop it entirely if any of them is coprime
        let mut new_pairs = Vec::new();
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            let any_coprime = (0..cands.len()).any(|b| cands[b].lcm == cands[a].lcm && coprime[b]);
            if !any_coprime {
                new_pairs.push(cands[a].clone());
            }
        }
        cands.clear();
        pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && hlm.lcm(polys[p.i].lm(), &weights) != p.lcm
                && hlm.lcm(polys[p.j].lm(), &weights) != p.lcm)
        });
        pairs.extend(new_pairs);
        active.retain(|&g| !hlm.divides(polys[g].lm()));
        active.push(hi);
    };

    for g in input {
        let cur: Vec<Polynomial<F>> = active.iter().map(|&k| polys[k].clone()).collect();
        let h = normal_form(&g, &cur);
        if h.is_zero() {
            continue;
        }
        let s = g.degree().unwrap();
        insert(h.monic(), s, &mut polys, &mut sugar, &mut active, &mut pairs);
    }

    loop {
        // select the pair of least sugar, then least lcm
        let mut best: Option<usize> = None;
        for (k, p) in pairs.iter().enumerate() {
            if cap.is_some_and(|c| p.lcm.deg > c) {
                continue;
            }
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &pairs[b];
                    if p.sugar < q.sugar || (p.sugar == q.sugar && ring.order.cmp(&p.lcm, &q.lcm).is_lt())
                    {
                        Some(k)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(b) = best else {
            deferred = !pairs.is_empty();
            break;
        };
        let pair = pairs.swap_remove(b);
        let sp = s_polynomial(&polys[pair.i], &polys[pair.j]);
        if sp.is_zero() {
            continue;
        }
        let cur: Vec<Polynomial<F>> = active.iter().map(|&k| polys[k].clone()).collect();
        let h = normal_form(&sp, &cur);
        if h.is_zero() {
            continue;
        }
        insert(h.monic(), pair.sugar, &mut polys, &mut sugar, &mut active, &mut pairs);
    }

    let basis: Vec<Polynomial<F>> = active.iter().map(|&k| polys[k].clone()).collect();
    GroebnerBasis { ring: ring.clone(), polys: interreduce(basis), complete: !deferred, cap }
}

/// Tail-reduce a minimal basis and sort by leading monomial.
pub fn interreduce<F: Field>(mut basis: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring.clone();
    basis.sort_by(|a, b| ring.order.cmp(a.lm(), b.lm()));
    // drop non-minimal leading terms
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let n = minimal.len();
    for k in 0..n {
        let others: Vec<Polynomial<F>> = (0..n).filter(|&j| j != k).map(|j| minimal[j].clone()).collect();
        let p = &minimal[k];
        let head = Polynomial { ring: ring.clone(), terms: vec![p.terms[0].clone()] };
        let tail = Polynomial { ring: ring.clone(), terms: p.terms[1..].to_vec() };
        let red = if others.is_empty() { tail } else { normal_form(&tail, &others) };
        minimal[k] = (&head + &red).monic();
    }
    minimal
}

impl<F: Field> GroebnerBasis<F> {
    pub fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        normal_form(f, &self.polys)
    }
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }
    /// Every S-polynomial reduces to zero (with the cap, only pairs within it are checked).
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let w = self.ring.weights();
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let l = self.polys[i].lm().lcm(self.polys[j].lm(), &w);
                if self.cap.is_some_and(|c| l.deg > c) {
                    continue;
                }
                if !self.reduce(&s_polynomial(&self.polys[i], &self.polys[j])).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
