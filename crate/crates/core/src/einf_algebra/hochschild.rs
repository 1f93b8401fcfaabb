//! Reduced Hochschild complex of E relative to the span of the idempotents.
//!
//! A cochain of arity d and internal degree s assigns to each composable
//! tuple (a_d, .., a_1) of non-idempotent basis elements a value with the
//! same outer endpoints and degree |a_1| + .. + |a_d| + s. Tuples are stored
//! in written order, `t[0] = a_d`, so `t[k].source == t[k + 1].target`.
//!
//! Signs use shifted degrees ||a|| = |a| - 1 and mu^2(a_2, a_1) =
//! (-1)^{|a_1|} a_2 a_1; then delta(phi) = [mu^2, phi] is the linearization
//! of the A-infinity equations at mu^2 when ||phi|| is odd.

use std::collections::HashMap;

use super::{EAlgebra, EError};
use crate::exact_math::{Field, SparseMatrix};

#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub arity: usize,
    pub s: i32,
    pub tuples: Vec<Vec<usize>>,
    /// (tuple index, output basis element).
    pub basis: Vec<(usize, usize)>,
    tuple_index: HashMap<Vec<usize>, usize>,
    /// Per tuple, its basis entries as (output, basis index).
    outputs: Vec<Vec<(usize, usize)>>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn tuple_position(&self, t: &[usize]) -> Option<usize> {
        self.tuple_index.get(t).copied()
    }
    pub fn position(&self, t: &[usize], out: usize) -> Option<usize> {
        let k = self.tuple_position(t)?;
        self.outputs[k].iter().find(|(o, _)| *o == out).map(|(_, i)| *i)
    }
    pub(crate) fn outputs_of(&self, tuple: usize) -> &[(usize, usize)] {
        &self.outputs[tuple]
    }
}

/// Composable tuples of non-idempotent basis elements of length `len` with
/// total degree in `lo..=hi`, in written order.
pub(crate) fn composable_tuples<F: Field>(alg: &EAlgebra<F>, len: usize, lo: i32, hi: i32) -> Vec<Vec<usize>> {
    fn go<F: Field>(alg: &EAlgebra<F>, len: usize, lo: i32, hi: i32, cur: &mut Vec<usize>, deg: i32, out: &mut Vec<Vec<usize>>) {
        if deg > hi {
            return;
        }
        if cur.len() == len {
            if deg >= lo {
                out.push(cur.clone());
            }
            return;
        }
        for x in alg.reduced_basis() {
            if let Some(&last) = cur.last() {
                if alg.source(last) != alg.target(x) {
                    continue;
                }
            }
            cur.push(x);
            go(alg, len, lo, hi, cur, deg + alg.degrees[x], out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(alg, len, lo, hi, &mut Vec::new(), 0, &mut out);
    out
}

/// Basis of the cochains of arity `arity` and internal degree `s`.
pub fn cochain_space<F: Field>(alg: &EAlgebra<F>, arity: usize, s: i32) -> CochainSpace {
    let (dmin, dmax) = (*alg.degrees.iter().min().unwrap(), *alg.degrees.iter().max().unwrap());
    let tuples = composable_tuples(alg, arity, dmin - s, dmax - s);
    let mut basis = Vec::new();
    let mut outputs = Vec::new();
    for (k, t) in tuples.iter().enumerate() {
        let (src, tgt) = (alg.source(t[t.len() - 1]), alg.target(t[0]));
        let deg: i32 = t.iter().map(|&x| alg.degrees[x]).sum::<i32>() + s;
        let mut outs = Vec::new();
        for b in 0..alg.dim() {
            if alg.source(b) == src && alg.target(b) == tgt && alg.degrees[b] == deg {
                outs.push((b, basis.len()));
                basis.push((k, b));
            }
        }
        outputs.push(outs);
    }
    let tuple_index = tuples.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
    CochainSpace { arity, s, tuples, basis, tuple_index, outputs }
}

fn sign<F: Field>(ctx: &F::Ctx, odd: bool) -> F {
    if odd {
        F::one(ctx).negated()
    } else {
        F::one(ctx)
    }
}

/// mu^2(a_2, a_1) = (-1)^{|a_1|} a_2 a_1.
pub(crate) fn mu2<F: Field>(alg: &EAlgebra<F>, a2: usize, a1: usize) -> Vec<(usize, F)> {
    let sg = sign::<F>(&alg.ctx, alg.degrees[a1] % 2 != 0);
    alg.mul(a2, a1).iter().map(|(x, c)| (*x, c.times(&sg))).collect()
}

/// Matrix of delta from `src` (arity k) to `dst` (arity k + 1, same s);
/// rows index `dst.basis`, columns `src.basis`.
pub fn differential<F: Field>(alg: &EAlgebra<F>, src: &CochainSpace, dst: &CochainSpace) -> SparseMatrix<F> {
    assert_eq!(src.arity + 1, dst.arity);
    assert_eq!(src.s, dst.s);
    let ctx = &alg.ctx;
    let k = src.arity;
    let phi_odd = (src.s + k as i32 - 1).rem_euclid(2) == 1;
    let mut trips: HashMap<(usize, usize), F> = HashMap::new();
    let mut add = |row: Option<usize>, col: usize, c: F| {
        let row = row.expect("differential lands in the target space");
        let e = trips.entry((row, col)).or_insert_with(|| F::zero(ctx));
        *e = e.plus(&c);
    };
    for (ti, t) in dst.tuples.iter().enumerate() {
        let out_pos = |b: usize| dst.outputs_of(ti).iter().find(|(o, _)| *o == b).map(|(_, i)| *i);
        // mu^2(a_{k+1}, phi(a_k .. a_1))
        if let Some(u) = src.tuple_position(&t[1..]) {
            for &(b, col) in src.outputs_of(u) {
                for (x, c) in mu2(alg, t[0], b) {
                    add(out_pos(x), col, c);
                }
            }
        }
        // (-1)^{||phi|| ||a_1||} mu^2(phi(a_{k+1} .. a_2), a_1)
        let a1 = t[k];
        let sg = sign::<F>(ctx, phi_odd && (alg.degrees[a1] - 1).rem_euclid(2) == 1);
        if let Some(u) = src.tuple_position(&t[..k]) {
            for &(b, col) in src.outputs_of(u) {
                for (x, c) in mu2(alg, b, a1) {
                    add(out_pos(x), col, c.times(&sg));
                }
            }
        }
        // -(-1)^{||phi||} sum_n (-1)^{✠_n} phi(.., mu^2(a_{n+2}, a_{n+1}), a_n, ..)
        let mut dagger = 0i32;
        for nn in 0..k {
            let p = k - nn - 1;
            let sg = sign::<F>(ctx, !phi_odd ^ (dagger.rem_euclid(2) == 1));
            for (x, c) in mu2(alg, t[p], t[p + 1]) {
                let mut u = t[..p].to_vec();
                u.push(x);
                u.extend_from_slice(&t[p + 2..]);
                if let Some(ui) = src.tuple_position(&u) {
                    for &(b, col) in src.outputs_of(ui) {
                        add(out_pos(b), col, c.times(&sg));
                    }
                }
            }
            dagger += alg.degrees[t[k - nn]] - 1;
        }
    }
    SparseMatrix::from_triplets(ctx, dst.dim(), src.dim(), trips.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)))
}

/// Dimension of HH^j(E) in weight r, from arity d = j + r and internal
/// degree s = -r.
pub fn hochschild<F: Field>(alg: &EAlgebra<F>, j: u32, r: u32) -> Result<usize, EError> {
    if !(1..=6).contains(&r) {
        return Err(EError::BadWeight(r));
    }
    if !(1..=2).contains(&j) {
        return Err(EError::BadDegree(j));
    }
    let d = (j + r) as usize;
    let s = -(r as i32);
    let prev = cochain_space(alg, d - 1, s);
    let cur = cochain_space(alg, d, s);
    let next = cochain_space(alg, d + 1, s);
    let r_in = differential(alg, &prev, &cur).rank();
    let r_out = differential(alg, &cur, &next).rank();
    Ok(cur.dim() - r_out - r_in)
}

/// Whether delta o delta vanishes from arity `arity` at internal degree `s`.
pub fn delta_squared_is_zero<F: Field>(alg: &EAlgebra<F>, arity: usize, s: i32) -> bool {
    let c0 = cochain_space(alg, arity, s);
    let c1 = cochain_space(alg, arity + 1, s);
    let c2 = cochain_space(alg, arity + 2, s);
    let d0 = differential(alg, &c0, &c1);
    let d1 = differential(alg, &c1, &c2);
    for i in 0..d1.nrows {
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (k, a) in d1.row(i) {
            for (j, b) in d0.row(*k) {
                let e = acc.entry(*j).or_insert_with(|| F::zero(&alg.ctx));
                *e = e.plus(&a.times(b));
            }
        }
        if acc.values().any(|v| !v.is_zero()) {
            return false;
        }
    }
    true
}
