//! The graded algebra E_{1,n} = kQ_n/J (n >= 2), its relative Hochschild
//! cohomology and truncated A-infinity structures on it.
//!
//! Internal degrees: |A_i| = 0, |B_i| = |w| = |l_i| = 1, with w = B_1*A_1 at
//! v0 and l_i = A_i*B_i at v_i. Products compose from the right, so `a * b`
//! follows `b` first and needs `source(a) == target(b)`.

mod ainf;
mod checks;
mod hochschild;

pub use ainf::{
    ainf_check, ainf_to_text, conjugate_by_grading, parse_ainf, random_cocycle_mu3, random_mu3, rescale, AInfStructure, Cochain,
};
pub use checks::{
    check_e_algebra, check_hochschild, check_hochschild_with, check_rescale_law, check_stabilization, check_trivial_ainf, expected_hh2,
};
pub use hochschild::{cochain_space, delta_squared_is_zero, differential, hochschild, CochainSpace};

use std::collections::HashMap;

use thiserror::Error;

use crate::exact_math::Field;
use crate::moduli::{special_moduli, u_n_reduced};
use crate::ncrewrite::{e_system, PathWord, RewriteError, RewriteSystem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EError {
    #[error("E_{{1,n}} needs n >= 2, got {0}")]
    BadN(usize),
    #[error("weight {0} outside 1..=6")]
    BadWeight(u32),
    #[error("cohomological degree {0} not supported")]
    BadDegree(u32),
    #[error("rescaling by zero")]
    ZeroScalar,
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Sparse element of E: (basis index, coefficient).
pub type Elem<F> = Vec<(usize, F)>;

#[derive(Clone, Debug)]
pub struct EAlgebra<F: Field> {
    pub n: usize,
    pub ctx: F::Ctx,
    pub system: RewriteSystem<F>,
    /// Canonical names e0..en, A1..An, B1..Bn, w, l1..ln.
    pub names: Vec<String>,
    pub words: Vec<PathWord>,
    pub degrees: Vec<i32>,
    table: Vec<Vec<Elem<F>>>,
}

impl<F: Field> EAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }
    pub fn is_idempotent(&self, i: usize) -> bool {
        i <= self.n
    }
    /// Basis of the augmentation quotient: everything but the idempotents.
    pub fn reduced_basis(&self) -> std::ops::Range<usize> {
        self.n + 1..self.dim()
    }
    pub fn source(&self, i: usize) -> usize {
        self.words[i].source
    }
    pub fn target(&self, i: usize) -> usize {
        self.words[i].target
    }
    /// `a * b` on basis elements.
    pub fn mul(&self, a: usize, b: usize) -> &Elem<F> {
        &self.table[a][b]
    }
    pub fn mul_elems(&self, x: &Elem<F>, y: &Elem<F>) -> Elem<F> {
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, cc) in &self.table[*a][*b] {
                    let v = ca.times(cb).times(cc);
                    let e = acc.entry(*c).or_insert_with(|| F::zero(&self.ctx));
                    *e = e.plus(&v);
                }
            }
        }
        normalize(acc)
    }
    /// The unit e0 + .. + en.
    pub fn unit(&self) -> Elem<F> {
        (0..=self.n).map(|i| (i, F::one(&self.ctx))).collect()
    }
    pub fn display(&self, x: &Elem<F>) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter().map(|(i, c)| format!("{}*{}", c, self.names[*i])).collect::<Vec<_>>().join(" + ")
    }
    /// First basis triple on which (ab)c != a(bc), if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let one = F::one(&self.ctx);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let (xa, xb, xc) = (vec![(a, one.clone())], vec![(b, one.clone())], vec![(c, one.clone())]);
                    if self.mul_elems(&self.mul_elems(&xa, &xb), &xc) != self.mul_elems(&xa, &self.mul_elems(&xb, &xc)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

pub(crate) fn normalize<F: Field>(acc: HashMap<usize, F>) -> Elem<F> {
    let mut v: Elem<F> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// Build E_{1,n} with its multiplication table from the completed rewriting
/// system.
pub fn build_e<F: Field>(n: usize, ctx: &F::Ctx) -> Result<EAlgebra<F>, EError> {
    if n < 2 {
        return Err(EError::BadN(n));
    }
    let system = e_system::<F>(n, ctx)?;
    let q = &system.quiver;
    let (a, b) = (|i: usize| i - 1, |i: usize| n + i - 1);
    let word = |xs: Vec<usize>| PathWord::from_arrows(q, xs).expect("composable");
    let mut names = Vec::new();
    let mut words = Vec::new();
    for v in 0..=n {
        names.push(format!("e{v}"));
        words.push(PathWord::idempotent(v));
    }
    for i in 1..=n {
        names.push(format!("A{i}"));
        words.push(word(vec![a(i)]));
    }
    for i in 1..=n {
        names.push(format!("B{i}"));
        words.push(word(vec![b(i)]));
    }
    names.push("w".into());
    words.push(word(vec![b(1), a(1)]));
    for i in 1..=n {
        names.push(format!("l{i}"));
        words.push(word(vec![a(i), b(i)]));
    }
    let basis = system.basis_by_degree(4, 8)?;
    let mut found: Vec<&PathWord> = basis.values().flatten().collect();
    found.sort();
    let mut expected: Vec<&PathWord> = words.iter().collect();
    expected.sort();
    if found != expected {
        return Err(EError::Malformed(format!("normal-form basis has {} words, expected {}", found.len(), words.len())));
    }
    let pos: HashMap<&PathWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let degrees = words.iter().map(|w| w.degree(q)).collect();
    let table = (0..words.len())
        .map(|x| {
            (0..words.len())
                .map(|y| match words[x].compose(&words[y]) {
                    None => Vec::new(),
                    Some(p) => normalize(system.nf_word(&p).into_iter().map(|(w, c)| (pos[&w], c)).collect()),
                })
                .collect()
        })
        .collect();
    Ok(EAlgebra { n, ctx: ctx.clone(), system, names, words, degrees, table })
}

/// Smallest d for which the truncation to mu^{<= d} already determines the
/// whole moduli of A-infinity structures: 2 + the largest weight among the
/// generators and relations of O(U_n) in the presentation used for n (free
/// special coordinates for n <= 4, reduced coordinates for n >= 5).
pub fn stabilization_bound(n: usize) -> Result<usize, EError> {
    if n == 0 {
        return Err(EError::BadN(0));
    }
    let ctx: u64 = 101;
    let spec = if n <= 4 { special_moduli::<crate::exact_math::Fp>(n, &ctx) } else { u_n_reduced::<crate::exact_math::Fp>(n, &ctx) }
        .expect("presentation exists for n >= 1");
    let gens = spec.ring.vars.iter().map(|v| v.weight).max().unwrap_or(0);
    let rels = spec.ideal.gens.iter().filter_map(|(_, g)| g.degree()).max().unwrap_or(0);
    Ok(2 + gens.max(rels) as usize)
}
