//! Rewriting in path algebras of quivers: oriented linear relations,
//! overlap completion, normal forms and graded basis enumeration.
//!
//! Words are stored in written order and composed from the right: the word
//! `B_1*A_1` first follows `A_1`, then `B_1`.

mod text;

pub use text::{parse_system, system_to_text, TextError};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::exact_math::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// The quiver Q_n: a central vertex v0, vertices v1..vn, arrows
    /// A_i: v0 -> vi of degree 0 and B_i: vi -> v0 of degree 1.
    pub fn e_quiver(n: usize) -> Quiver {
        let vertices = (0..=n).map(|i| format!("v{i}")).collect();
        let mut arrows = Vec::new();
        for i in 1..=n {
            arrows.push(Arrow { name: format!("A_{i}"), source: 0, target: i, degree: 0 });
        }
        for i in 1..=n {
            arrows.push(Arrow { name: format!("B_{i}"), source: i, target: 0, degree: 1 });
        }
        Quiver { vertices, arrows }
    }
}

/// A path; `arrows` in written order, so the last one is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl PathWord {
    pub fn idempotent(v: usize) -> Self {
        PathWord { arrows: Vec::new(), source: v, target: v }
    }
    pub fn arrow(q: &Quiver, a: usize) -> Self {
        PathWord { arrows: vec![a], source: q.arrows[a].source, target: q.arrows[a].target }
    }
    /// Build from written-order arrows, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        let (&first, &last) = (arrows.first()?, arrows.last()?);
        for w in arrows.windows(2) {
            if q.arrows[w[0]].source != q.arrows[w[1]].target {
                return None;
            }
        }
        Some(PathWord { source: q.arrows[last].source, target: q.arrows[first].target, arrows })
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
    pub fn degree(&self, q: &Quiver) -> i32 {
        self.arrows.iter().map(|&a| q.arrows[a].degree).sum()
    }
    /// `self * other`: `other` first. `None` when the endpoints do not match.
    pub fn compose(&self, other: &Self) -> Option<Self> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(PathWord { arrows, source: other.source, target: self.target })
    }
    /// Positions at which `pat` (non-empty) occurs as a subword.
    pub fn occurrences(&self, pat: &PathWord) -> Vec<usize> {
        if pat.is_empty() || pat.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pat.len()).filter(|&p| self.arrows[p..p + pat.len()] == pat.arrows[..]).collect()
    }
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertices[self.source]);
        }
        self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// Replace the subword of length `len` at `pos` by `mid`.
fn splice(w: &PathWord, pos: usize, len: usize, mid: &PathWord) -> PathWord {
    let mut arrows = w.arrows[..pos].to_vec();
    arrows.extend_from_slice(&mid.arrows);
    arrows.extend_from_slice(&w.arrows[pos + len..]);
    PathWord { arrows, source: w.source, target: w.target }
}

/// A linear combination of paths.
pub type LinComb<F> = HashMap<PathWord, F>;

fn add_to<F: Field>(lc: &mut LinComb<F>, w: PathWord, c: F) {
    if c.is_zero() {
        return;
    }
    let v = match lc.remove(&w) {
        Some(old) => old.plus(&c),
        None => c,
    };
    if !v.is_zero() {
        lc.insert(w, v);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule<F: Field> {
    pub lhs: PathWord,
    pub rhs: Vec<(PathWord, F)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rule {0}: right side word {1} does not share endpoints and degree with the left side")]
    Incompatible(String, String),
    #[error("rule {0}: right side word {1} is not smaller than the left side")]
    NotDecreasing(String, String),
    #[error("reduction exceeded {0} steps")]
    NonTerminating(usize),
    #[error("completion truncated at length {0}")]
    Truncated(usize),
    #[error("system is not completed")]
    NotCompleted,
}

/// Which redex to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

const STEP_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Field> {
    pub quiver: Quiver,
    pub ctx: F::Ctx,
    /// `rank[a]` is the position of arrow `a` in the precedence.
    pub rank: Vec<usize>,
    pub rules: Vec<RewriteRule<F>>,
    pub completed: bool,
}

impl<F: Field> RewriteSystem<F> {
    /// `precedence` lists arrow indices from smallest to largest.
    pub fn new(quiver: Quiver, ctx: &F::Ctx, precedence: &[usize]) -> Self {
        let mut rank = vec![0; quiver.arrows.len()];
        for (k, &a) in precedence.iter().enumerate() {
            rank[a] = k;
        }
        assert_eq!(precedence.len(), quiver.arrows.len(), "precedence must list every arrow once");
        RewriteSystem { quiver, ctx: ctx.clone(), rank, rules: Vec::new(), completed: false }
    }

    /// Length first, then lexicographic by arrow precedence.
    pub fn cmp_words(&self, a: &PathWord, b: &PathWord) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.arrows.iter().map(|&x| self.rank[x]).cmp(b.arrows.iter().map(|&x| self.rank[x])))
            .then_with(|| (a.source, a.target).cmp(&(b.source, b.target)))
    }

    fn leading(&self, lc: &LinComb<F>) -> Option<PathWord> {
        lc.keys().max_by(|a, b| self.cmp_words(a, b)).cloned()
    }

    /// Add the relation `lc = 0`, oriented by the word order.
    pub fn add_relation(&mut self, lc: LinComb<F>) -> Result<(), RewriteError> {
        let Some(lead) = self.leading(&lc) else { return Ok(()) };
        let inv = lc[&lead].inverse().expect("nonzero");
        let rhs = lc
            .iter()
            .filter(|(w, _)| **w != lead)
            .map(|(w, c)| (w.clone(), c.times(&inv).negated()))
            .collect();
        self.add_rule(RewriteRule { lhs: lead, rhs })
    }

    pub fn add_rule(&mut self, mut rule: RewriteRule<F>) -> Result<(), RewriteError> {
        let q = &self.quiver;
        let name = rule.lhs.display(q);
        for (w, _) in &rule.rhs {
            if (w.source, w.target) != (rule.lhs.source, rule.lhs.target) || w.degree(q) != rule.lhs.degree(q) {
                return Err(RewriteError::Incompatible(name, w.display(q)));
            }
            if self.cmp_words(w, &rule.lhs) != Ordering::Less {
                return Err(RewriteError::NotDecreasing(name, w.display(q)));
            }
        }
        rule.rhs.sort_by(|a, b| self.cmp_words(&b.0, &a.0));
        self.rules.push(rule);
        self.completed = false;
        Ok(())
    }

    fn find_redex(&self, w: &PathWord, strategy: Strategy) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (r, rule) in self.rules.iter().enumerate() {
            for p in w.occurrences(&rule.lhs) {
                let better = match (best, strategy) {
                    (None, _) => true,
                    (Some((bp, _)), Strategy::Leftmost) => p < bp,
                    (Some((bp, _)), Strategy::Rightmost) => p > bp,
                };
                if better {
                    best = Some((p, r));
                }
            }
        }
        best.map(|(p, r)| (r, p))
    }

    fn apply_at(&self, out: &mut LinComb<F>, w: &PathWord, c: &F, rule: usize, pos: usize) {
        let rule = &self.rules[rule];
        for (r, rc) in &rule.rhs {
            add_to(out, splice(w, pos, rule.lhs.len(), r), c.times(rc));
        }
    }

    pub fn nf_with(&self, lc: &LinComb<F>, strategy: Strategy) -> Result<LinComb<F>, RewriteError> {
        let mut todo: Vec<(PathWord, F)> = lc.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out: LinComb<F> = HashMap::new();
        let mut steps = 0;
        while let Some((w, c)) = todo.pop() {
            steps += 1;
            if steps > STEP_LIMIT {
                return Err(RewriteError::NonTerminating(STEP_LIMIT));
            }
            match self.find_redex(&w, strategy) {
                None => add_to(&mut out, w, c),
                Some((r, p)) => {
                    let mut step = HashMap::new();
                    self.apply_at(&mut step, &w, &c, r, p);
                    todo.extend(step);
                }
            }
        }
        Ok(out)
    }

    pub fn nf(&self, lc: &LinComb<F>) -> LinComb<F> {
        self.nf_with(lc, Strategy::Leftmost).expect("terminating system")
    }

    pub fn nf_word(&self, w: &PathWord) -> LinComb<F> {
        self.nf(&HashMap::from([(w.clone(), F::one(&self.ctx))]))
    }

    pub fn is_normal(&self, w: &PathWord) -> bool {
        self.rules.iter().all(|r| w.occurrences(&r.lhs).is_empty())
    }

    /// Critical words for rules `i` and `j` with the positions of each redex.
    fn critical(&self, i: usize, j: usize) -> Vec<(PathWord, usize, usize)> {
        let (a, b) = (&self.rules[i].lhs, &self.rules[j].lhs);
        let mut out = Vec::new();
        // suffix of a = prefix of b
        for k in 1..a.len().min(b.len()) {
            if a.arrows[a.len() - k..] == b.arrows[..k] {
                let mut arrows = a.arrows.clone();
                arrows.extend_from_slice(&b.arrows[k..]);
                let w = PathWord { arrows, source: b.source, target: a.target };
                out.push((w, 0, a.len() - k));
            }
        }
        if i != j {
            for p in a.occurrences(b) {
                out.push((a.clone(), 0, p));
            }
        }
        out
    }

    /// Resolve all overlaps, adding rules with left sides up to `max_len`.
    /// Returns the number of rules added; errors if some were dropped.
    pub fn complete(&mut self, max_len: usize) -> Result<usize, RewriteError> {
        let mut added = 0;
        let mut truncated = false;
        let mut pairs: Vec<(usize, usize)> =
            (0..self.rules.len()).flat_map(|i| (0..self.rules.len()).map(move |j| (i, j))).collect();
        while let Some((i, j)) = pairs.pop() {
            for (w, pi, pj) in self.critical(i, j) {
                let one = F::one(&self.ctx);
                let mut r1 = HashMap::new();
                self.apply_at(&mut r1, &w, &one, i, pi);
                let mut r2 = HashMap::new();
                self.apply_at(&mut r2, &w, &one, j, pj);
                let mut diff = self.nf_with(&r1, Strategy::Leftmost)?;
                for (x, c) in self.nf_with(&r2, Strategy::Leftmost)? {
                    add_to(&mut diff, x, c.negated());
                }
                let Some(lead) = self.leading(&diff) else { continue };
                if lead.len() > max_len {
                    truncated = true;
                    continue;
                }
                self.add_relation(diff)?;
                added += 1;
                let k = self.rules.len() - 1;
                for m in 0..=k {
                    pairs.push((k, m));
                    if m != k {
                        pairs.push((m, k));
                    }
                }
            }
        }
        self.interreduce();
        if truncated {
            return Err(RewriteError::Truncated(max_len));
        }
        self.completed = true;
        Ok(added)
    }

    /// Drop rules whose left side contains another left side and bring every
    /// right side to normal form.
    fn interreduce(&mut self) {
        let lhs: Vec<PathWord> = self.rules.iter().map(|r| r.lhs.clone()).collect();
        let keep: Vec<bool> = (0..lhs.len())
            .map(|i| {
                !(0..lhs.len()).any(|j| {
                    j != i
                        && !lhs[i].occurrences(&lhs[j]).is_empty()
                        && (lhs[i] != lhs[j] || j < i)
                })
            })
            .collect();
        let mut rules: Vec<RewriteRule<F>> =
            self.rules.iter().zip(&keep).filter(|(_, k)| **k).map(|(r, _)| r.clone()).collect();
        let sys = RewriteSystem { rules: rules.clone(), ..self.clone() };
        for r in &mut rules {
            let lc: LinComb<F> = r.rhs.iter().cloned().collect();
            let mut rhs: Vec<(PathWord, F)> = sys.nf(&lc).into_iter().collect();
            rhs.sort_by(|a, b| self.cmp_words(&b.0, &a.0));
            r.rhs = rhs;
        }
        rules.sort_by(|a, b| self.cmp_words(&a.lhs, &b.lhs));
        self.rules = rules;
    }

    /// Normal-form words with internal degree <= `max_degree` and length
    /// <= `max_len`, grouped by (source, target, degree).
    pub fn basis_by_degree(&self, max_degree: i32, max_len: usize) -> Result<BTreeMap<(usize, usize, i32), Vec<PathWord>>, RewriteError> {
        if !self.completed {
            return Err(RewriteError::NotCompleted);
        }
        let q = &self.quiver;
        let mut out: BTreeMap<(usize, usize, i32), Vec<PathWord>> = BTreeMap::new();
        let mut frontier: Vec<PathWord> = (0..q.vertices.len()).map(PathWord::idempotent).collect();
        for len in 0..=max_len {
            let mut next = Vec::new();
            for w in frontier {
                let d = w.degree(q);
                if d <= max_degree {
                    out.entry((w.source, w.target, d)).or_default().push(w.clone());
                }
                if len == max_len {
                    continue;
                }
                for a in 0..q.arrows.len() {
                    if let Some(x) = PathWord::arrow(q, a).compose(&w) {
                        if self.is_normal(&x) {
                            next.push(x);
                        }
                    }
                }
            }
            frontier = next;
        }
        for v in out.values_mut() {
            v.sort_by(|a, b| self.cmp_words(a, b));
        }
        Ok(out)
    }

    pub fn display_rule(&self, r: &RewriteRule<F>) -> String {
        let q = &self.quiver;
        let rhs = text::terms_to_text(q, &r.rhs);
        format!("{} -> {}", r.lhs.display(q), rhs)
    }
}

impl<F: Field> fmt::Display for RewriteSystem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{}", self.display_rule(r))?;
        }
        Ok(())
    }
}

/// Arrow precedence for Q_n, smallest first: A_1 < B_1 < A_2 < .. < A_n <
/// B_2 < .. < B_n. With A_1 and B_1 smallest the loop at v0 normalizes to
/// B_1*A_1.
pub fn e_precedence(n: usize) -> Vec<usize> {
    let (a, b) = (|i: usize| i - 1, |i: usize| n + i - 1);
    let mut p = vec![a(1), b(1)];
    p.extend((2..=n).map(a));
    p.extend((2..=n).map(b));
    p
}

/// The uncompleted relations B_i*A_i = B_1*A_1 (i >= 2) and A_i*B_j = 0 (i != j).
pub fn e_relations<F: Field>(n: usize, ctx: &F::Ctx) -> RewriteSystem<F> {
    let q = Quiver::e_quiver(n);
    let mut s = RewriteSystem::new(q.clone(), ctx, &e_precedence(n));
    let a = |i: usize| i - 1;
    let b = |i: usize| n + i - 1;
    let word = |x: usize, y: usize| PathWord::from_arrows(&q, vec![x, y]).expect("composable");
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                s.add_relation(HashMap::from([(word(a(i), b(j)), F::one(ctx))])).expect("valid");
            }
        }
    }
    for i in 2..=n {
        let lc = HashMap::from([(word(b(i), a(i)), F::one(ctx)), (word(b(1), a(1)), F::one(ctx).negated())]);
        s.add_relation(lc).expect("valid");
    }
    s
}

/// The completed system for E_{1,n} (n >= 2).
pub fn e_system<F: Field>(n: usize, ctx: &F::Ctx) -> Result<RewriteSystem<F>, RewriteError> {
    let mut s = e_relations::<F>(n, ctx);
    s.complete(12)?;
    Ok(s)
}

/// All paths of length exactly `len`, in written order.
pub fn paths_of_length(q: &Quiver, len: usize) -> Vec<PathWord> {
    let mut cur: Vec<PathWord> = (0..q.vertices.len()).map(PathWord::idempotent).collect();
    for _ in 0..len {
        cur = cur.iter().flat_map(|w| (0..q.arrows.len()).filter_map(move |a| PathWord::arrow(q, a).compose(w))).collect();
    }
    cur
}

/// Dimensions of kQ/J in path lengths 0..=max_len by direct linear algebra:
/// all paths of a given length modulo the span of u*r*v over the relations r
/// (each `lhs - rhs` of `sys`). No rewriting is involved. Returns `None` when
/// some relation mixes lengths, since the quotient is then not length-graded.
pub fn quotient_dims_by_length<F: Field>(sys: &RewriteSystem<F>, max_len: usize) -> Option<Vec<usize>> {
    let q = &sys.quiver;
    let rels: Vec<LinComb<F>> = sys
        .rules
        .iter()
        .map(|r| {
            let mut lc: LinComb<F> = r.rhs.iter().map(|(w, c)| (w.clone(), c.negated())).collect();
            add_to(&mut lc, r.lhs.clone(), F::one(&sys.ctx));
            lc
        })
        .collect();
    if sys.rules.iter().any(|r| r.rhs.iter().any(|(w, _)| w.len() != r.lhs.len())) {
        return None;
    }
    let by_len: Vec<Vec<PathWord>> = (0..=max_len).map(|l| paths_of_length(q, l)).collect();
    let mut dims = Vec::new();
    for l in 0..=max_len {
        let index: HashMap<&PathWord, usize> = by_len[l].iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = crate::exact_math::SparseMatrix::zeros(&sys.ctx, 0, by_len[l].len());
        for (r, rule) in rels.iter().zip(&sys.rules) {
            let rl = rule.lhs.len();
            if rl > l {
                continue;
            }
            for lu in 0..=l - rl {
                for u in &by_len[lu] {
                    for v in &by_len[l - rl - lu] {
                        let row: Vec<(usize, F)> = r
                            .iter()
                            .filter_map(|(w, c)| Some((index[&u.compose(w)?.compose(v)?], c.clone())))
                            .collect();
                        if !row.is_empty() {
                            m.push_row(row);
                        }
                    }
                }
            }
        }
        dims.push(by_len[l].len() - m.rank());
    }
    Some(dims)
}
