use std::collections::HashMap;

use moduli_core::ncrewrite::{
    e_precedence, e_relations, e_system, parse_system, paths_of_length, quotient_dims_by_length, system_to_text, Arrow, LinComb,
    PathWord, Quiver, RewriteError, RewriteSystem, Strategy,
};
use moduli_core::polyring::{text::parse_polynomial, IdealPresentation, PolyRing, VarSpec};
use moduli_core::{Field, Fp, Rational};
use proptest::prelude::*;

const P: u64 = 101;

fn a(i: usize) -> usize {
    i - 1
}
fn b(n: usize, i: usize) -> usize {
    n + i - 1
}

fn word(q: &Quiver, arrows: &[usize]) -> PathWord {
    PathWord::from_arrows(q, arrows.to_vec()).expect("composable")
}

fn single<F: Field>(w: PathWord, ctx: &F::Ctx) -> LinComb<F> {
    HashMap::from([(w, F::one(ctx))])
}

// Oracle: dimensions of kQ_n/J by path length, computed with a private
// mod-p elimination over all paths u*r*v. Only the quiver and the defining
// relations are shared with the library.
fn oracle_dims(n: usize, max_len: usize) -> Vec<usize> {
    let arrows: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).chain((1..=n).map(|i| (i, 0))).collect();
    // paths as (written arrows, source, target)
    let mut by_len: Vec<Vec<(Vec<usize>, usize, usize)>> = vec![(0..=n).map(|v| (vec![], v, v)).collect()];
    for l in 1..=max_len {
        let mut next = Vec::new();
        for (w, s, t) in &by_len[l - 1] {
            for (k, &(as_, at)) in arrows.iter().enumerate() {
                if as_ == *t {
                    let mut x = vec![k];
                    x.extend(w);
                    next.push((x, *s, at));
                }
            }
        }
        by_len.push(next);
    }
    let mut rels: Vec<Vec<(Vec<usize>, i64)>> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                rels.push(vec![(vec![a(i), b(n, j)], 1)]);
            }
        }
    }
    for i in 2..=n {
        rels.push(vec![(vec![b(n, i), a(i)], 1), (vec![b(n, 1), a(1)], -1)]);
    }
    let mut dims = Vec::new();
    for l in 0..=max_len {
        let index: HashMap<&Vec<usize>, usize> = by_len[l].iter().enumerate().map(|(k, (w, _, _))| (w, k)).collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for r in &rels {
            for lu in 0..=l.saturating_sub(2) {
                if l < 2 {
                    break;
                }
                let lv = l - 2 - lu;
                for (u, _, _) in &by_len[lu] {
                    for (v, _, _) in &by_len[lv] {
                        let mut row = vec![0u64; by_len[l].len()];
                        let mut any = false;
                        for (m, c) in r {
                            let mut w = u.clone();
                            w.extend(m);
                            w.extend(v);
                            if let Some(&k) = index.get(&w) {
                                row[k] = (row[k] + (c.rem_euclid(P as i64) as u64)) % P;
                                any = true;
                            }
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        dims.push(by_len[l].len() - rank_mod_p(rows));
    }
    dims
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let Some(width) = rows.first().map(|r| r.len()) else { return 0 };
    let inv = |x: u64| (1..P).find(|y| x * y % P == 1).unwrap();
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let s = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = *x * s % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..width {
                    rows[r][c] = (rows[r][c] + P * P - f * rows[rank][c]) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn oracle_dims_by_length() {
    for n in 2..=4 {
        let d = oracle_dims(n, 4);
        assert_eq!(d, vec![n + 1, 2 * n, n + 1, 0, 0], "n={n}");
    }
}

#[test]
fn completed_basis_matches_oracle() {
    for n in 2..=6 {
        let sys = e_system::<Rational>(n, &()).unwrap();
        let basis = sys.basis_by_degree(10, 8).unwrap();
        let mut by_len = [0usize; 9];
        for ws in basis.values() {
            for w in ws {
                by_len[w.len()] += 1;
            }
        }
        let oracle = oracle_dims(n, 5);
        assert_eq!(&by_len[..6], &oracle[..], "n={n}");
        assert_eq!(by_len.iter().sum::<usize>(), 4 * n + 2);
    }
}

#[test]
fn library_quotient_dims_agree() {
    for n in 2..=4 {
        let sys = e_relations::<Fp>(n, &P);
        assert_eq!(quotient_dims_by_length(&sys, 4).unwrap(), oracle_dims(n, 4));
    }
}

#[test]
fn completion_adds_the_two_cubic_rules() {
    let n = 3;
    let mut sys = e_relations::<Rational>(n, &());
    let before = sys.rules.len();
    assert!(sys.basis_by_degree(4, 4).is_err());
    sys.complete(12).unwrap();
    let q = sys.quiver.clone();
    let cubic: Vec<String> = sys.rules.iter().filter(|r| r.lhs.len() == 3).map(|r| sys.display_rule(r)).collect();
    assert_eq!(cubic.len(), 2, "{cubic:?}");
    assert!(cubic.contains(&"A_1*B_1*A_1 -> 0".to_string()));
    assert!(cubic.contains(&"B_1*A_1*B_1 -> 0".to_string()));
    assert_eq!(sys.rules.len(), before + 2);
    assert!(sys.nf_word(&word(&q, &[a(1), b(n, 1), a(1)])).is_empty());
}

#[test]
fn normal_form_examples() {
    let n = 3;
    let sys = e_system::<Rational>(n, &()).unwrap();
    let q = &sys.quiver;
    assert!(sys.nf_word(&word(q, &[a(2), b(n, 3)])).is_empty());
    let w = sys.nf_word(&word(q, &[b(n, 2), a(2)]));
    assert_eq!(w, single::<Rational>(word(q, &[b(n, 1), a(1)]), &()));
    // w * w vanishes, and so does A_2*B_2*A_2
    assert!(sys.nf_word(&word(q, &[b(n, 3), a(3), b(n, 2), a(2)])).is_empty());
    assert!(sys.nf_word(&word(q, &[a(2), b(n, 2), a(2)])).is_empty());
    // A_2*B_2 is its own normal form
    let l2 = word(q, &[a(2), b(n, 2)]);
    assert!(sys.is_normal(&l2));
    assert_eq!(sys.nf_word(&l2), single::<Rational>(l2.clone(), &()));
    let idem = PathWord::idempotent(1);
    assert_eq!(sys.nf_word(&idem), single::<Rational>(idem, &()));
}

#[test]
fn empty_system_is_already_complete() {
    let q = Quiver::e_quiver(2);
    let mut sys = RewriteSystem::<Rational>::new(q, &(), &e_precedence(2));
    assert_eq!(sys.complete(6), Ok(0));
    assert!(sys.rules.is_empty());
    let basis = sys.basis_by_degree(0, 2).unwrap();
    // degree 0: idempotents, the A_i, nothing longer
    assert_eq!(basis.values().map(|v| v.len()).sum::<usize>(), 3 + 2);
}

#[test]
fn rule_validation() {
    let q = Quiver::e_quiver(2);
    let mut sys = RewriteSystem::<Rational>::new(q.clone(), &(), &e_precedence(2));
    let rule = moduli_core::ncrewrite::RewriteRule {
        lhs: word(&q, &[a(1), b(2, 1)]),
        rhs: vec![(word(&q, &[b(2, 1), a(1)]), Rational::int(1))],
    };
    assert!(matches!(sys.add_rule(rule), Err(RewriteError::Incompatible(..))));
    let rule = moduli_core::ncrewrite::RewriteRule {
        lhs: word(&q, &[b(2, 1), a(1)]),
        rhs: vec![(word(&q, &[b(2, 2), a(2)]), Rational::int(1))],
    };
    assert!(matches!(sys.add_rule(rule), Err(RewriteError::NotDecreasing(..))));
}

// One vertex, two loops x < y, relations y*x = x*y and y*y = x*x. The
// normal words count the standard monomials of the commutative ideal
// (x^2 - y^2) in k[x, y].
#[test]
fn commutative_shadow() {
    let q = Quiver {
        vertices: vec!["v".into()],
        arrows: vec![
            Arrow { name: "x".into(), source: 0, target: 0, degree: 0 },
            Arrow { name: "y".into(), source: 0, target: 0, degree: 0 },
        ],
    };
    let mut sys = RewriteSystem::<Rational>::new(q.clone(), &(), &[0, 1]);
    let one = Rational::int(1);
    let m1 = Rational::int(-1);
    sys.add_relation(HashMap::from([(word(&q, &[1, 0]), one.clone()), (word(&q, &[0, 1]), m1.clone())])).unwrap();
    sys.add_relation(HashMap::from([(word(&q, &[1, 1]), one), (word(&q, &[0, 0]), m1)])).unwrap();
    sys.complete(8).unwrap();
    let nc: Vec<u64> = (0..=6).map(|l| paths_of_length(&q, l).iter().filter(|w| sys.is_normal(w)).count() as u64).collect();

    let ring = PolyRing::<Rational>::with_default_order((), vec![VarSpec::new("x", 1), VarSpec::new("y", 1)]);
    let mut ideal = IdealPresentation::new(&ring, "shadow");
    ideal.push("f", parse_polynomial(&ring, "x^2 - y^2").unwrap());
    let comm = ideal.standard_monomial_counts(6).unwrap();
    assert_eq!(nc, comm);
    assert_eq!(nc, vec![1, 2, 2, 2, 2, 2, 2]);
}

#[test]
fn text_round_trip() {
    for n in 2..=4 {
        let sys = e_system::<Rational>(n, &()).unwrap();
        let text = system_to_text(&sys);
        let back = parse_system::<Rational>(&text, &()).unwrap();
        assert_eq!(system_to_text(&back), text);
        assert_eq!(back.rules.len(), sys.rules.len());
    }
    let text = "vertex v0..v1\narrow A_1: v0->v1 deg 0\narrow B_1: v1->v0 deg 1\n# comment\nrel A_1*B_1*A_1 = 0\n";
    let sys = parse_system::<Fp>(text, &7).unwrap();
    assert_eq!(sys.rules.len(), 1);
    assert!(parse_system::<Fp>("vertex v0\narrow A: v0->v9 deg 0\n", &7).is_err());
    assert!(parse_system::<Rational>("vertex v0..v1\narrow A_1: v0->v1 deg 0\nrel A_1*A_1 = 0\n", &()).is_err());
}

// A random composable word in Q_3: walk forward from a start vertex and
// prepend each arrow.
fn walk(n: usize, start: usize, choices: &[usize]) -> PathWord {
    let q = Quiver::e_quiver(n);
    let mut w = PathWord::idempotent(start);
    for &c in choices {
        let outgoing: Vec<usize> = (0..q.arrows.len()).filter(|&k| q.arrows[k].source == w.target).collect();
        let k = outgoing[c % outgoing.len()];
        w = PathWord::arrow(&q, k).compose(&w).unwrap();
    }
    w
}

fn mul_lc(x: &LinComb<Rational>, y: &LinComb<Rational>) -> LinComb<Rational> {
    let mut out: LinComb<Rational> = HashMap::new();
    for (u, c) in x {
        for (v, d) in y {
            if let Some(w) = u.compose(v) {
                let e = out.remove(&w).unwrap_or_else(|| Rational::int(0)).plus(&c.times(d));
                if !e.is_zero() {
                    out.insert(w, e);
                }
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn strategies_agree(start in 0usize..4, choices in proptest::collection::vec(0usize..8, 0..=8)) {
        let sys = e_system::<Rational>(3, &()).unwrap();
        let w = single::<Rational>(walk(3, start, &choices), &());
        let l = sys.nf_with(&w, Strategy::Leftmost).unwrap();
        let r = sys.nf_with(&w, Strategy::Rightmost).unwrap();
        prop_assert_eq!(&l, &r);
        prop_assert_eq!(sys.nf(&l), l.clone());
        prop_assert!(l.keys().all(|x| sys.is_normal(x)));
    }

    #[test]
    fn reduction_respects_products(s1 in 0usize..4, c1 in proptest::collection::vec(0usize..8, 0..=4),
                                   c2 in proptest::collection::vec(0usize..8, 0..=4)) {
        let sys = e_system::<Rational>(3, &()).unwrap();
        let u = walk(3, s1, &c1);
        let v = walk(3, s1, &c2);
        // make v end where u starts by reusing u's source as v's target
        let v = if v.target == u.source { v } else { PathWord::idempotent(u.source) };
        let (u, v) = (single::<Rational>(u, &()), single::<Rational>(v, &()));
        let full = sys.nf(&mul_lc(&u, &v));
        prop_assert_eq!(sys.nf(&mul_lc(&sys.nf(&u), &sys.nf(&v))), full);
    }
}
