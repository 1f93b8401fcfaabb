use std::fmt;
use std::str::FromStr;

use crate::exact_math::Field;
use crate::polyring::{Polynomial, RingMap};

use super::curve::{curve_over_un, CurveSpec};
use super::names::{c2, cbi, ci, d2, x, CBAR};
use super::un::{special_moduli, u_n_full, u_n_reduced, ModuliSpec, RedCoords};
use super::ModuliError;

/// A transposition (i j) of curve labels, i < j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transposition(pub usize, pub usize);

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self, ModuliError> {
        if i == j || i == 0 || j == 0 {
            return Err(ModuliError::BadArg(format!("({i}{j}) is not a transposition")));
        }
        Ok(Transposition(i.min(j), i.max(j)))
    }
    fn apply(&self, k: usize) -> usize {
        if k == self.0 {
            self.1
        } else if k == self.1 {
            self.0
        } else {
            k
        }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 < 10 {
            write!(f, "({}{})", self.0, self.1)
        } else {
            write!(f, "({},{})", self.0, self.1)
        }
    }
}

impl FromStr for Transposition {
    type Err = ModuliError;
    fn from_str(s: &str) -> Result<Self, ModuliError> {
        let bad = || ModuliError::BadArg(format!("bad transposition `{s}`"));
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = if inner.contains(',') { inner.split(',').collect() } else if inner.len() == 2 { vec![&inner[..1], &inner[1..]] } else { return Err(bad()) };
        if parts.len() != 2 {
            return Err(bad());
        }
        let i = parts[0].trim().parse().map_err(|_| bad())?;
        let j = parts[1].trim().parse().map_err(|_| bad())?;
        Transposition::new(i, j)
    }
}

/// The isomorphism U_{n+1} -> C_n as a map from the curve ring over U_n to
/// O(U_{n+1}). Returns the source curve, the target and the map.
pub fn substitution_map<F: Field>(n: usize, ctx: &F::Ctx) -> Result<(CurveSpec<F>, ModuliSpec<F>, RingMap<F>), ModuliError> {
    if n < 3 {
        return Err(ModuliError::BadN(n, "substitution_map"));
    }
    let base = if n == 3 { special_moduli::<F>(3, ctx)? } else { u_n_reduced::<F>(n, ctx)? };
    let curve = curve_over_un(&base, None)?;
    let target = u_n_reduced::<F>(n + 1, ctx)?;
    let r = RedCoords { ring: &target.ring };
    let m = n + 1;
    let mut pairs = vec![(x(2), r.ci(m)), (x(3), r.s(m))];
    for i in 4..=n {
        pairs.push((x(i), r.cij(i, m)));
    }
    if n == 3 {
        pairs.push(("b".into(), r.b()));
        pairs.push(("d".into(), r.d()));
    }
    let map = RingMap::by_name(&curve.ring, &target.ring, pairs).expect("names exist");
    Ok((curve, target, map))
}

/// Full coordinates expressed through reduced ones (n >= 4).
pub fn full_from_reduced_map<F: Field>(n: usize, ctx: &F::Ctx) -> Result<(ModuliSpec<F>, ModuliSpec<F>, RingMap<F>), ModuliError> {
    let full = u_n_full::<F>(n, ctx)?;
    let red = u_n_reduced::<F>(n, ctx)?;
    let r = RedCoords { ring: &red.ring };
    let mut pairs = vec![("b".to_string(), r.b()), ("d".to_string(), r.d())];
    for i in 4..=n {
        pairs.push((c2(2, i), r.ci(i)));
        pairs.push((c2(i, 2), r.cbi(i)));
        pairs.push((c2(3, i), r.s(i)));
        pairs.push((d2(2, i), -r.c()));
        pairs.push((d2(3, i), r.b() - r.s(i) * r.cbi(i)));
        for j in 4..=n {
            if i != j {
                if i < j {
                    pairs.push((d2(i, j), -r.c()));
                } else {
                    pairs.push((c2(i, j), r.cij(i, j)));
                }
            }
        }
    }
    let map = RingMap::by_name(&full.ring, &red.ring, pairs).expect("names exist");
    Ok((full, red, map))
}

/// Subscript permutation for a transposition of labels >= 4.
fn relabel<F: Field>(spec: &ModuliSpec<F>, t: Transposition) -> RingMap<F> {
    let r = RedCoords { ring: &spec.ring };
    let n = spec.n;
    let mut pairs = Vec::new();
    for i in 4..=n {
        pairs.push((ci(i), r.ci(t.apply(i))));
        pairs.push((cbi(i), r.cbi(t.apply(i))));
        for j in i + 1..=n {
            pairs.push((c2(i, j), r.cij(t.apply(i), t.apply(j))));
        }
    }
    RingMap::by_name(&spec.ring, &spec.ring, pairs).expect("names exist")
}

fn base_involution<F: Field>(spec: &ModuliSpec<F>, t: Transposition) -> RingMap<F> {
    let r = RedCoords { ring: &spec.ring };
    let n = spec.n;
    let mut pairs: Vec<(String, Polynomial<F>)> = Vec::new();
    match (t.0, t.1) {
        (1, 3) => {
            pairs.push(("c".into(), r.cb()));
            pairs.push((CBAR.into(), r.c()));
            for i in 4..=n {
                pairs.push((ci(i), r.cbi(i)));
                pairs.push((cbi(i), r.ci(i)));
                for j in i + 1..=n {
                    pairs.push((c2(i, j), r.cij(j, i)));
                }
            }
        }
        (2, 3) => {
            pairs.push(("a".into(), -r.a()));
            pairs.push(("c".into(), r.c() - r.cb()));
            pairs.push((CBAR.into(), -r.cb()));
            for i in 4..=n {
                pairs.push((ci(i), r.s(i)));
                pairs.push((cbi(i), -r.cbi(i)));
                for j in i + 1..=n {
                    pairs.push((c2(i, j), r.cij(i, j) - r.cbi(i)));
                }
            }
        }
        (2, 4) => {
            let s4 = r.s(4);
            pairs.push(("a".into(), -r.a() - r.ci(4).scale(&F::from_i64(&spec.ring.ctx, 2)) - r.cbi(4).scale(&F::from_i64(&spec.ring.ctx, 2))));
            pairs.push(("c".into(), r.cb() - r.cbi(4) * &s4));
            pairs.push((CBAR.into(), r.c() - r.ci(4) * &s4));
            pairs.push((ci(4), r.cbi(4)));
            pairs.push((cbi(4), r.ci(4)));
            for i in 5..=n {
                pairs.push((ci(i), r.cij(4, i)));
                pairs.push((cbi(i), r.cij(i, 4)));
                pairs.push((c2(4, i), r.ci(i)));
            }
        }
        _ => unreachable!(),
    }
    RingMap::by_name(&spec.ring, &spec.ring, pairs).expect("names exist")
}

fn conj<F: Field>(outer: &RingMap<F>, inner: &RingMap<F>) -> RingMap<F> {
    outer.compose(inner).and_then(|m| m.compose(outer)).expect("same ring")
}

/// The action of a transposition on O(U_n) in reduced coordinates (n >= 5).
/// (13), (23), (24) and subscript permutations are primitive; every other
/// transposition is obtained by conjugation.
pub fn sn_involution<F: Field>(spec: &ModuliSpec<F>, t: Transposition) -> Result<RingMap<F>, ModuliError> {
    let n = spec.n;
    if spec.coords != super::Coords::Reduced || n < 5 {
        return Err(ModuliError::BadN(n, "sn_involution (reduced coordinates, n >= 5)"));
    }
    if t.1 > n {
        return Err(ModuliError::BadArg(format!("{t} is not in S_{n}")));
    }
    let tr = |i, j| Transposition(i, j);
    Ok(match (t.0, t.1) {
        (1, 3) | (2, 3) | (2, 4) => base_involution(spec, t),
        (i, _) if i >= 4 => relabel(spec, t),
        (2, k) => conj(&relabel(spec, tr(4, k)), &base_involution(spec, tr(2, 4))),
        (3, k) => conj(&base_involution(spec, tr(2, 3)), &sn_involution(spec, tr(2, k))?),
        (1, 2) => conj(&base_involution(spec, tr(1, 3)), &base_involution(spec, tr(2, 3))),
        (1, k) => conj(&base_involution(spec, tr(1, 3)), &sn_involution(spec, tr(3, k))?),
        _ => unreachable!(),
    })
}
