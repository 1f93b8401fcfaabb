use std::sync::Arc;

use crate::exact_math::Field;
use crate::polyring::{IdealPresentation, MonomialOrder, OrderKind, PolyRing, Polynomial, VarSpec};

use super::names::{c2, cbi, ci, d2, CBAR};
use super::ModuliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coords {
    Full,
    Reduced,
    Special,
}

/// A presentation of the coordinate ring of U_n.
#[derive(Clone, Debug)]
pub struct ModuliSpec<F: Field> {
    pub n: usize,
    pub coords: Coords,
    pub ring: Arc<PolyRing<F>>,
    pub ideal: IdealPresentation<F>,
}

fn ring_of<F: Field>(ctx: &F::Ctx, vars: Vec<VarSpec>) -> Arc<PolyRing<F>> {
    let n = vars.len();
    PolyRing::new(ctx.clone(), vars, MonomialOrder::natural(OrderKind::WDegRevLex, n)).expect("valid ring")
}

/// Full-coordinate variables; declaration order is the precedence, chosen so
/// that the linearly solvable coordinates lead.
pub(crate) fn full_vars(n: usize) -> Vec<VarSpec> {
    let idx: Vec<usize> = (4..=n).collect();
    let mut v = vec![VarSpec::new("d", 3)];
    v.extend(idx.iter().map(|&i| VarSpec::new(d2(3, i), 2)));
    v.extend(idx.iter().map(|&i| VarSpec::new(d2(2, i), 2)));
    for &i in &idx {
        for &j in &idx {
            if i < j {
                v.push(VarSpec::new(d2(i, j), 2));
            }
        }
    }
    v.push(VarSpec::new("b", 2));
    v.extend(idx.iter().map(|&i| VarSpec::new(c2(3, i), 1)));
    for &i in &idx {
        for &j in &idx {
            if i > j {
                v.push(VarSpec::new(c2(i, j), 1));
            }
        }
    }
    v.push(VarSpec::new("c", 2));
    v.push(VarSpec::new("a", 1));
    v.extend(idx.iter().map(|&i| VarSpec::new(c2(2, i), 1)));
    v.extend(idx.iter().map(|&i| VarSpec::new(c2(i, 2), 1)));
    for &i in &idx {
        for &j in &idx {
            if i < j {
                v.push(VarSpec::new(c2(i, j), 1));
            }
        }
    }
    v
}

/// Full-coordinate accessors with the normalization c_32 = c_i3 = 0.
pub(crate) struct FullCoords<'a, F: Field> {
    pub ring: &'a Arc<PolyRing<F>>,
}

impl<F: Field> FullCoords<'_, F> {
    pub fn v(&self, name: &str) -> Polynomial<F> {
        Polynomial::named(self.ring, name)
    }
    /// c_{ij}, zero for the normalized entries.
    pub fn c(&self, i: usize, j: usize) -> Polynomial<F> {
        assert!(i != j && i >= 2 && j >= 2);
        if j == 3 || (i == 3 && j == 2) {
            return Polynomial::zero(self.ring);
        }
        self.v(&c2(i, j))
    }
    /// d_{ij}, symmetric.
    pub fn d(&self, i: usize, j: usize) -> Polynomial<F> {
        let (i, j) = (i.min(j), i.max(j));
        assert!(i != j && (i, j) != (2, 3));
        self.v(&d2(i, j))
    }
}

/// Reduced-coordinate variables: c, cb first so they lead.
pub(crate) fn reduced_vars(n: usize) -> Vec<VarSpec> {
    let mut v = vec![VarSpec::new("c", 2), VarSpec::new(CBAR, 2), VarSpec::new("a", 1)];
    for i in 4..=n {
        v.push(VarSpec::new(ci(i), 1));
        v.push(VarSpec::new(cbi(i), 1));
    }
    for i in 4..=n {
        for j in i + 1..=n {
            v.push(VarSpec::new(c2(i, j), 1));
        }
    }
    v
}

/// c, cb first, then one block per marked point m = n, n-1, .., 4 holding
/// c_{n-1,m}, .., c_{4,m}, cb_m, c_m, and a last. Each block then behaves
/// like the fiber coordinates of the curve over U_{m-1}, which keeps the
/// Groebner basis small.
fn reduced_precedence(vars: &[VarSpec], n: usize) -> Vec<usize> {
    let idx = |s: &str| vars.iter().position(|v| v.name == s).expect("variable");
    let mut prec = vec![idx("c"), idx(CBAR)];
    for m in (4..=n).rev() {
        prec.extend((4..m).rev().map(|i| idx(&c2(i, m))));
        prec.push(idx(&cbi(m)));
        prec.push(idx(&ci(m)));
    }
    prec.push(idx("a"));
    prec
}

/// Reduced-coordinate accessors; c_{ji} for i<j is the alias polynomial.
pub(crate) struct RedCoords<'a, F: Field> {
    pub ring: &'a Arc<PolyRing<F>>,
}

impl<F: Field> RedCoords<'_, F> {
    pub fn v(&self, name: &str) -> Polynomial<F> {
        Polynomial::named(self.ring, name)
    }
    pub fn a(&self) -> Polynomial<F> {
        self.v("a")
    }
    pub fn c(&self) -> Polynomial<F> {
        self.v("c")
    }
    pub fn cb(&self) -> Polynomial<F> {
        self.v(CBAR)
    }
    pub fn ci(&self, i: usize) -> Polynomial<F> {
        self.v(&ci(i))
    }
    pub fn cbi(&self, i: usize) -> Polynomial<F> {
        self.v(&cbi(i))
    }
    pub fn cij(&self, i: usize, j: usize) -> Polynomial<F> {
        assert!(i != j);
        if i < j {
            self.v(&c2(i, j))
        } else {
            // c_{ij} with i > j: alias a + c_j + cb_j + c_i + cb_i - c_{ji}
            self.a() + self.ci(j) + self.cbi(j) + self.ci(i) + self.cbi(i) - self.v(&c2(j, i))
        }
    }
    /// a + c_i + cb_i
    pub fn s(&self, i: usize) -> Polynomial<F> {
        self.a() + self.ci(i) + self.cbi(i)
    }
    /// b = cb - c.
    pub fn b(&self) -> Polynomial<F> {
        self.cb() - self.c()
    }
    /// d = (a + c_4 + cb_4) c_4 cb_4 - cb c_4 - c cb_4 - a c.
    pub fn d(&self) -> Polynomial<F> {
        self.s(4) * self.ci(4) * self.cbi(4) - self.cb() * self.ci(4) - self.c() * self.cbi(4) - self.a() * self.c()
    }
}

/// U_n in full coordinates (n >= 3).
pub fn u_n_full<F: Field>(n: usize, ctx: &F::Ctx) -> Result<ModuliSpec<F>, ModuliError> {
    if n < 3 {
        return Err(ModuliError::BadN(n, "u_n_full"));
    }
    let ring = ring_of::<F>(ctx, full_vars(n));
    let fc = FullCoords { ring: &ring };
    let (a, b, c, d) = (fc.v("a"), fc.v("b"), fc.v("c"), fc.v("d"));
    let mut ideal = IdealPresentation::new(&ring, "normal-form ambiguity relations (full coordinates)");
    let idx: Vec<usize> = (4..=n).collect();
    for &i in &idx {
        ideal.push(format!("lin_a[{i}]"), &a - fc.c(3, i) + fc.c(2, i) + fc.c(i, 2));
        ideal.push(format!("d2[{i}]"), fc.d(2, i) + &c);
        ideal.push(format!("d3[{i}]"), fc.d(3, i) - &b + fc.c(3, i) * fc.c(i, 2));
        ideal.push(format!("d[{i}]"), &d + fc.c(3, i) * &c + fc.c(2, i) * fc.d(3, i));
    }
    for &i in &idx {
        for &j in &idx {
            if i < j {
                ideal.push(format!("dij[{i},{j}]"), fc.d(i, j) + &c);
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            if i == j {
                continue;
            }
            ideal.push(
                format!("sum[{i},{j}]"),
                fc.c(i, j) + fc.c(j, i) - fc.c(3, i) - fc.c(2, j) - fc.c(j, 2),
            );
            ideal.push(
                format!("quad2[{i},{j}]"),
                fc.c(j, i) * fc.c(2, i) - fc.c(3, i) * fc.c(2, i) - fc.c(j, 2) * fc.c(2, i) - fc.c(j, i) * fc.c(2, j) - fc.d(2, j),
            );
        }
    }
    for &i in &idx {
        for &j in &idx {
            if i < j {
                ideal.push(
                    format!("bc[{i},{j}]"),
                    fc.c(j, i) * fc.c(i, 2) + fc.c(i, j) * fc.c(j, 2) - fc.c(i, 2) * fc.c(j, 2) - &b - &c,
                );
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            if i >= j {
                continue;
            }
            for &k in &idx {
                if k == i || k == j {
                    continue;
                }
                ideal.push(
                    format!("triple[{i},{j};{k}]"),
                    fc.c(i, k) * fc.c(j, k) - fc.c(i, j) * fc.c(j, k) - fc.c(j, i) * fc.c(i, k) - fc.c(3, k) * fc.c(2, k) - fc.d(i, j),
                );
            }
        }
    }
    Ok(ModuliSpec { n, coords: Coords::Full, ring, ideal })
}

/// U_n in reduced coordinates (n >= 4).
pub fn u_n_reduced<F: Field>(n: usize, ctx: &F::Ctx) -> Result<ModuliSpec<F>, ModuliError> {
    if n < 4 {
        return Err(ModuliError::BadN(n, "u_n_reduced"));
    }
    let vars = reduced_vars(n);
    let order = MonomialOrder::new(OrderKind::WDegRevLex, reduced_precedence(&vars, n));
    let ring = PolyRing::new(ctx.clone(), vars, order).expect("valid ring");
    let r = RedCoords { ring: &ring };
    let mut ideal = IdealPresentation::new(&ring, "reduced relations (pairs and triples)");
    for i in 4..=n {
        for j in i + 1..=n {
            ideal.push(
                format!("pair_c[{i},{j}]"),
                (r.ci(j) - r.ci(i)) * r.cij(i, j) - (r.a() + r.cbi(i) + r.ci(j) + r.cbi(j)) * r.ci(j) + r.c(),
            );
            ideal.push(
                format!("pair_cb[{i},{j}]"),
                (r.cbi(i) - r.cbi(j)) * r.cij(i, j) - (r.a() + r.ci(i) + r.cbi(i) + r.ci(j)) * r.cbi(i) + r.cb(),
            );
        }
    }
    for i in 4..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                ideal.push(
                    format!("triple[{i},{j},{k}]"),
                    r.cij(i, j) * r.cij(j, k) + r.cij(j, i) * r.cij(i, k) - r.cij(i, k) * r.cij(j, k) + r.s(k) * r.ci(k) - r.c(),
                );
            }
        }
    }
    Ok(ModuliSpec { n, coords: Coords::Reduced, ring, ideal })
}

/// Free presentations for small n.
pub fn special_moduli<F: Field>(n: usize, ctx: &F::Ctx) -> Result<ModuliSpec<F>, ModuliError> {
    let vars: Vec<(&str, u32)> = match n {
        1 => vec![("delta", 4), ("eps", 6)],
        2 => vec![("alpha", 2), ("beta", 3), ("gamma", 4)],
        3 => vec![("a", 1), ("b", 2), ("c", 2), ("d", 3)],
        4 => vec![("a", 1), ("c_4", 1), ("cb_4", 1), ("c", 2), ("cb", 2)],
        5 => vec![("a", 1), ("c_4", 1), ("cb_4", 1), ("c_5", 1), ("cb_5", 1), ("c_4_5", 1)],
        _ => return Err(ModuliError::BadN(n, "special_moduli")),
    };
    let ring = ring_of::<F>(ctx, vars.into_iter().map(|(s, w)| VarSpec::new(s, w)).collect());
    let ideal = IdealPresentation::new(&ring, "free (special coordinates)");
    Ok(ModuliSpec { n, coords: Coords::Special, ring, ideal })
}

/// Any supported presentation.
pub fn u_n<F: Field>(n: usize, coords: Coords, ctx: &F::Ctx) -> Result<ModuliSpec<F>, ModuliError> {
    match coords {
        Coords::Full => u_n_full(n, ctx),
        Coords::Reduced => u_n_reduced(n, ctx),
        Coords::Special => special_moduli(n, ctx),
    }
}
