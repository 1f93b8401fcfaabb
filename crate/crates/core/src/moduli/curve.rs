use std::collections::HashMap;
use std::sync::Arc;

use crate::exact_math::Field;
use crate::polyring::{IdealPresentation, MonomialOrder, OrderKind, PolyRing, Polynomial, RingMap, VarSpec};

use super::names::{big_x, c2, cbi, ci, d2, x, CBAR};
use super::un::{special_moduli, Coords, ModuliSpec};
use super::ModuliError;

/// A marked point at infinity, given by projective coordinates (T, X_2..X_n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub label: usize,
    pub coords: Vec<i64>,
    /// Index into `coords` of the chart variable set to 1.
    pub chart: usize,
}

/// The universal curve over U_n, or its fiber over a point.
#[derive(Clone, Debug)]
pub struct CurveSpec<F: Field> {
    pub n: usize,
    pub base: ModuliSpec<F>,
    /// Fiber parameters in the order of `base.ring` variables.
    pub point: Option<Vec<F>>,
    /// x_2..x_n first, then (when symbolic) the base variables.
    pub ring: Arc<PolyRing<F>>,
    pub nx: usize,
    pub affine: IdealPresentation<F>,
    /// T, X_2..X_n first, then (when symbolic) the base variables.
    pub hring: Option<Arc<PolyRing<F>>>,
    pub homog: Option<IdealPresentation<F>>,
    pub marked: Vec<MarkedPoint>,
}

/// Polynomials standing in for the reduced-coordinate parameters.
struct RedParams<F: Field> {
    a: Polynomial<F>,
    c: Polynomial<F>,
    cb: Polynomial<F>,
    ci: HashMap<usize, Polynomial<F>>,
    cbi: HashMap<usize, Polynomial<F>>,
    cij: HashMap<(usize, usize), Polynomial<F>>,
}

impl<F: Field> RedParams<F> {
    fn from_vars(ring: &Arc<PolyRing<F>>, n: usize) -> Self {
        let v = |s: &str| Polynomial::named(ring, s);
        let mut cij = HashMap::new();
        for i in 4..=n {
            for j in i + 1..=n {
                cij.insert((i, j), v(&c2(i, j)));
            }
        }
        RedParams {
            a: v("a"),
            c: v("c"),
            cb: v(CBAR),
            ci: (4..=n).map(|i| (i, v(&ci(i)))).collect(),
            cbi: (4..=n).map(|i| (i, v(&cbi(i)))).collect(),
            cij,
        }
    }
    fn s(&self, i: usize) -> Polynomial<F> {
        &self.a + &self.ci[&i] + &self.cbi[&i]
    }
    fn cij(&self, i: usize, j: usize) -> Polynomial<F> {
        if i < j {
            self.cij[&(i, j)].clone()
        } else {
            self.s(i) + self.s(j) - &self.a - &self.cij[&(j, i)]
        }
    }
}

/// The ring x_2..x_n (weight 1) followed by `params`.
pub fn curve_ring<F: Field>(ctx: &F::Ctx, n: usize, params: &[VarSpec]) -> Arc<PolyRing<F>> {
    let mut vars: Vec<VarSpec> = (2..=n).map(|i| VarSpec::new(x(i), 1)).collect();
    vars.extend(params.iter().cloned());
    // deg-lex with x_2 < x_3 < ... < x_n on the x block
    let nx = n - 1;
    let mut prec: Vec<usize> = (0..nx).rev().collect();
    prec.extend(nx..vars.len());
    PolyRing::new(ctx.clone(), vars, MonomialOrder::new(OrderKind::WDegLex, prec)).expect("valid ring")
}

fn cubic<F: Field>(xs: &[Polynomial<F>], a: &Polynomial<F>, b: &Polynomial<F>, c: &Polynomial<F>, d: &Polynomial<F>) -> Polynomial<F> {
    let (x2, x3) = (&xs[0], &xs[1]);
    x2 * &x3.pow(2) - x2.pow(2) * x3 - a * x2 * x3 - b * x2 - c * x3 - d
}

/// The C_{1,n} relations (all parameters zero) in `ring`, whose first n-1
/// variables are x_2..x_n.
pub fn c1n_relations<F: Field>(ring: &Arc<PolyRing<F>>, n: usize) -> IdealPresentation<F> {
    let xs: Vec<Polynomial<F>> = (0..n - 1).map(|i| Polynomial::var(ring, i)).collect();
    let mut id = IdealPresentation::new(ring, "elliptic n-fold singularity");
    let xv = |i: usize| &xs[i - 2];
    match n {
        3 => id.push("cubic", xv(2) * &xv(3).pow(2) - xv(2).pow(2) * xv(3)),
        _ => {
            for i in 2..=n {
                for j in i + 1..=n {
                    if (i, j) != (2, 3) {
                        id.push(format!("rel[{i},{j}]"), xv(i) * xv(j) - xv(2) * xv(3));
                    }
                }
            }
        }
    }
    id
}

fn affine_relations<F: Field>(base: &ModuliSpec<F>, ring: &Arc<PolyRing<F>>) -> Result<IdealPresentation<F>, ModuliError> {
    let n = base.n;
    let xs: Vec<Polynomial<F>> = (0..n - 1).map(|i| Polynomial::var(ring, i)).collect();
    let xv = |i: usize| xs[i - 2].clone();
    let v = |s: &str| Polynomial::named(ring, s);
    let mut id = IdealPresentation::new(ring, "universal curve relations");
    match (base.coords, n) {
        (Coords::Full | Coords::Special, 3) => {
            id.push("cubic", cubic(&xs, &v("a"), &v("b"), &v("c"), &v("d")));
        }
        (Coords::Full, _) => {
            let c = |i: usize, j: usize| {
                if j == 3 || (i, j) == (3, 2) {
                    Polynomial::zero(ring)
                } else {
                    v(&c2(i, j))
                }
            };
            let d = |i: usize, j: usize| v(&d2(i.min(j), i.max(j)));
            for i in 2..=n {
                for j in i + 1..=n {
                    if (i, j) == (2, 3) {
                        continue;
                    }
                    id.push(
                        format!("rel[{i},{j}]"),
                        xv(i) * xv(j) - xv(2) * xv(3) - c(i, j) * xv(j) - c(j, i) * xv(i) - d(i, j),
                    );
                }
            }
            id.push("cubic", cubic(&xs, &v("a"), &v("b"), &v("c"), &v("d")));
        }
        (Coords::Reduced, _) | (Coords::Special, 4) | (Coords::Special, 5) => {
            let p = if base.coords == Coords::Special && n == 5 {
                special5_params(ring)
            } else {
                RedParams::from_vars(ring, n)
            };
            for i in 4..=n {
                id.push(
                    format!("rel[2,{i}]"),
                    xv(2) * xv(i) - xv(2) * xv(3) - &p.ci[&i] * xv(i) - &p.cbi[&i] * xv(2) + &p.c,
                );
                id.push(
                    format!("rel[3,{i}]"),
                    xv(3) * xv(i) - xv(2) * xv(3) - p.s(i) * (xv(i) - &p.cbi[&i]) - &p.cb + &p.c,
                );
            }
            for i in 4..=n {
                for j in i + 1..=n {
                    id.push(
                        format!("rel[{i},{j}]"),
                        xv(i) * xv(j) - xv(2) * xv(3) - p.cij(i, j) * xv(j) - p.cij(j, i) * xv(i) + &p.c,
                    );
                }
            }
            let b = &p.cb - &p.c;
            let d = p.s(4) * &p.ci[&4] * &p.cbi[&4] - &p.cb * &p.ci[&4] - &p.c * &p.cbi[&4] - &p.a * &p.c;
            id.push("cubic", cubic(&xs, &p.a, &b, &p.c, &d));
        }
        _ => return Err(ModuliError::BadN(n, "curve_over_un")),
    }
    Ok(id)
}

/// In the free presentation of U_5, c and cb are the solved expressions.
fn special5_params<F: Field>(ring: &Arc<PolyRing<F>>) -> RedParams<F> {
    let v = |s: &str| Polynomial::named(ring, s);
    let (a, c4, cb4, c5, cb5, c45) = (v("a"), v("c_4"), v("cb_4"), v("c_5"), v("cb_5"), v("c_4_5"));
    let c = (&a + &cb4 + &c5 + &cb5) * &c5 - (&c5 - &c4) * &c45;
    let cb = (&a + &c4 + &cb4 + &c5) * &cb4 - (&cb4 - &cb5) * &c45;
    RedParams {
        a,
        c,
        cb,
        ci: [(4, c4), (5, c5)].into_iter().collect(),
        cbi: [(4, cb4), (5, cb5)].into_iter().collect(),
        cij: [((4, 5), c45)].into_iter().collect(),
    }
}

/// Homogenize with respect to the x-degree (first `nx` variables of the
/// source) using a new leading variable T.
fn homogenize<F: Field>(f: &Polynomial<F>, nx: usize, hring: &Arc<PolyRing<F>>) -> Polynomial<F> {
    let top = f.terms.iter().map(|(m, _)| m.e[..nx].iter().map(|&e| e as u32).sum::<u32>()).max().unwrap_or(0);
    let terms = f
        .terms
        .iter()
        .map(|(m, c)| {
            let xd: u32 = m.e[..nx].iter().map(|&e| e as u32).sum();
            let mut e = Vec::with_capacity(m.e.len() + 1);
            e.push((top - xd) as u8);
            e.extend_from_slice(&m.e);
            (hring.monomial(&e), c.clone())
        })
        .collect();
    Polynomial::from_terms(hring, terms)
}

fn marked_points(n: usize) -> Vec<MarkedPoint> {
    let mut out = vec![MarkedPoint { label: 1, coords: std::iter::once(0).chain((2..=n).map(|_| 1)).collect(), chart: 1 }];
    for i in 2..=n {
        let coords = (0..n).map(|k| i64::from(k == i - 1)).collect();
        out.push(MarkedPoint { label: i, coords, chart: i - 1 });
    }
    out
}

fn build<F: Field>(base: ModuliSpec<F>, point: Option<&[F]>) -> Result<CurveSpec<F>, ModuliError> {
    let n = base.n;
    let ctx = base.ring.ctx.clone();
    if let Some(pt) = point {
        if pt.len() != base.ring.nvars() {
            return Err(ModuliError::BadArg(format!("point has {} coordinates, ring has {}", pt.len(), base.ring.nvars())));
        }
        if let Some((name, _)) = base.ideal.gens.iter().find(|(_, g)| !g.eval(pt).is_zero()) {
            return Err(ModuliError::OffScheme(name.clone()));
        }
    }
    let sym = curve_ring::<F>(&ctx, n, &base.ring.vars);
    let sym_aff = affine_relations(&base, &sym)?;
    let nx = n - 1;
    let mut hvars = vec![VarSpec::new("T", 1)];
    hvars.extend((2..=n).map(|i| VarSpec::new(big_x(i), 1)));
    let (ring, affine, hvars) = match point {
        None => {
            let mut hv = hvars;
            hv.extend(base.ring.vars.iter().cloned());
            (sym.clone(), sym_aff, hv)
        }
        Some(pt) => {
            let ring = curve_ring::<F>(&ctx, n, &[]);
            let mut images: Vec<Polynomial<F>> = (0..nx).map(|i| Polynomial::var(&ring, i)).collect();
            images.extend(pt.iter().map(|c| Polynomial::constant(&ring, c.clone())));
            let map = RingMap::new(&sym, &ring, images).expect("arity");
            let mut aff = IdealPresentation::new(&ring, "universal curve relations (fiber)");
            for (name, g) in &sym_aff.gens {
                aff.push(name.clone(), map.apply(g).expect("ring"));
            }
            (ring, aff, hvars)
        }
    };
    let hring = PolyRing::new(ctx, hvars.clone(), MonomialOrder::natural(OrderKind::WDegRevLex, hvars.len())).expect("valid ring");
    let mut homog = IdealPresentation::new(&hring, "homogenized curve relations");
    for (name, g) in &affine.gens {
        homog.push(name.clone(), homogenize(g, nx, &hring));
    }
    Ok(CurveSpec {
        n,
        base,
        point: point.map(|p| p.to_vec()),
        ring,
        nx,
        affine,
        hring: Some(hring),
        homog: Some(homog),
        marked: marked_points(n),
    })
}

/// The universal curve over `base` (n >= 3), or its fiber at `point`.
pub fn curve_over_un<F: Field>(base: &ModuliSpec<F>, point: Option<&[F]>) -> Result<CurveSpec<F>, ModuliError> {
    if base.n < 3 {
        return Err(ModuliError::BadN(base.n, "curve_over_un"));
    }
    build(base.clone(), point)
}

/// The cusp (n = 1) and tacnode (n = 2) unfoldings. No homogenization.
pub fn special_curve<F: Field>(n: usize, ctx: &F::Ctx, point: Option<&[F]>) -> Result<CurveSpec<F>, ModuliError> {
    let base = special_moduli::<F>(n, ctx)?;
    if n > 2 {
        return Err(ModuliError::BadN(n, "special_curve"));
    }
    let (wx, wy) = if n == 1 { (2, 3) } else { (1, 2) };
    let mut vars = vec![VarSpec::new("x", wx), VarSpec::new("y", wy)];
    if point.is_none() {
        vars.extend(base.ring.vars.iter().cloned());
    }
    let nv = vars.len();
    let ring = PolyRing::new(ctx.clone(), vars, MonomialOrder::natural(OrderKind::WDegRevLex, nv)).expect("valid ring");
    let p: Vec<Polynomial<F>> = match point {
        None => base.ring.vars.iter().map(|v| Polynomial::named(&ring, &v.name)).collect(),
        Some(pt) if pt.len() == base.ring.nvars() => pt.iter().map(|c| Polynomial::constant(&ring, c.clone())).collect(),
        Some(pt) => return Err(ModuliError::BadArg(format!("point has {} coordinates", pt.len()))),
    };
    let (xv, yv) = (Polynomial::named(&ring, "x"), Polynomial::named(&ring, "y"));
    let mut affine = IdealPresentation::new(&ring, if n == 1 { "cusp unfolding" } else { "tacnode unfolding" });
    if n == 1 {
        affine.push("weierstrass", yv.pow(2) - xv.pow(3) - &p[0] * &xv - &p[1]);
    } else {
        affine.push("tacnode", yv.pow(2) - &yv * xv.pow(2) - &p[0] * (&yv - xv.pow(2)) - &p[1] * &xv - &p[2]);
    }
    Ok(CurveSpec { n, base, point: point.map(|p| p.to_vec()), ring, nx: 2, affine, hring: None, homog: None, marked: Vec::new() })
}

/// Restrict homogenized relations (in a ring whose first n variables are
/// T, X_2..X_n and with no parameters) to the affine chart X_k = 1, where k
/// indexes that block. The chart ring keeps the other n-1 variables.
pub fn dehomogenize_at<F: Field>(homog: &IdealPresentation<F>, nproj: usize, chart: usize) -> (Arc<PolyRing<F>>, IdealPresentation<F>) {
    let src = &homog.ring;
    assert_eq!(src.nvars(), nproj, "parameters must be specialized first");
    let vars: Vec<VarSpec> = (0..nproj).filter(|&k| k != chart).map(|k| src.vars[k].clone()).collect();
    let nv = vars.len();
    let tgt = PolyRing::new(src.ctx.clone(), vars, MonomialOrder::natural(OrderKind::WDegRevLex, nv)).expect("valid ring");
    let mut images = Vec::with_capacity(nproj);
    let mut next = 0;
    for k in 0..nproj {
        if k == chart {
            images.push(Polynomial::one(&tgt));
        } else {
            images.push(Polynomial::var(&tgt, next));
            next += 1;
        }
    }
    let map = RingMap::new(src, &tgt, images).expect("arity");
    let mut out = IdealPresentation::new(&tgt, "chart");
    for (name, g) in &homog.gens {
        out.push(name.clone(), map.apply(g).expect("ring"));
    }
    (tgt, out)
}
