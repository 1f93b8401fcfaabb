use rand::Rng;

use crate::exact_math::Field;
use crate::polyring::Polynomial;

use super::names::{c2, cbi, ci, CBAR};
use super::un::{special_moduli, u_n_reduced, Coords, ModuliSpec, RedCoords};
use super::{full_from_reduced_map, ModuliError};

/// Coordinates in the order of the ring variables.
pub type Point<F> = Vec<F>;

fn set<F: Field>(spec: &ModuliSpec<F>, pt: &mut [F], name: &str, v: i64) {
    let i = spec.ring.var_index(name).unwrap_or_else(|| panic!("no variable {name}"));
    pt[i] = F::from_i64(&spec.ring.ctx, v);
}

fn zero_point<F: Field>(spec: &ModuliSpec<F>) -> Point<F> {
    vec![F::zero(&spec.ring.ctx); spec.ring.nvars()]
}

/// The point P_{in} of U_n (reduced coordinates, n >= 6), free scale 1.
pub fn special_point_pin<F: Field>(spec: &ModuliSpec<F>, i: usize) -> Result<Point<F>, ModuliError> {
    let n = spec.n;
    if spec.coords != Coords::Reduced || n < 6 {
        return Err(ModuliError::BadN(n, "special_point_pin (reduced coordinates, n >= 6)"));
    }
    if i == 0 || i >= n {
        return Err(ModuliError::BadArg(format!("P_{{{i},{n}}} needs 1 <= i < n")));
    }
    let mut pt = zero_point(spec);
    match i {
        1 => {
            set(spec, &mut pt, &ci(n), 1);
            for k in 4..n {
                set(spec, &mut pt, &c2(k, n), 1);
            }
        }
        2 => {
            set(spec, &mut pt, &ci(n), 1);
            set(spec, &mut pt, &cbi(n), -1);
        }
        3 => set(spec, &mut pt, &cbi(n), 1),
        _ => set(spec, &mut pt, &c2(i, n), 1),
    }
    Ok(pt)
}

/// The parameter point of the wheel of n lines: a = -1, c_{ij} = -1 for
/// 3 <= i < j, everything else zero. Full coordinates for n = 3 (a, b, c, d),
/// reduced otherwise.
pub fn wheel_point<F: Field>(spec: &ModuliSpec<F>) -> Result<Point<F>, ModuliError> {
    let mut pt = zero_point(spec);
    match spec.coords {
        Coords::Reduced => {
            set(spec, &mut pt, "a", -1);
            for i in 4..=spec.n {
                for j in i + 1..=spec.n {
                    set(spec, &mut pt, &c2(i, j), -1);
                }
            }
        }
        Coords::Special if spec.n == 3 => set(spec, &mut pt, "a", -1),
        Coords::Full => {
            set(spec, &mut pt, "a", -1);
            for i in 3..=spec.n {
                for j in i.max(4)..=spec.n {
                    if i < j {
                        set(spec, &mut pt, &c2(i, j), -1);
                    }
                }
            }
        }
        _ => return Err(ModuliError::BadN(spec.n, "wheel_point")),
    }
    Ok(pt)
}

/// Convert a reduced-coordinate point to full coordinates (n >= 4).
pub fn full_point_from_reduced<F: Field>(n: usize, pt: &[F], ctx: &F::Ctx) -> Result<(ModuliSpec<F>, Point<F>), ModuliError> {
    let (full, _, map) = full_from_reduced_map::<F>(n, ctx)?;
    let out = map.images.iter().map(|p| p.eval(pt)).collect();
    Ok((full, out))
}

fn prime_of<F: Field>(ctx: &F::Ctx) -> Result<u64, ModuliError> {
    match F::kind(ctx).characteristic() {
        0 => Err(ModuliError::BadArg("fiber enumeration needs a prime field".into())),
        p if p > 100_000 => Err(ModuliError::BadArg(format!("prime {p} too large to enumerate"))),
        p => Ok(p),
    }
}

/// All F_p-points (x_2, .., x_n) of the fiber over `pt` (reduced, n >= 4).
/// Components along which some x_i is unconstrained are skipped.
pub fn reduced_fiber_points<F: Field>(spec: &ModuliSpec<F>, pt: &[F]) -> Result<Vec<Vec<F>>, ModuliError> {
    if spec.coords != Coords::Reduced {
        return Err(ModuliError::BadArg("reduced coordinates required".into()));
    }
    let p = prime_of::<F>(&spec.ring.ctx)?;
    let ctx = &spec.ring.ctx;
    let n = spec.n;
    let r = RedCoords { ring: &spec.ring };
    let ev = |q: Polynomial<F>| q.eval(pt);
    let (c, cb) = (ev(r.c()), ev(r.cb()));
    let civ: Vec<F> = (4..=n).map(|i| ev(r.ci(i))).collect();
    let cbv: Vec<F> = (4..=n).map(|i| ev(r.cbi(i))).collect();
    let sv: Vec<F> = (4..=n).map(|i| ev(r.s(i))).collect();
    let mut cij = vec![vec![F::zero(ctx); n + 1]; n + 1];
    for i in 4..=n {
        for j in 4..=n {
            if i != j {
                cij[i][j] = ev(r.cij(i, j));
            }
        }
    }
    let mut out = Vec::new();
    for a2 in 0..p {
        let x2 = F::from_i64(ctx, a2 as i64);
        for a3 in 0..p {
            let x3 = F::from_i64(ctx, a3 as i64);
            let x23 = x2.times(&x3);
            let mut xs = vec![x2.clone(), x3.clone()];
            let mut ok = true;
            for k in 0..n - 3 {
                // x_2 x_i rel: x_i (x_2 - c_i) = x_2 x_3 + cb_i x_2 - c
                let lhs = x2.minus(&civ[k]);
                let rhs = x23.plus(&cbv[k].times(&x2)).minus(&c);
                // x_3 x_i rel: x_i (x_3 - s_i) = x_2 x_3 - s_i cb_i + cb - c
                let lhs3 = x3.minus(&sv[k]);
                let rhs3 = x23.minus(&sv[k].times(&cbv[k])).plus(&cb).minus(&c);
                let xi = if let Some(v) = rhs.divided(&lhs) {
                    v
                } else if let Some(v) = rhs3.divided(&lhs3) {
                    v
                } else {
                    ok = false;
                    break;
                };
                if !lhs.times(&xi).minus(&rhs).is_zero() || !lhs3.times(&xi).minus(&rhs3).is_zero() {
                    ok = false;
                    break;
                }
                xs.push(xi);
            }
            if !ok {
                continue;
            }
            let xv = |i: usize| &xs[i - 2];
            let pairs_ok = (4..=n).all(|i| {
                (i + 1..=n).all(|j| {
                    xv(i).times(xv(j)).minus(&x23).minus(&cij[i][j].times(xv(j))).minus(&cij[j][i].times(xv(i))).plus(&c).is_zero()
                })
            });
            if pairs_ok {
                out.push(xs);
            }
        }
    }
    Ok(out)
}

/// A random point of U_n over a prime field: free coordinates for n <= 5,
/// recursive fiber sampling through U_{m+1} = C_m above that.
/// Returns the presentation used (special for n = 3, reduced otherwise).
pub fn random_point<F: Field, R: Rng + ?Sized>(n: usize, ctx: &F::Ctx, rng: &mut R) -> Result<(ModuliSpec<F>, Point<F>), ModuliError> {
    let p = prime_of::<F>(ctx)? as i64;
    let rand = |rng: &mut R| F::from_i64(ctx, rng.gen_range(0..p));
    if n == 3 {
        let spec = special_moduli::<F>(3, ctx)?;
        let pt = (0..4).map(|_| rand(rng)).collect();
        return Ok((spec, pt));
    }
    if n < 3 {
        return Err(ModuliError::BadN(n, "random_point"));
    }
    let mut spec = u_n_reduced::<F>(4.max(n.min(5)), ctx)?;
    let mut pt: Point<F> = (0..spec.ring.nvars()).map(|_| rand(rng)).collect();
    if spec.n == 5 {
        // solve c and cb from the (4,5) relations
        let v = |s: &str| pt[spec.ring.var_index(s).unwrap()].clone();
        let (a, c4, cb4, c5, cb5, c45) = (v("a"), v("c_4"), v("cb_4"), v("c_5"), v("cb_5"), v("c_4_5"));
        let c = a.plus(&cb4).plus(&c5).plus(&cb5).times(&c5).minus(&c5.minus(&c4).times(&c45));
        let cb = a.plus(&c4).plus(&cb4).plus(&c5).times(&cb4).minus(&cb4.minus(&cb5).times(&c45));
        pt[spec.ring.var_index("c").unwrap()] = c;
        pt[spec.ring.var_index(CBAR).unwrap()] = cb;
    }
    while spec.n < n {
        let fiber = reduced_fiber_points(&spec, &pt)?;
        if fiber.is_empty() {
            return Err(ModuliError::BadArg("empty fiber".into()));
        }
        let xs = &fiber[rng.gen_range(0..fiber.len())];
        let m = spec.n + 1;
        let next = u_n_reduced::<F>(m, ctx)?;
        let mut np = vec![F::zero(ctx); next.ring.nvars()];
        for (k, v) in spec.ring.vars.iter().enumerate() {
            np[next.ring.var_index(&v.name).unwrap()] = pt[k].clone();
        }
        let a = pt[spec.ring.var_index("a").unwrap()].clone();
        np[next.ring.var_index(&ci(m)).unwrap()] = xs[0].clone();
        np[next.ring.var_index(&cbi(m)).unwrap()] = xs[1].minus(&a).minus(&xs[0]);
        for i in 4..m {
            np[next.ring.var_index(&c2(i, m)).unwrap()] = xs[i - 2].clone();
        }
        if let Some((name, _)) = next.ideal.gens.iter().find(|(_, g)| !g.eval(&np).is_zero()) {
            return Err(ModuliError::OffScheme(name.clone()));
        }
        spec = next;
        pt = np;
    }
    Ok((spec, pt))
}
