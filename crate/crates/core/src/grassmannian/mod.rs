//! Pluecker geometry of Gr(2,5) in P^9: the quadric ideal, the three-space L
//! spanned by four points of the Grassmannian, its fifth intersection point
//! and the degree-5 genus-1 curves cut out by four-planes through L.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::exact_math::{Field, SparseMatrix};
use crate::polyring::{IdealPresentation, MonomialOrder, OrderKind, PolyError, PolyRing, Polynomial, VarSpec};
use crate::verify::{Run, Verdict};

/// Index pairs in coordinate order z_12, z_13, .., z_45.
pub const PLUCKER_INDICES: [(usize, usize); 10] =
    [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)];

fn idx(i: usize, j: usize) -> usize {
    PLUCKER_INDICES.iter().position(|&p| p == (i, j)).expect("i < j <= 5")
}

/// Homogeneous coordinates [z_12 : .. : z_45].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerPoint<F: Field> {
    pub coords: Vec<F>,
}

impl<F: Field> PluckerPoint<F> {
    pub fn from_ints(ctx: &F::Ctx, v: [i64; 10]) -> Self {
        PluckerPoint { coords: v.iter().map(|&x| F::from_i64(ctx, x)).collect() }
    }

    /// 2x2 minors of a 2x5 matrix.
    pub fn wedge(rows: &[Vec<F>; 2]) -> Self {
        let coords = PLUCKER_INDICES
            .iter()
            .map(|&(i, j)| rows[0][i - 1].times(&rows[1][j - 1]).minus(&rows[0][j - 1].times(&rows[1][i - 1])))
            .collect();
        PluckerPoint { coords }
    }

    pub fn z(&self, i: usize, j: usize) -> &F {
        &self.coords[idx(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Equal as points of P^9.
    pub fn same_point(&self, o: &Self) -> bool {
        (0..10).all(|a| (a + 1..10).all(|b| self.coords[a].times(&o.coords[b]) == self.coords[b].times(&o.coords[a])))
    }

    pub fn on_grassmannian(&self) -> bool {
        let ring = plucker_ring::<F>(&self.coords[0].ctx());
        plucker_ideal(&ring).vanishes_at(&self.coords)
    }
}

pub fn plucker_ring<F: Field>(ctx: &F::Ctx) -> Arc<PolyRing<F>> {
    let vars: Vec<VarSpec> = PLUCKER_INDICES.iter().map(|(i, j)| VarSpec::new(format!("z_{i}{j}"), 1)).collect();
    PolyRing::new(ctx.clone(), vars, MonomialOrder::natural(OrderKind::WDegRevLex, 10)).expect("valid ring")
}

fn zv<F: Field>(ring: &Arc<PolyRing<F>>, i: usize, j: usize) -> Polynomial<F> {
    Polynomial::var(ring, idx(i, j))
}

/// The five quadrics cutting out Gr(2,5).
pub fn plucker_ideal<F: Field>(ring: &Arc<PolyRing<F>>) -> IdealPresentation<F> {
    let z = |i, j| zv(ring, i, j);
    let mut id = IdealPresentation::new(ring, "Pluecker quadrics");
    id.push("q1", z(1, 2) * z(3, 4) + z(1, 4) * z(2, 3) - z(1, 3) * z(2, 4));
    id.push("q2", z(1, 3) * z(4, 5) + z(1, 5) * z(3, 4) - z(1, 4) * z(3, 5));
    id.push("q3", z(1, 2) * z(4, 5) + z(1, 5) * z(2, 4) - z(1, 4) * z(2, 5));
    id.push("q4", z(1, 2) * z(3, 5) + z(1, 5) * z(2, 3) - z(1, 3) * z(2, 5));
    id.push("q5", z(2, 3) * z(4, 5) + z(2, 5) * z(3, 4) - z(2, 4) * z(3, 5));
    id
}

/// The four spanning points of L and its six defining linear forms.
#[derive(Clone, Debug)]
pub struct LData<F: Field> {
    pub points: Vec<PluckerPoint<F>>,
    pub forms: Vec<(String, Polynomial<F>)>,
}

pub fn l_data<F: Field>(ring: &Arc<PolyRing<F>>) -> LData<F> {
    let ctx = &ring.ctx;
    let points = vec![
        PluckerPoint::from_ints(ctx, [1, 0, -1, 0, 0, 1, 0, 0, 0, 0]),
        PluckerPoint::from_ints(ctx, [0, 1, 0, -1, 0, 0, 0, 0, 1, 0]),
        PluckerPoint::from_ints(ctx, [0, 0, 0, 0, 1, 0, 0, 0, 0, 0]),
        PluckerPoint::from_ints(ctx, [0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    ];
    let z = |i, j| zv(ring, i, j);
    let forms = vec![
        ("l1".to_string(), z(1, 2) - z(2, 4)),
        ("l2".to_string(), z(1, 3) - z(3, 5)),
        ("l3".to_string(), z(1, 4) + z(2, 4)),
        ("l4".to_string(), z(1, 5) + z(3, 5)),
        ("l5".to_string(), z(2, 5)),
        ("l6".to_string(), z(3, 4)),
    ];
    LData { points, forms }
}

/// The fifth point of L on the Grassmannian.
pub fn p5<F: Field>(ctx: &F::Ctx) -> PluckerPoint<F> {
    PluckerPoint::from_ints(ctx, [1, -1, -1, 1, 1, 1, 0, 0, -1, -1])
}

fn coefficient_rows<F: Field>(forms: &[Polynomial<F>]) -> Result<SparseMatrix<F>, PolyError> {
    let ring = &forms.first().ok_or(PolyError::Ring("no forms".into()))?.ring;
    let mut id = IdealPresentation::new(ring, "forms");
    for (k, f) in forms.iter().enumerate() {
        if f.terms.iter().any(|(m, _)| m.total_degree() != 1) {
            return Err(PolyError::Ring(format!("form {k} is not linear")));
        }
        id.gens.push((format!("f{k}"), f.clone()));
    }
    id.linear_part()
}

/// Rank of a set of linear forms.
pub fn form_rank<F: Field>(forms: &[Polynomial<F>]) -> Result<usize, PolyError> {
    Ok(coefficient_rows(forms)?.rank())
}

/// Quadrics plus the given forms.
pub fn section_ideal<F: Field>(ring: &Arc<PolyRing<F>>, forms: &[(String, Polynomial<F>)]) -> IdealPresentation<F> {
    let mut id = plucker_ideal(ring);
    for (n, f) in forms {
        id.push(n.clone(), f.clone());
    }
    id
}

/// `points` are pairwise distinct in P^9.
fn pairwise_distinct<F: Field>(points: &[PluckerPoint<F>]) -> Option<(usize, usize)> {
    (0..points.len()).flat_map(|a| (a + 1..points.len()).map(move |b| (a, b))).find(|&(a, b)| points[a].same_point(&points[b]))
}

/// All five points lie on Gr(2,5) and L, are distinct, and the ideal of
/// Gr(2,5) and L has Hilbert function 1, 4, 5, 5, .. under two different
/// orders (five points spanning L).
pub fn check_l_intersection_with<F: Field>(ring: &Arc<PolyRing<F>>, fifth: &PluckerPoint<F>, label: &str) -> Verdict {
    let run = Run::new("grassmannian-L", json!({"field": F::kind(&ring.ctx).to_string(), "p5": label}));
    let data = l_data(ring);
    let quadrics = plucker_ideal(ring);
    let mut pts = data.points.clone();
    pts.push(fifth.clone());
    for (k, p) in pts.iter().enumerate() {
        if let Some((g, _)) = quadrics.gens.iter().chain(data.forms.iter()).find(|(_, g)| !g.eval(&p.coords).is_zero()) {
            return run.fail(json!({"point": format!("p{}", k + 1), "violated": g}));
        }
    }
    if let Some((a, b)) = pairwise_distinct(&pts) {
        return run.fail(json!({"coincident": [format!("p{}", a + 1), format!("p{}", b + 1)]}));
    }
    let span: Vec<Vec<F>> = data.points.iter().map(|p| p.coords.clone()).collect();
    if SparseMatrix::from_dense(&ring.ctx, &span).rank() != 4 {
        return run.fail(json!({"reason": "p1..p4 do not span a three-space"}));
    }
    let id = section_ideal(ring, &data.forms);
    let expected: Vec<u64> = vec![1, 4, 5, 5, 5];
    let other = ring
        .with_order(MonomialOrder::new(OrderKind::WDegLex, (0..10).rev().collect()))
        .expect("same variables");
    for (name, ideal) in [("degrevlex", id.clone()), ("deglex-reversed", id.with_ring(&other))] {
        match ideal.standard_monomial_counts(4) {
            Ok(c) if c == expected => {}
            Ok(c) => return run.fail(json!({"order": name, "counts": c, "expected": expected})),
            Err(e) => return run.fail(json!({"order": name, "error": e.to_string()})),
        }
    }
    run.pass(Some(json!({"points": 5, "counts": expected})))
}

pub fn check_l_intersection<F: Field>(ctx: &F::Ctx) -> Verdict {
    let ring = plucker_ring::<F>(ctx);
    check_l_intersection_with(&ring, &p5(ctx), "reference")
}

/// The four-plane P through L cut out by `forms` meets Gr(2,5) in a curve
/// with Hilbert function h(m) = 5m for 1 <= m <= `m_max`.
pub fn check_section_curve<F: Field>(ring: &Arc<PolyRing<F>>, forms: &[(String, Polynomial<F>)], m_max: u32, label: &str) -> Verdict {
    let run = Run::new("grassmannian-section", json!({"field": F::kind(&ring.ctx).to_string(), "section": label, "m_max": m_max}));
    let polys: Vec<Polynomial<F>> = forms.iter().map(|f| f.1.clone()).collect();
    let lforms: Vec<Polynomial<F>> = l_data(ring).forms.into_iter().map(|f| f.1).collect();
    let (r, joint) = match (form_rank(&polys), form_rank(&[polys.clone(), lforms].concat())) {
        (Ok(r), Ok(j)) => (r, j),
        (Err(e), _) | (_, Err(e)) => return run.fail(json!({"error": e.to_string()})),
    };
    if r != 5 || joint != 6 {
        return run.fail(json!({"form_rank": r, "rank_with_L_forms": joint, "reason": "need five independent forms vanishing on L"}));
    }
    let id = section_ideal(ring, forms);
    match id.standard_monomial_counts(m_max) {
        Ok(c) => {
            if let Some(m) = (1..=m_max as usize).find(|&m| c[m] != 5 * m as u64) {
                return run.fail(json!({"m": m, "h": c[m], "expected": 5 * m, "counts": c}));
            }
            run.pass(Some(json!({"counts": c})))
        }
        Err(e) => run.fail(json!({"error": e.to_string()})),
    }
}

/// The L-forms with one of them dropped.
pub fn drop_form_section<F: Field>(ring: &Arc<PolyRing<F>>, drop: usize) -> Vec<(String, Polynomial<F>)> {
    l_data(ring).forms.into_iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, f)| f).collect()
}

/// Five random combinations of the six L-forms, resampled until independent.
pub fn random_section<F: Field, R: Rng + ?Sized>(ring: &Arc<PolyRing<F>>, rng: &mut R) -> Vec<(String, Polynomial<F>)> {
    let lforms = l_data(ring).forms;
    loop {
        let forms: Vec<(String, Polynomial<F>)> = (0..5)
            .map(|k| {
                let f = lforms.iter().fold(Polynomial::zero(ring), |acc, (_, l)| acc + l.scale(&F::random(&ring.ctx, rng, 5)));
                (format!("s{}", k + 1), f)
            })
            .collect();
        let polys: Vec<Polynomial<F>> = forms.iter().map(|f| f.1.clone()).collect();
        if !polys.iter().any(|p| p.is_zero()) && form_rank(&polys).ok() == Some(5) {
            return forms;
        }
    }
}

/// `count` random sections, seeded, each with h(m) = 5m up to `m_max`.
pub fn check_random_sections<F: Field>(ctx: &F::Ctx, count: usize, seed: u64, m_max: u32) -> Verdict {
    let run = Run::new("grassmannian-random-sections", json!({"field": F::kind(ctx).to_string(), "count": count, "seed": seed, "m_max": m_max}));
    let ring = plucker_ring::<F>(ctx);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let forms = random_section(&ring, &mut rng);
        let v = check_section_curve(&ring, &forms, m_max, &format!("random[{k}]"));
        if !v.passed() {
            return run.fail(json!({"section": k, "verdict": v.witness}));
        }
    }
    run.pass(None)
}
