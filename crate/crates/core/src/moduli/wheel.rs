use std::sync::Arc;

use crate::exact_math::Field;
use crate::polyring::{IdealPresentation, MonomialOrder, OrderKind, PolyRing, Polynomial, VarSpec};

use super::ModuliError;

/// The wheel of n projective lines: the functions x_2..x_n restricted to
/// each component C_k, as polynomials in the component parameter u_k.
#[derive(Clone, Debug)]
pub struct WheelData<F: Field> {
    pub n: usize,
    /// Variables u_1..u_n.
    pub ring: Arc<PolyRing<F>>,
    /// `images[k - 1][j - 2]` is x_j on C_k.
    pub images: Vec<Vec<Polynomial<F>>>,
}

pub fn wheel_data<F: Field>(n: usize, ctx: &F::Ctx) -> Result<WheelData<F>, ModuliError> {
    if n < 3 {
        return Err(ModuliError::BadN(n, "wheel_data"));
    }
    let vars = (1..=n).map(|k| VarSpec::new(format!("u_{k}"), 1)).collect();
    let ring = PolyRing::new(ctx.clone(), vars, MonomialOrder::natural(OrderKind::WDegRevLex, n)).expect("valid ring");
    let u = |k: usize| Polynomial::var(&ring, k - 1);
    let one = Polynomial::one(&ring);
    let zero = Polynomial::zero(&ring);
    let images = (1..=n)
        .map(|k| {
            (2..=n)
                .map(|j| match (j, k) {
                    (2, 1) => u(1),
                    (2, 2) => &one - u(2),
                    (2, _) => zero.clone(),
                    (_, 1) => u(1) - &one,
                    (_, k) if k < j => zero.clone(),
                    (_, k) if k == j => -u(j),
                    _ => -&one,
                })
                .collect()
        })
        .collect();
    Ok(WheelData { n, ring, images })
}

/// The wheel relations in a ring whose first n-1 variables are x_2..x_n.
pub fn wheel_relations<F: Field>(ring: &Arc<PolyRing<F>>, n: usize) -> IdealPresentation<F> {
    let x = |i: usize| Polynomial::var(ring, i - 2);
    let mut id = IdealPresentation::new(ring, "wheel of lines");
    for j in 3..=n {
        id.push(format!("w2[{j}]"), x(2) * x(j) - x(2) * x(3));
    }
    for i in 3..=n {
        for j in i + 1..=n {
            id.push(format!("w[{i},{j}]"), x(i) * x(j) - x(2) * x(3) + x(j));
        }
    }
    id.push("wcubic", x(2) * x(3).pow(2) - x(2).pow(2) * x(3) + x(2) * x(3));
    id
}

/// Branches of C_{1,n} at its singular point, each parametrized by t:
/// branch 1 is the line x_2 = .. = x_n = t, branch k >= 2 is the x_k axis.
/// Returns the univariate ring and, for each x_j (j = 2..n), its tuple of
/// branch restrictions.
pub fn c1n_branch_images<F: Field>(n: usize, ctx: &F::Ctx) -> (Arc<PolyRing<F>>, Vec<Vec<Polynomial<F>>>) {
    let ring = PolyRing::new(ctx.clone(), vec![VarSpec::new("t", 1)], MonomialOrder::natural(OrderKind::WDegLex, 1)).expect("valid ring");
    let t = Polynomial::var(&ring, 0);
    let zero = Polynomial::zero(&ring);
    let out = (2..=n)
        .map(|j| (1..=n).map(|b| if b == 1 || b == j { t.clone() } else { zero.clone() }).collect())
        .collect();
    (ring, out)
}

/// Whether a tuple of branch functions descends to C_{1,n}: equal values at
/// the origin, and the derivative on branch 1 equals the sum of the others.
pub fn c1n_membership<F: Field>(fs: &[Polynomial<F>]) -> bool {
    if fs.len() < 2 {
        return false;
    }
    let ring = &fs[0].ring;
    let origin = vec![F::zero(&ring.ctx)];
    let v0 = fs[0].eval(&origin);
    if fs.iter().any(|f| f.eval(&origin) != v0) {
        return false;
    }
    let d: Vec<F> = fs.iter().map(|f| f.derivative(0).eval(&origin)).collect();
    let rest = d[1..].iter().fold(F::zero(&ring.ctx), |acc, x| acc.plus(x));
    d[0] == rest
}
